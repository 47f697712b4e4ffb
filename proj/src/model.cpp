#include "ntype/model.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "ntype/error.hpp"

namespace ntype {

namespace {

constexpr std::array<std::pair<int, int>, 6> kUpperPairs{
    {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

void require(bool ok, const char* field, const char* rule, double value) {
  if (ok) return;
  std::ostringstream os;
  os << "invalid parameter " << field << " = " << value << ": " << rule;
  throw InvalidParameter(os.str());
}

}  // namespace

SystemParams SystemParams::with_rabi(double rabi_31, double rabi_32, double rabi_41,
                                          double delta) {
  SystemParams p;
  p.rabi_31 = rabi_31;
  p.rabi_32 = rabi_32;
  p.rabi_41 = rabi_41;
  p.delta_31 = p.delta_32 = p.delta_41 = delta;
  return p;
}

SystemParams SystemParams::symmetric(double rabi, double delta) {
  return with_rabi(rabi, rabi, rabi, delta);
}

void SystemParams::validate() const {
  const std::array<std::pair<const char*, double>, 3> rabis{
      {{"rabi_31", rabi_31}, {"rabi_32", rabi_32}, {"rabi_41", rabi_41}}};
  for (auto [name, v] : rabis) require(std::isfinite(v) && v >= 0.0, name, "must be finite and >= 0", v);
  const std::array<std::pair<const char*, double>, 4> gammas{
      {{"gamma_31", gamma_31}, {"gamma_32", gamma_32}, {"gamma_41", gamma_41}, {"gamma_42", gamma_42}}};
  for (auto [name, v] : gammas) require(std::isfinite(v) && v > 0.0, name, "must be finite and > 0", v);
  const std::array<std::pair<const char*, double>, 5> rest{{{"delta_31", delta_31},
                                                            {"delta_32", delta_32},
                                                            {"delta_41", delta_41},
                                                            {"phi_31", phi_31},
                                                            {"phi_32", phi_32}}};
  for (auto [name, v] : rest) require(std::isfinite(v), name, "must be finite", v);
}

Matrix4c hermitian_from_upper(const Matrix4c& m) {
  Matrix4c h;
  for (int i = 0; i < 4; ++i) {
    h(i, i) = Complex(m(i, i).real(), 0.0);
    for (int j = i + 1; j < 4; ++j) {
      h(i, j) = m(i, j);
      h(j, i) = std::conj(m(i, j));
    }
  }
  return h;
}

HermitianCoords to_coords(const Matrix4c& h) {
  HermitianCoords c;
  for (int i = 0; i < 4; ++i) c[i] = h(i, i).real();
  int k = 4;
  for (auto [i, j] : kUpperPairs) {
    c[k++] = h(i, j).real();
    c[k++] = h(i, j).imag();
  }
  return c;
}

Matrix4c from_coords(const HermitianCoords& c) {
  Matrix4c h = Matrix4c::Zero();
  for (int i = 0; i < 4; ++i) h(i, i) = c[i];
  int k = 4;
  for (auto [i, j] : kUpperPairs) {
    h(i, j) = Complex(c[k], c[k + 1]);
    h(j, i) = std::conj(h(i, j));
    k += 2;
  }
  return h;
}

DensityMatrix::DensityMatrix(const Matrix4c& m, double trace_tolerance, double eigen_tolerance)
    : m_(hermitian_from_upper(m)) {
  if (!m_.allFinite()) throw InvalidState("density matrix has non-finite elements");
  const double tr = trace();
  if (std::abs(tr - 1.0) >= trace_tolerance) {
    std::ostringstream os;
    os << "density matrix trace " << tr << " differs from 1 by more than " << trace_tolerance;
    throw InvalidState(os.str());
  }
  const double lmin = eigenvalues()[0];
  if (lmin < -eigen_tolerance) {
    std::ostringstream os;
    os << "density matrix has eigenvalue " << lmin << " below -" << eigen_tolerance;
    throw InvalidState(os.str());
  }
}

DensityMatrix DensityMatrix::bare_state(int level) {
  if (level < 1 || level > 4) throw InvalidState("bare level must be in 1..4");
  Matrix4c m = Matrix4c::Zero();
  m(level - 1, level - 1) = 1.0;
  return DensityMatrix(m);
}

DensityMatrix DensityMatrix::from_coords(const HermitianCoords& c, double trace_tolerance) {
  return DensityMatrix(ntype::from_coords(c), trace_tolerance);
}

std::array<double, 4> DensityMatrix::eigenvalues() const {
  Eigen::SelfAdjointEigenSolver<Matrix4c> es(m_, Eigen::EigenvaluesOnly);
  const auto& w = es.eigenvalues();
  return {w[0], w[1], w[2], w[3]};
}

HermitianCoords DensityMatrix::coords() const { return to_coords(m_); }

Matrix4c rhs(const SystemParams& params, const DensityMatrix& rho) {
  params.validate();
  return rhs_unchecked(params, rho.matrix());
}

Matrix4c rhs_unchecked(const SystemParams& p, const Matrix4c& m) {
  const Complex I(0.0, 1.0);
  // 1-based accessor reading only the stored half.
  auto r = [&m](int i, int j) -> Complex {
    return i <= j ? m(i - 1, j - 1) : std::conj(m(j - 1, i - 1));
  };
  const double o31 = p.rabi_31, o32 = p.rabi_32, o41 = p.rabi_41;
  const double g31 = p.gamma_31, g32 = p.gamma_32, g41 = p.gamma_41, g42 = p.gamma_42;
  const double d31 = p.delta_31, d32 = p.delta_32, d41 = p.delta_41;
  const double g3 = g31 + g32, g4 = g41 + g42;

  Matrix4c d;
  d(0, 0) = g31 * r(3, 3) + g41 * r(4, 4) + I * o31 * r(3, 1) - I * o31 * r(1, 3) +
            I * o41 * r(4, 1) - I * o41 * r(1, 4);
  d(1, 1) = g32 * r(3, 3) + g42 * r(4, 4) + I * o32 * r(3, 2) - I * o32 * r(2, 3);
  d(2, 2) = -g3 * r(3, 3) + I * o31 * r(1, 3) - I * o31 * r(3, 1) + I * o32 * r(2, 3) -
            I * o32 * r(3, 2);
  d(3, 3) = -g4 * r(4, 4) + I * o41 * r(1, 4) - I * o41 * r(4, 1);

  d(0, 1) = -I * (d31 - d32) * r(1, 2) + I * o31 * r(3, 2) + I * o41 * r(4, 2) - I * o32 * r(1, 3);
  d(0, 2) = -(g3 / 2.0 + I * d31) * r(1, 3) - I * o32 * r(1, 2) + I * o31 * (r(3, 3) - r(1, 1)) +
            I * o41 * r(4, 3);
  d(0, 3) = -(g4 / 2.0 + I * d41) * r(1, 4) + I * o31 * r(3, 4) + I * o41 * (r(4, 4) - r(1, 1));
  d(1, 2) = -(g3 / 2.0 + I * d32) * r(2, 3) - I * o31 * r(2, 1) + I * o32 * (r(3, 3) - r(2, 2));
  d(1, 3) = -(g4 / 2.0 + I * (d41 - d31 + d32)) * r(2, 4) + I * o32 * r(3, 4) - I * o41 * r(2, 1);
  d(2, 3) = -((g3 + g4) / 2.0 + I * (d41 - d31)) * r(3, 4) + I * o31 * r(1, 4) +
            I * o32 * r(2, 4) - I * o41 * r(3, 1);
  return hermitian_from_upper(d);
}

Matrix4c hamiltonian_resonant(const SystemParams& params) {
  params.validate();
  Matrix4c h = Matrix4c::Zero();
  h(3, 0) = h(0, 3) = params.rabi_41;
  h(2, 0) = h(0, 2) = params.rabi_31;
  h(2, 1) = h(1, 2) = params.rabi_32;
  return h;
}

Eigen::Vector4d rotating_frame_energies(const SystemParams& p) {
  return {0.0, p.delta_31 - p.delta_32, p.delta_31, p.delta_41};
}

}  // namespace ntype
