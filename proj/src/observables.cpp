#include "ntype/observables.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "ntype/error.hpp"

namespace ntype {

double entropy_of_eigenvalues(const std::array<double, 4>& eigenvalues) {
  double s = 0.0;
  for (double l : eigenvalues) {
    if (l < -DensityMatrix::kEigenTolerance) {
      std::ostringstream os;
      os << "eigenvalue " << l << " below -" << DensityMatrix::kEigenTolerance;
      throw InvalidState(os.str());
    }
    l = std::clamp(l, 0.0, 1.0);
    if (l > 0.0) s -= l * std::log(l);
  }
  return s;
}

double von_neumann_dem(const DensityMatrix& rho) { return entropy_of_eigenvalues(rho.eigenvalues()); }

Matrix4c DressedBasis::unitary() const {
  Matrix4c u;
  for (int k = 0; k < 4; ++k) u.col(k) = states[k];
  return u;
}

double DressedBasis::gram_residual() const {
  const Matrix4c u = unitary();
  return (u.adjoint() * u - Matrix4c::Identity()).cwiseAbs().maxCoeff();
}

double DressedBasis::diagonalization_residual(const Matrix4c& h) const {
  const Matrix4c u = unitary();
  Matrix4c m = u.adjoint() * h * u;
  m.diagonal().setZero();
  return m.cwiseAbs().maxCoeff();
}

namespace {

void fix_phase(Vector4c& v) {
  int ref = 3;
  if (std::abs(v[ref]) < 1e-12) {
    ref = 0;
    while (ref < 3 && std::abs(v[ref]) < 1e-12) ++ref;
  }
  v *= std::abs(v[ref]) / v[ref];
  v[ref] = Complex(v[ref].real(), 0.0);
}

}  // namespace

DressedBasis dressed_basis(double omega3, double omega41) {
  if (!(omega3 > 0.0) || !(omega41 > 0.0) || !std::isfinite(omega3) || !std::isfinite(omega41))
    throw DegenerateDressedBasis("degenerate dressed basis: omega3 and omega41 must both be > 0");

  const double o3 = omega3, o41 = omega41;
  const double o3sq = o3 * o3, o41sq = o41 * o41;
  DressedBasis basis;
  basis.a = std::sqrt(4.0 * o3sq * o3sq + o41sq * o41sq);
  basis.b = 2.0 * o3sq + o41sq;
  basis.c = 2.0 * o3sq - o41sq;
  basis.symmetric = true;
  const double A = basis.a, B = basis.b, C = basis.c;

  // Differences of nearly equal quantities rewritten through
  // B^2 - A^2 = A^2 - C^2 = 4 O3^2 O41^2 and O41^4 - A^2 = -4 O3^4.
  const double b_minus_a = 4.0 * o3sq * o41sq / (A + B);
  const double a_minus_c = 4.0 * o3sq * o41sq / (A + C);
  const double o41sq_minus_a = -4.0 * o3sq * o3sq / (o41sq + A);
  const double s_minus = std::sqrt(b_minus_a);
  const double s_plus = std::sqrt(A + B);
  const double r2 = std::sqrt(2.0);

  // Inner pair (energies -+sqrt((B-A)/2)) and outer pair (-+sqrt((B+A)/2)).
  // The |3> amplitude follows from the eigenvalue equation, lambda x3 = O3 (x1 + x2).
  struct Raw {
    double energy;
    Eigen::Vector4d v;
  };
  const double inner_x3 = -a_minus_c / (2.0 * o3 * o41);
  const double outer_x3 = (A + C) / (2.0 * o3 * o41);
  auto inner = [&](double sign) {
    return Raw{sign * s_minus / r2,
               {sign * s_minus / (r2 * o41), -sign * s_minus * (o41sq + A) / (2.0 * r2 * o3sq * o41),
                inner_x3, 1.0}};
  };
  auto outer = [&](double sign) {
    return Raw{sign * s_plus / r2,
               {sign * s_plus / (r2 * o41), -sign * s_plus * o41sq_minus_a / (2.0 * r2 * o3sq * o41),
                outer_x3, 1.0}};
  };
  const std::array<Raw, 4> raw{outer(-1.0), inner(-1.0), inner(1.0), outer(1.0)};
  for (int k = 0; k < 4; ++k) {
    basis.energies[k] = raw[k].energy;
    basis.states[k] = (raw[k].v / raw[k].v.norm()).cast<Complex>();
  }
  return basis;
}

DressedBasis numeric_dressed_basis(const SystemParams& params) {
  const Matrix4c h = hamiltonian_resonant(params);
  Eigen::SelfAdjointEigenSolver<Matrix4c> es(h);
  DressedBasis basis;
  for (int k = 0; k < 4; ++k) {
    basis.energies[k] = es.eigenvalues()[k];
    basis.states[k] = es.eigenvectors().col(k);
    fix_phase(basis.states[k]);
  }
  return basis;
}

DressedBasis dressed_basis_for(const SystemParams& params) {
  if (params.rabi_31 == params.rabi_32 && params.rabi_31 > 0.0 && params.rabi_41 > 0.0)
    return dressed_basis(params.rabi_31, params.rabi_41);
  return numeric_dressed_basis(params);
}

PopulationRecord populations(const DensityMatrix& rho) {
  PopulationRecord rec;
  for (int i = 0; i < 4; ++i) rec.values[i] = rho.population(i);
  rec.basis = PopulationBasis::kBare;
  return rec;
}

PopulationRecord populations(const DensityMatrix& rho, const DressedBasis& basis) {
  PopulationRecord rec;
  rec.basis = PopulationBasis::kDressed;
  for (int k = 0; k < 4; ++k) {
    const Complex p = basis.states[k].dot(rho.matrix() * basis.states[k]);
    if (std::abs(p.imag()) > 1e-12) throw InvalidState("dressed population has an imaginary part");
    rec.values[k] = p.real();
  }
  if (std::abs(rec.sum() - 1.0) > 1e-9) throw InvalidState("dressed populations do not sum to 1");
  return rec;
}

std::vector<std::pair<double, double>> dem_series(const Trajectory& traj) {
  std::vector<std::pair<double, double>> out;
  out.reserve(traj.size());
  for (std::size_t k = 0; k < traj.size(); ++k) out.emplace_back(traj.times[k], von_neumann_dem(traj.states[k]));
  return out;
}

}  // namespace ntype
