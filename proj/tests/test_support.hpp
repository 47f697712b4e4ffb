#pragma once

// Random generators and independent oracles shared by the test binaries.

#include <cmath>
#include <complex>
#include <random>

#include "ntype/model.hpp"

namespace ntype::testing {

inline std::mt19937_64 make_rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline Matrix4c random_complex_matrix(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Matrix4c g;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) g(i, j) = Complex(n(rng), n(rng));
  return g;
}

/// Full-rank random state G G^dagger / tr.
inline DensityMatrix random_density_matrix(std::mt19937_64& rng) {
  const Matrix4c g = random_complex_matrix(rng);
  Matrix4c m = g * g.adjoint();
  m /= m.trace().real();
  return DensityMatrix(m);
}

/// Random mixture with a random rank 1..4 (so some eigenvalues are exactly 0).
inline DensityMatrix random_low_rank_density_matrix(std::mt19937_64& rng) {
  const int rank = std::uniform_int_distribution<int>(1, 4)(rng);
  Matrix4c g = random_complex_matrix(rng);
  Eigen::HouseholderQR<Matrix4c> qr(g);
  const Matrix4c q = qr.householderQ();
  Matrix4c m = Matrix4c::Zero();
  double total = 0.0;
  for (int k = 0; k < rank; ++k) {
    const double w = uniform(rng, 0.05, 1.0);
    total += w;
    m += w * q.col(k) * q.col(k).adjoint();
  }
  m /= total;
  m /= m.trace().real();
  return DensityMatrix(m);
}

inline SystemParams random_params(std::mt19937_64& rng, double rabi_max = 10.0, double delta_max = 5.0) {
  SystemParams p;
  p.rabi_31 = uniform(rng, 0.0, rabi_max);
  p.rabi_32 = uniform(rng, 0.0, rabi_max);
  p.rabi_41 = uniform(rng, 0.0, rabi_max);
  p.delta_31 = uniform(rng, -delta_max, delta_max);
  p.delta_32 = uniform(rng, -delta_max, delta_max);
  p.delta_41 = uniform(rng, -delta_max, delta_max);
  p.gamma_31 = uniform(rng, 0.5, 1.5);
  p.gamma_32 = uniform(rng, 0.5, 1.5);
  p.gamma_41 = uniform(rng, 0.5, 1.5);
  p.gamma_42 = uniform(rng, 0.5, 1.5);
  p.phi_31 = uniform(rng, -M_PI, M_PI);
  p.phi_32 = uniform(rng, -M_PI, M_PI);
  return p;
}

/// Independent full-matrix evaluation of the equations of motion as
/// +i[H + diag(energies), rho] plus the four spontaneous-decay dissipators,
/// written with explicit loops over all 16 elements.
inline Matrix4c lindblad_oracle(const SystemParams& p, const Matrix4c& rho) {
  Matrix4c h = Matrix4c::Zero();
  h(0, 2) = h(2, 0) = p.rabi_31;
  h(1, 2) = h(2, 1) = p.rabi_32;
  h(0, 3) = h(3, 0) = p.rabi_41;
  h(1, 1) = p.delta_31 - p.delta_32;
  h(2, 2) = p.delta_31;
  h(3, 3) = p.delta_41;
  const Complex I(0.0, 1.0);
  Matrix4c d = I * (h * rho - rho * h);
  const struct {
    int from, to;
    double rate;
  } channels[] = {{2, 0, p.gamma_31}, {2, 1, p.gamma_32}, {3, 0, p.gamma_41}, {3, 1, p.gamma_42}};
  for (const auto& c : channels) {
    d(c.to, c.to) += c.rate * rho(c.from, c.from);
    for (int j = 0; j < 4; ++j) {
      d(c.from, j) -= 0.5 * c.rate * rho(c.from, j);
      d(j, c.from) -= 0.5 * c.rate * rho(j, c.from);
    }
  }
  return d;
}

inline double max_abs(const Matrix4c& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace ntype::testing
