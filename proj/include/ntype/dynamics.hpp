#pragma once

#include <vector>

#include "ntype/model.hpp"

namespace ntype {

enum class IntegrationMethod { kRk4, kRk45 };

/// Time-stepping settings; times are in units of 1/gamma.
struct IntegratorConfig {
  double step = 1e-3;   ///< fixed step (RK4) or initial step (RK45)
  double t_end = 20.0;
  int sample_every = 1;  ///< record every k-th step; the final state is always recorded
  IntegrationMethod method = IntegrationMethod::kRk4;
  double rel_tol = 1e-8;
  double abs_tol = 1e-10;

  void validate() const;
  bool operator==(const IntegratorConfig&) const = default;
};

struct Trajectory {
  static constexpr double kTraceTolerance = 1e-9;

  std::vector<double> times;
  std::vector<DensityMatrix> states;

  std::size_t size() const noexcept { return times.size(); }
  const DensityMatrix& final_state() const { return states.back(); }
};

/// Integrates the equations of motion from rho0 over [0, cfg.t_end].
/// Every recorded state is re-validated (|trace - 1| < 1e-9, eigenvalues >= -1e-9);
/// a violation throws IntegrationError carrying the offending time.
Trajectory evolve(const SystemParams& params, const DensityMatrix& rho0,
                  const IntegratorConfig& cfg = {});

struct SteadyEvolveOptions {
  double tol = 1e-10;       ///< max-norm of the derivative that counts as stationary
  double t_cap = 1e4;       ///< give up after this much evolution time
  double step = 0.0;        ///< RK4 step; 0 picks one from the fastest rate in params
  int check_every = 10;     ///< steps between convergence checks
};

/// Long-time route: RK4 until the derivative max-norm drops below tol.
/// Throws NonConvergence at the time cap.
DensityMatrix steady_state_evolve(const SystemParams& params, const DensityMatrix& rho0,
                                  const SteadyEvolveOptions& opts = {});

using Superoperator = Eigen::Matrix<Complex, 16, 16>;
using RealSuperoperator = Eigen::Matrix<double, 16, 16>;

/// Liouvillian acting on vec(rho) with row-major index 4*i + j, assembled from
/// the rotating-frame Hamiltonian and the four decay channels 3->1, 3->2,
/// 4->1, 4->2 (independently of rhs()).
Superoperator liouvillian(const SystemParams& params);

/// The same map written on HermitianCoords; a real 16x16 matrix.
RealSuperoperator liouvillian_coords(const SystemParams& params);

/// Null-space route: solves L c = 0 with the trace row appended (least
/// squares). Throws DegenerateSteadyState when the stationary subspace is
/// more than one-dimensional.
DensityMatrix steady_state_linear(const SystemParams& params);

/// Dimension of the stationary subspace (singular values of L below a
/// relative threshold).
int stationary_dimension(const SystemParams& params);

}  // namespace ntype
