#include "ntype/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <boost/numeric/odeint.hpp>

#include "ntype/error.hpp"

namespace ntype {

namespace odeint = boost::numeric::odeint;

namespace {

using State = std::array<double, 16>;

State to_state(const Matrix4c& m) {
  const HermitianCoords c = to_coords(m);
  State s;
  std::copy(c.data(), c.data() + 16, s.begin());
  return s;
}

Matrix4c from_state(const State& s) {
  return from_coords(Eigen::Map<const HermitianCoords>(s.data()));
}

struct EquationsOfMotion {
  const SystemParams& params;
  void operator()(const State& x, State& dxdt, double /*t*/) const {
    dxdt = to_state(rhs_unchecked(params, from_state(x)));
  }
};

DensityMatrix checked_sample(const State& x, double t) {
  try {
    return DensityMatrix(from_state(x), Trajectory::kTraceTolerance, DensityMatrix::kEigenTolerance);
  } catch (const InvalidState& e) {
    throw IntegrationError(std::string("state invariant violated: ") + e.what(), t);
  }
}

double rhs_max_norm(const SystemParams& params, const Matrix4c& m) {
  return rhs_unchecked(params, m).cwiseAbs().maxCoeff();
}

// Bound on the spectral radius of the generator; keeps RK4 inside its
// stability region.
double auto_step(const SystemParams& p) {
  const double rate = 2.0 * (p.rabi_31 + p.rabi_32 + p.rabi_41) + std::abs(p.delta_31) +
                      std::abs(p.delta_32) + std::abs(p.delta_41) + p.gamma_31 + p.gamma_32 +
                      p.gamma_41 + p.gamma_42;
  return std::min(0.02, 1.0 / rate);
}

Trajectory evolve_rk4(const SystemParams& params, const DensityMatrix& rho0,
                      const IntegratorConfig& cfg) {
  odeint::runge_kutta4<State> stepper;
  EquationsOfMotion eom{params};
  State x = to_state(rho0.matrix());

  const auto n_steps = static_cast<long>(std::ceil(cfg.t_end / cfg.step - 1e-9));
  Trajectory traj;
  traj.times.reserve(static_cast<std::size_t>(n_steps / cfg.sample_every + 2));
  traj.states.reserve(traj.times.capacity());
  traj.times.push_back(0.0);
  traj.states.push_back(rho0);

  for (long k = 1; k <= n_steps; ++k) {
    const double t0 = static_cast<double>(k - 1) * cfg.step;
    const bool last = k == n_steps;
    const double t1 = last ? cfg.t_end : static_cast<double>(k) * cfg.step;
    stepper.do_step(eom, x, t0, t1 - t0);
    if (last || k % cfg.sample_every == 0) {
      traj.times.push_back(t1);
      traj.states.push_back(checked_sample(x, t1));
    }
  }
  return traj;
}

Trajectory evolve_rk45(const SystemParams& params, const DensityMatrix& rho0,
                       const IntegratorConfig& cfg) {
  auto stepper = odeint::make_controlled<odeint::runge_kutta_dopri5<State>>(cfg.abs_tol, cfg.rel_tol);
  EquationsOfMotion eom{params};
  State x = to_state(rho0.matrix());

  Trajectory traj;
  traj.times.push_back(0.0);
  traj.states.push_back(rho0);

  constexpr double kMinStep = 1e-12;
  const double t_eps = 1e-12 * cfg.t_end;
  double t = 0.0;
  double dt = cfg.step;
  long accepted = 0;
  while (cfg.t_end - t > t_eps) {
    dt = std::min(dt, cfg.t_end - t);
    if (dt < kMinStep) throw IntegrationError("adaptive step-size underflow", t);
    if (stepper.try_step(eom, x, t, dt) != odeint::success) continue;
    ++accepted;
    const bool last = cfg.t_end - t <= t_eps;
    if (last || accepted % cfg.sample_every == 0) {
      const double tr = last ? cfg.t_end : t;
      traj.times.push_back(tr);
      traj.states.push_back(checked_sample(x, tr));
    }
  }
  return traj;
}

}  // namespace

void IntegratorConfig::validate() const {
  if (!(std::isfinite(step) && step > 0.0)) throw InvalidParameter("step must be > 0");
  if (!(std::isfinite(t_end) && t_end > 0.0)) throw InvalidParameter("t_end must be > 0");
  if (!(step < t_end)) throw InvalidParameter("step must be smaller than t_end");
  if (sample_every < 1) throw InvalidParameter("sample_every must be a positive integer");
  if (method == IntegrationMethod::kRk45 && !(rel_tol > 0.0 && abs_tol > 0.0))
    throw InvalidParameter("rel_tol and abs_tol must be > 0 for adaptive integration");
}

Trajectory evolve(const SystemParams& params, const DensityMatrix& rho0,
                  const IntegratorConfig& cfg) {
  params.validate();
  cfg.validate();
  return cfg.method == IntegrationMethod::kRk4 ? evolve_rk4(params, rho0, cfg)
                                               : evolve_rk45(params, rho0, cfg);
}

DensityMatrix steady_state_evolve(const SystemParams& params, const DensityMatrix& rho0,
                                  const SteadyEvolveOptions& opts) {
  params.validate();
  if (!(opts.tol > 0.0)) throw InvalidParameter("steady-state tolerance must be > 0");
  if (!(opts.t_cap > 0.0)) throw InvalidParameter("steady-state time cap must be > 0");
  if (opts.check_every < 1) throw InvalidParameter("check_every must be >= 1");

  const double h = opts.step > 0.0 ? opts.step : auto_step(params);
  odeint::runge_kutta4<State> stepper;
  EquationsOfMotion eom{params};
  State x = to_state(rho0.matrix());

  double residual = rhs_max_norm(params, rho0.matrix());
  if (residual < opts.tol) return rho0;

  const auto max_steps = static_cast<long>(std::ceil(opts.t_cap / h));
  for (long k = 1; k <= max_steps; ++k) {
    stepper.do_step(eom, x, static_cast<double>(k - 1) * h, h);
    if (k % opts.check_every != 0 && k != max_steps) continue;
    const double t = static_cast<double>(k) * h;
    const Matrix4c m = from_state(x);
    residual = rhs_max_norm(params, m);
    if (!std::isfinite(residual)) throw IntegrationError("state diverged", t);
    if (residual < opts.tol) return checked_sample(x, t);
  }
  std::ostringstream os;
  os << "no stationary state within t = " << opts.t_cap << " (derivative max-norm " << residual
     << ", tolerance " << opts.tol << ")";
  throw NonConvergence(os.str(), opts.t_cap, residual);
}

Superoperator liouvillian(const SystemParams& params) {
  params.validate();
  using Mat16 = Superoperator;
  const Matrix4c id = Matrix4c::Identity();
  // Row-major vectorization: vec(A X B) = kron(A, B^T) vec(X).
  auto kron = [](const Matrix4c& a, const Matrix4c& b) {
    Mat16 k;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) k.block<4, 4>(4 * i, 4 * j) = a(i, j) * b;
    return k;
  };

  // The equations of motion read d(rho)/dt = +i[H, rho] + dissipator.
  Matrix4c h = hamiltonian_resonant(params);
  h.diagonal() += rotating_frame_energies(params).cast<Complex>();
  const Complex I(0.0, 1.0);
  Mat16 l = I * (kron(h, id) - kron(id, h.transpose()));

  struct Channel {
    int from, to;
    double rate;
  };
  const std::array<Channel, 4> channels{{{2, 0, params.gamma_31},
                                         {2, 1, params.gamma_32},
                                         {3, 0, params.gamma_41},
                                         {3, 1, params.gamma_42}}};
  for (const auto& ch : channels) {
    Matrix4c jump = Matrix4c::Zero();
    jump(ch.to, ch.from) = 1.0;
    const Matrix4c jj = jump.adjoint() * jump;
    l += ch.rate * (kron(jump, jump.conjugate()) - 0.5 * kron(jj, id) - 0.5 * kron(id, jj.transpose()));
  }
  return l;
}

RealSuperoperator liouvillian_coords(const SystemParams& params) {
  const Superoperator l = liouvillian(params);
  RealSuperoperator out;
  for (int k = 0; k < 16; ++k) {
    HermitianCoords e = HermitianCoords::Zero();
    e[k] = 1.0;
    const Matrix4c x = from_coords(e);
    const Eigen::Matrix<Complex, 16, 1> vx =
        Eigen::Map<const Eigen::Matrix<Complex, 16, 1>>(Eigen::Matrix<Complex, 4, 4, Eigen::RowMajor>(x).data());
    const Eigen::Matrix<Complex, 16, 1> ly = l * vx;
    Matrix4c y;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) y(i, j) = ly[4 * i + j];
    out.col(k) = to_coords(y);
  }
  return out;
}

namespace {

constexpr double kNullThreshold = 1e-9;

Eigen::JacobiSVD<RealSuperoperator> svd_of(const RealSuperoperator& l) {
  return Eigen::JacobiSVD<RealSuperoperator>(l, Eigen::ComputeFullV);
}

int null_dimension(const Eigen::JacobiSVD<RealSuperoperator>& svd) {
  const auto& s = svd.singularValues();
  const double cut = kNullThreshold * std::max(1.0, s[0]);
  return static_cast<int>((s.array() < cut).count());
}

}  // namespace

int stationary_dimension(const SystemParams& params) {
  return null_dimension(svd_of(liouvillian_coords(params)));
}

DensityMatrix steady_state_linear(const SystemParams& params) {
  const RealSuperoperator l = liouvillian_coords(params);
  const auto svd = svd_of(l);
  const int dim = null_dimension(svd);
  if (dim > 1) {
    std::vector<Matrix4c> basis;
    for (int k = 16 - dim; k < 16; ++k) {
      Matrix4c m = from_coords(svd.matrixV().col(k));
      const double tr = m.trace().real();
      if (std::abs(tr) > 1e-12) m /= tr;
      basis.push_back(m);
    }
    std::ostringstream os;
    os << "degenerate stationary subspace of dimension " << dim;
    throw DegenerateSteadyState(os.str(), std::move(basis));
  }

  Eigen::Matrix<double, 17, 16> a;
  a.topRows<16>() = l;
  a.row(16).setZero();
  a.row(16).head<4>().setOnes();
  Eigen::Matrix<double, 17, 1> b = Eigen::Matrix<double, 17, 1>::Zero();
  b[16] = 1.0;

  const Eigen::CompleteOrthogonalDecomposition<Eigen::Matrix<double, 17, 16>> cod(a);
  HermitianCoords c = cod.solve(b);
  // One step of iterative refinement.
  c += cod.solve(b - a * c);

  // Linear solve residue can leave the trace off by a few ulp.
  Matrix4c m = from_coords(c);
  m /= m.trace().real();
  return DensityMatrix(m, 1e-12);
}

}  // namespace ntype
