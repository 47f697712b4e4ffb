#include "ntype/commands.hpp"

#include <cmath>
#include <limits>

#include "ntype/analytic.hpp"
#include "ntype/dynamics.hpp"
#include "ntype/error.hpp"
#include "ntype/observables.hpp"

namespace ntype {

namespace {

constexpr std::array<std::pair<int, int>, 6> kCoherences{{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

Report base_report(const char* command, const RunConfig& cfg) {
  Report r;
  r.command = command;
  r.config = config_entries(cfg);
  return r;
}

void state_columns(Report& r, bool dressed) {
  r.columns.push_back("dem");
  for (int i = 1; i <= 4; ++i) r.columns.push_back("rho" + std::to_string(i) + std::to_string(i));
  if (dressed)
    for (int k = 1; k <= 4; ++k) r.columns.push_back("p_d" + std::to_string(k));
  for (auto [i, j] : kCoherences) {
    const std::string tag = "rho" + std::to_string(i + 1) + std::to_string(j + 1);
    r.columns.push_back("re_" + tag);
    r.columns.push_back("im_" + tag);
  }
}

void state_cells(std::vector<Cell>& row, const DensityMatrix& rho, const std::optional<DressedBasis>& basis) {
  row.emplace_back(von_neumann_dem(rho));
  for (double p : populations(rho).values) row.emplace_back(p);
  if (basis)
    for (double p : populations(rho, *basis).values) row.emplace_back(p);
  for (auto [i, j] : kCoherences) {
    row.emplace_back(rho(i, j).real());
    row.emplace_back(rho(i, j).imag());
  }
}

std::optional<DressedBasis> evolve_basis(const SystemParams& p) {
  if (p.rabi_31 != p.rabi_32) return std::nullopt;
  return dressed_basis_for(p);
}

}  // namespace

CommandResult cmd_evolve(const RunConfig& cfg) {
  validate_config(cfg);
  const Trajectory traj = evolve(cfg.params, cfg.initial.make(), cfg.integrator);
  const auto basis = evolve_basis(cfg.params);

  CommandResult out{base_report("evolve", cfg), std::nullopt};
  Report& r = out.report;
  r.meta.emplace_back("dressed_columns", basis ? (basis->symmetric ? "closed-form" : "numeric") : "omitted");
  r.columns.push_back("t");
  state_columns(r, basis.has_value());
  r.rows.reserve(traj.size());
  for (std::size_t k = 0; k < traj.size(); ++k) {
    std::vector<Cell> row{traj.times[k]};
    state_cells(row, traj.states[k], basis);
    r.rows.push_back(std::move(row));
  }
  return out;
}

CommandResult cmd_steady(const RunConfig& cfg) {
  validate_config(cfg);
  std::string route = "linear";
  const DensityMatrix rho = [&] {
    try {
      return steady_state_linear(cfg.params);
    } catch (const DegenerateSteadyState&) {
      route = "evolve";
      SteadyEvolveOptions so;
      so.tol = cfg.steady_tol;
      return steady_state_evolve(cfg.params, cfg.initial.make(), so);
    }
  }();
  const auto basis = evolve_basis(cfg.params);

  CommandResult out{base_report("steady", cfg), std::nullopt};
  Report& r = out.report;
  r.meta.emplace_back("route", route);
  r.columns.push_back("rhs_max_norm");
  state_columns(r, basis.has_value());
  std::vector<Cell> row{rhs(cfg.params, rho).cwiseAbs().maxCoeff()};
  state_cells(row, rho, basis);
  r.rows.push_back(std::move(row));
  return out;
}

CommandResult cmd_sweep(const RunConfig& cfg, unsigned threads) {
  validate_config(cfg);
  SweepOptions opts;
  opts.threads = threads;
  opts.fallback_initial = cfg.initial.make();
  opts.steady_tol = cfg.steady_tol;
  SweepGrid grid = run_sweep(cfg.params, cfg.omega_axis.values(), cfg.delta_axis.values(), opts);

  CommandResult out{base_report("sweep", cfg), std::nullopt};
  Report& r = out.report;
  r.columns = {"omega", "delta", "dem", "converged", "route"};
  for (std::size_t i = 0; i < grid.omega_axis.size(); ++i) {
    for (std::size_t j = 0; j < grid.delta_axis.size(); ++j) {
      const std::size_t idx = grid.index(i, j);
      r.rows.push_back({grid.omega_axis[i], grid.delta_axis[j], grid.dem[idx], grid.converged(i, j),
                        std::string(route_name(grid.route[idx]))});
    }
  }
  out.grid = std::move(grid);
  return out;
}

CommandResult cmd_compare(const RunConfig& cfg, unsigned threads) {
  validate_config(cfg);
  const auto rows = compare_analytic_numeric(cfg.omega_axis.values(), cfg.params, threads);

  CommandResult out{base_report("compare", cfg), std::nullopt};
  Report& r = out.report;
  r.columns = {"omega", "dem_numeric", "dem_analytic", "abs_diff", "analytic_valid"};
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  for (const auto& row : rows) {
    r.rows.push_back({row.omega, row.dem_numeric.value_or(nan), row.dem_analytic.value_or(nan),
                      row.abs_diff().value_or(nan), row.analytic_valid});
  }
  for (const auto& row : rows)
    if (!row.error.empty()) r.meta.emplace_back("error.omega=" + format_number(row.omega), row.error);
  return out;
}

CommandResult cmd_dressed(const RunConfig& cfg) {
  validate_config(cfg);
  const SystemParams& p = cfg.params;
  const DressedBasis basis =
      p.rabi_31 == p.rabi_32 ? dressed_basis(p.rabi_31, p.rabi_41) : numeric_dressed_basis(p);
  const Matrix4c h = hamiltonian_resonant(p);
  const DressedBasis numeric = numeric_dressed_basis(p);

  CommandResult out{base_report("dressed", cfg), std::nullopt};
  Report& r = out.report;
  r.meta.emplace_back("construction", basis.symmetric ? "closed-form" : "numeric");
  if (basis.symmetric) {
    r.meta.emplace_back("A", format_number(basis.a));
    r.meta.emplace_back("B", format_number(basis.b));
    r.meta.emplace_back("C", format_number(basis.c));
  }
  std::string eig;
  for (double e : numeric.energies) eig += (eig.empty() ? "" : " ") + format_number(e);
  r.meta.emplace_back("hamiltonian_eigenvalues", eig);
  r.meta.emplace_back("gram_residual", format_number(basis.gram_residual()));
  r.meta.emplace_back("diagonalization_residual", format_number(basis.diagonalization_residual(h)));

  r.columns = {"state", "energy"};
  for (int i = 1; i <= 4; ++i) {
    r.columns.push_back("re_c" + std::to_string(i));
    r.columns.push_back("im_c" + std::to_string(i));
  }
  for (int k = 0; k < 4; ++k) {
    std::vector<Cell> row{static_cast<long>(k + 1), basis.energies[k]};
    for (int i = 0; i < 4; ++i) {
      row.emplace_back(basis.states[k][i].real());
      row.emplace_back(basis.states[k][i].imag());
    }
    r.rows.push_back(std::move(row));
  }
  return out;
}

}  // namespace ntype
