#include "ntype/sweep.hpp"

#include <cmath>
#include <limits>

#include "ntype/dynamics.hpp"
#include "ntype/error.hpp"
#include "ntype/observables.hpp"
#include "ntype/parallel.hpp"
#include "ntype/report.hpp"

namespace ntype {

const char* route_name(CellRoute r) {
  switch (r) {
    case CellRoute::kLinear: return "linear";
    case CellRoute::kEvolve: return "evolve";
    case CellRoute::kFailed: return "failed";
  }
  return "failed";
}

namespace {

void require_ascending(const std::vector<double>& axis, const char* name) {
  for (std::size_t k = 1; k < axis.size(); ++k)
    if (!(axis[k] > axis[k - 1])) throw InvalidParameter(std::string(name) + " axis must be strictly ascending");
}

}  // namespace

SweepGrid run_sweep(const SystemParams& templ, const std::vector<double>& omega_axis,
                    const std::vector<double>& delta_axis, const SweepOptions& opts) {
  require_ascending(omega_axis, "omega");
  require_ascending(delta_axis, "delta");
  SweepGrid grid;
  grid.omega_axis = omega_axis;
  grid.delta_axis = delta_axis;
  const std::size_t n = omega_axis.size() * delta_axis.size();
  grid.dem.assign(n, std::numeric_limits<double>::quiet_NaN());
  grid.route.assign(n, CellRoute::kFailed);
  grid.error.assign(n, {});

  parallel_for(n, opts.threads, [&](std::size_t idx) {
    SystemParams p = templ;
    p.rabi_31 = p.rabi_32 = p.rabi_41 = omega_axis[idx / delta_axis.size()];
    p.delta_31 = p.delta_32 = p.delta_41 = delta_axis[idx % delta_axis.size()];
    try {
      try {
        grid.dem[idx] = von_neumann_dem(steady_state_linear(p));
        grid.route[idx] = CellRoute::kLinear;
      } catch (const DegenerateSteadyState&) {
        SteadyEvolveOptions so;
        so.tol = opts.steady_tol;
        grid.dem[idx] = von_neumann_dem(steady_state_evolve(p, opts.fallback_initial, so));
        grid.route[idx] = CellRoute::kEvolve;
      }
    } catch (const Error& e) {
      grid.dem[idx] = std::numeric_limits<double>::quiet_NaN();
      grid.route[idx] = CellRoute::kFailed;
      grid.error[idx] = e.what();
    }
  });
  return grid;
}

std::string gnuplot_matrix(const SweepGrid& grid) {
  std::string s = std::to_string(grid.delta_axis.size());
  for (double d : grid.delta_axis) s += " " + format_number(d);
  s += "\n";
  for (std::size_t i = 0; i < grid.omega_axis.size(); ++i) {
    s += format_number(grid.omega_axis[i]);
    for (std::size_t j = 0; j < grid.delta_axis.size(); ++j) s += " " + format_number(grid.at(i, j));
    s += "\n";
  }
  return s;
}

}  // namespace ntype
