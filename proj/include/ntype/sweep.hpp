#pragma once

#include <string>
#include <vector>

#include "ntype/model.hpp"

namespace ntype {

enum class CellRoute { kLinear, kEvolve, kFailed };

/// Steady-state DEM over a (omega, delta) grid with O31 = O32 = O41 = omega and
/// a common detuning delta. Cells are stored row-major: omega index major.
struct SweepGrid {
  std::vector<double> omega_axis;
  std::vector<double> delta_axis;
  std::vector<double> dem;         ///< NaN where the cell failed
  std::vector<CellRoute> route;
  std::vector<std::string> error;  ///< empty unless the cell failed

  std::size_t index(std::size_t i_omega, std::size_t i_delta) const { return i_omega * delta_axis.size() + i_delta; }
  double at(std::size_t i_omega, std::size_t i_delta) const { return dem[index(i_omega, i_delta)]; }
  bool converged(std::size_t i_omega, std::size_t i_delta) const {
    return route[index(i_omega, i_delta)] != CellRoute::kFailed;
  }
};

const char* route_name(CellRoute r);

struct SweepOptions {
  unsigned threads = 0;                               ///< 0: available parallelism
  DensityMatrix fallback_initial = DensityMatrix::bare_state(1);
  double steady_tol = 1e-10;
};

/// Each cell uses steady_state_linear; cells with a degenerate stationary
/// subspace fall back to steady_state_evolve from `fallback_initial`. A failing
/// cell is flagged and never aborts the sweep. The result does not depend on
/// the worker count.
SweepGrid run_sweep(const SystemParams& templ, const std::vector<double>& omega_axis,
                    const std::vector<double>& delta_axis, const SweepOptions& opts = {});

/// gnuplot `nonuniform matrix` text: first row is the column count followed by
/// the detunings, each following row is omega followed by its DEM values.
std::string gnuplot_matrix(const SweepGrid& grid);

}  // namespace ntype
