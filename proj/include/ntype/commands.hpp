#pragma once

#include <optional>
#include <string>

#include "ntype/config.hpp"
#include "ntype/report.hpp"
#include "ntype/sweep.hpp"

namespace ntype {

struct CommandResult {
  Report report;
  std::optional<SweepGrid> grid;  ///< set by sweep
};

/// Time series: t, dem, bare populations, dressed populations (when
/// O31 == O32), then Re/Im of the six upper-triangle coherences.
CommandResult cmd_evolve(const RunConfig& cfg);
/// Single-row stationary state (null-space route, evolution fallback).
CommandResult cmd_steady(const RunConfig& cfg);
/// Steady-state DEM over the configured omega/delta axes.
CommandResult cmd_sweep(const RunConfig& cfg, unsigned threads = 0);
/// Numeric vs closed-form steady-state DEM over the configured omega axis.
CommandResult cmd_compare(const RunConfig& cfg, unsigned threads = 0);
/// Dressed basis for (rabi_31, rabi_41); closed form when rabi_31 == rabi_32.
CommandResult cmd_dressed(const RunConfig& cfg);

}  // namespace ntype
