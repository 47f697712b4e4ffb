#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "ntype/model.hpp"

namespace ntype {

/// Steady-state coherence for equal Rabi frequencies at multi-photon
/// resonance: D = i gamma O^3 / (4 O^4 + 2 gamma^2 O^2). Purely imaginary.
/// Throws InvalidParameter unless omega > 0 and gamma > 0.
Complex analytic_coherence(double omega, double gamma = 1.0);

struct AnalyticEigenvalues {
  /// (1 -+ 2 sqrt2 sqrt((3 - sqrt5)|D|^2))/4, then (1 -+ 2 sqrt2 sqrt((3 + sqrt5)|D|^2))/4.
  std::array<double, 4> values{};
  /// False if any eigenvalue is negative.
  bool valid = true;
};

/// Eigenvalues of the near-uniform steady state with coherence D. The values
/// lie on a common dyadic grid, so they sum to exactly 1.0 in any order.
AnalyticEigenvalues analytic_eigenvalues(Complex coherence);

struct AnalyticSteadyState {
  double omega = 0.0;
  Complex coherence;
  AnalyticEigenvalues eigenvalues;
  std::optional<double> dem;  ///< empty when the eigenvalues are invalid
};

AnalyticSteadyState analytic_steady_state(double omega, double gamma = 1.0);

/// Entropy of analytic_eigenvalues(analytic_coherence(omega, gamma)); empty
/// (the invalid marker) when an eigenvalue is negative.
std::optional<double> analytic_dem(double omega, double gamma = 1.0);

struct ComparisonRow {
  double omega = 0.0;
  std::optional<double> dem_numeric;
  std::optional<double> dem_analytic;
  bool analytic_valid = false;
  std::string error;  ///< numeric solver failure for this row, if any

  std::optional<double> abs_diff() const;
};

/// Numeric (null-space steady state) against closed-form DEM on a grid of
/// common Rabi frequencies. Rows are independent; a failing row is marked and
/// the rest still run. `templ` supplies the decay rates; its Rabi frequencies
/// and detunings are overridden (O31 = O32 = O41 = omega, all detunings 0).
std::vector<ComparisonRow> compare_analytic_numeric(const std::vector<double>& omega_grid,
                                                    const SystemParams& templ = {},
                                                    unsigned threads = 1);

}  // namespace ntype
