#include "ntype/analytic.hpp"

#include <cmath>
#include <sstream>

#include "ntype/dynamics.hpp"
#include "ntype/error.hpp"
#include "ntype/observables.hpp"
#include "ntype/parallel.hpp"

namespace ntype {

Complex analytic_coherence(double omega, double gamma) {
  if (!(omega > 0.0) || !std::isfinite(omega)) throw InvalidParameter("omega must be > 0");
  if (!(gamma > 0.0) || !std::isfinite(gamma)) throw InvalidParameter("gamma must be > 0");
  const double o2 = omega * omega;
  return {0.0, gamma * o2 * omega / (4.0 * o2 * o2 + 2.0 * gamma * gamma * o2)};
}

AnalyticEigenvalues analytic_eigenvalues(Complex coherence) {
  const double mod = std::abs(coherence);
  const double r5 = std::sqrt(5.0);
  // 2 sqrt2 sqrt(k |D|^2) / 4
  const double inner = std::sqrt(2.0) / 2.0 * std::sqrt(3.0 - r5) * mod;
  const double outer = std::sqrt(2.0) / 2.0 * std::sqrt(3.0 + r5) * mod;

  // Snap both offsets to a power-of-two grid coarse enough that every value
  // and every partial sum is exactly representable.
  const double bound = 1.0 + 2.0 * (0.25 + outer);
  const double quantum = std::ldexp(1.0, std::ilogb(bound) + 1 - 52);
  const double x = std::nearbyint(inner / quantum) * quantum;
  const double y = std::nearbyint(outer / quantum) * quantum;

  AnalyticEigenvalues out;
  out.values = {0.25 - x, 0.25 + x, 0.25 - y, 0.25 + y};
  for (double l : out.values) out.valid = out.valid && l >= 0.0;
  return out;
}

AnalyticSteadyState analytic_steady_state(double omega, double gamma) {
  AnalyticSteadyState s;
  s.omega = omega;
  s.coherence = analytic_coherence(omega, gamma);
  s.eigenvalues = analytic_eigenvalues(s.coherence);
  if (s.eigenvalues.valid) s.dem = entropy_of_eigenvalues(s.eigenvalues.values);
  return s;
}

std::optional<double> analytic_dem(double omega, double gamma) {
  return analytic_steady_state(omega, gamma).dem;
}

std::optional<double> ComparisonRow::abs_diff() const {
  if (!dem_numeric || !dem_analytic) return std::nullopt;
  return std::abs(*dem_numeric - *dem_analytic);
}

std::vector<ComparisonRow> compare_analytic_numeric(const std::vector<double>& omega_grid,
                                                    const SystemParams& templ, unsigned threads) {
  for (std::size_t k = 0; k < omega_grid.size(); ++k) {
    const double w = omega_grid[k];
    if (!(w > 0.0 && w <= 20.0)) throw InvalidParameter("compare grid must lie within (0, 20]");
    if (k > 0 && !(w > omega_grid[k - 1])) throw InvalidParameter("compare grid must be strictly ascending");
  }
  templ.validate();
  const double gamma = templ.gamma_31;

  std::vector<ComparisonRow> rows(omega_grid.size());
  parallel_for(rows.size(), threads, [&](std::size_t k) {
    ComparisonRow& row = rows[k];
    row.omega = omega_grid[k];
    SystemParams p = templ;
    p.rabi_31 = p.rabi_32 = p.rabi_41 = row.omega;
    p.delta_31 = p.delta_32 = p.delta_41 = 0.0;
    try {
      row.dem_numeric = von_neumann_dem(steady_state_linear(p));
    } catch (const Error& e) {
      row.error = e.what();
    }
    const AnalyticSteadyState a = analytic_steady_state(row.omega, gamma);
    row.analytic_valid = a.eigenvalues.valid;
    row.dem_analytic = a.dem;
  });
  return rows;
}

}  // namespace ntype
