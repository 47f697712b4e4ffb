#pragma once

#include <array>
#include <utility>
#include <vector>

#include "ntype/dynamics.hpp"
#include "ntype/model.hpp"

namespace ntype {

/// Entanglement between the atom and its emission field: the von-Neumann
/// entropy -sum(l ln l) of the atomic state. Eigenvalues in [-1e-9, 0) are
/// clamped to 0; anything more negative throws InvalidState.
double von_neumann_dem(const DensityMatrix& rho);

/// Entropy of an explicit eigenvalue list, same clamping rules.
double entropy_of_eigenvalues(const std::array<double, 4>& eigenvalues);

/// Orthonormal eigenbasis of hamiltonian_resonant, ordered by ascending
/// eigenvalue. Each vector is phase-fixed so that its |4> component is real
/// and positive (or, if that component vanishes, its first nonzero one).
struct DressedBasis {
  std::array<Vector4c, 4> states;
  std::array<double, 4> energies{};
  // Closed-form intermediates, units gamma^2. Zero for a numeric basis.
  double a = 0.0;  ///< sqrt(4 O3^4 + O41^4)
  double b = 0.0;  ///< 2 O3^2 + O41^2
  double c = 0.0;  ///< 2 O3^2 - O41^2
  /// True when built from the closed form (requires O31 == O32 == O3).
  bool symmetric = false;

  /// Unitary with the dressed states as columns.
  Matrix4c unitary() const;
  /// Largest |<Dk|Dl> - delta_kl|.
  double gram_residual() const;
  /// Largest off-diagonal |<Dk|H|Dl>| for the given Hamiltonian.
  double diagonalization_residual(const Matrix4c& h) const;
};

/// Closed-form dressed states at multi-photon resonance for O31 = O32 = omega3.
/// Throws DegenerateDressedBasis if either frequency is not strictly positive.
DressedBasis dressed_basis(double omega3, double omega41);

/// Numeric eigendecomposition of hamiltonian_resonant(params), same ordering
/// and phase convention as the closed form.
DressedBasis numeric_dressed_basis(const SystemParams& params);

/// Closed form when O31 == O32 > 0 and O41 > 0, numeric otherwise.
DressedBasis dressed_basis_for(const SystemParams& params);

enum class PopulationBasis { kBare, kDressed };

struct PopulationRecord {
  std::array<double, 4> values{};
  PopulationBasis basis = PopulationBasis::kBare;

  double sum() const { return values[0] + values[1] + values[2] + values[3]; }
};

/// Diagonal of rho in the bare basis.
PopulationRecord populations(const DensityMatrix& rho);
/// <Dk|rho|Dk> for each dressed state.
PopulationRecord populations(const DensityMatrix& rho, const DressedBasis& basis);

/// (time, DEM) for every recorded state.
std::vector<std::pair<double, double>> dem_series(const Trajectory& traj);

}  // namespace ntype
