#pragma once

#include <array>
#include <complex>

#include <Eigen/Dense>

namespace ntype {

using Complex = std::complex<double>;
using Matrix4c = Eigen::Matrix4cd;
using Vector4c = Eigen::Vector4cd;

/// Real coordinates of a Hermitian 4x4 matrix: the four populations followed
/// by (Re, Im) of the upper-triangle elements in the order 12, 13, 14, 23, 24, 34.
using HermitianCoords = Eigen::Matrix<double, 16, 1>;

/// Drive, detuning, decay and phase parameters of the N-type atom. Every rate
/// and frequency is expressed in units of the reference decay rate gamma.
struct SystemParams {
  double rabi_31 = 0.0;
  double rabi_32 = 0.0;
  double rabi_41 = 0.0;
  double delta_31 = 0.0;
  double delta_32 = 0.0;
  double delta_41 = 0.0;
  double gamma_31 = 1.0;
  double gamma_32 = 1.0;
  double gamma_41 = 1.0;
  double gamma_42 = 1.0;
  // Laser phases only relabel the rotating frame; they never enter the
  // equations of motion.
  double phi_31 = 0.0;
  double phi_32 = 0.0;

  /// Equal unit decay rates and a common detuning on all three fields.
  static SystemParams with_rabi(double rabi_31, double rabi_32, double rabi_41,
                                     double delta = 0.0);
  /// Shorthand for a common Rabi frequency on all three transitions.
  static SystemParams symmetric(double rabi, double delta = 0.0);

  /// Throws InvalidParameter unless decay rates are > 0, Rabi frequencies are
  /// >= 0 and every field is finite.
  void validate() const;

  bool operator==(const SystemParams&) const = default;
};

/// 4x4 Hermitian, unit-trace, positive semidefinite atomic state in the
/// bare basis |1>..|4> (stored 0-based).
///
/// Only the populations and the upper triangle of the input are read; the
/// lower triangle is always the conjugate mirror, so Hermiticity is exact.
class DensityMatrix {
 public:
  static constexpr double kTraceTolerance = 1e-12;
  static constexpr double kEigenTolerance = 1e-9;

  explicit DensityMatrix(const Matrix4c& m, double trace_tolerance = kTraceTolerance,
                         double eigen_tolerance = kEigenTolerance);

  /// |level><level| for a bare level given 1-based (1..4).
  static DensityMatrix bare_state(int level);
  static DensityMatrix from_coords(const HermitianCoords& c,
                                   double trace_tolerance = kTraceTolerance);

  const Matrix4c& matrix() const noexcept { return m_; }
  /// Zero-based element access; rho(2, 1) is the 3-2 coherence.
  Complex operator()(int i, int j) const { return m_(i, j); }
  double population(int i) const { return m_(i, i).real(); }
  double trace() const { return m_.trace().real(); }

  /// Ascending eigenvalues.
  std::array<double, 4> eigenvalues() const;
  HermitianCoords coords() const;

 private:
  Matrix4c m_;
};

/// Mirror the populations and the upper triangle into a Hermitian matrix.
Matrix4c hermitian_from_upper(const Matrix4c& m);
HermitianCoords to_coords(const Matrix4c& hermitian);
Matrix4c from_coords(const HermitianCoords& c);

/// Time derivative of the rotating-frame density matrix. The populations and
/// upper-triangle coherences follow the N-type equations of motion literally
/// with real non-negative Rabi factors; the lower triangle is the conjugate
/// mirror. Validates params.
Matrix4c rhs(const SystemParams& params, const DensityMatrix& rho);

/// Same equations applied to any Hermitian matrix (only populations and upper
/// triangle are read). No validation; used inside integrators and for
/// building linear maps.
Matrix4c rhs_unchecked(const SystemParams& params, const Matrix4c& rho);

/// Interaction Hamiltonian at multi-photon resonance (hbar = 1):
/// O41(|4><1| + h.c.) + O31(|3><1| + h.c.) + O32(|3><2| + h.c.).
Matrix4c hamiltonian_resonant(const SystemParams& params);

/// Rotating-frame level energies (0, D31 - D32, D31, D41) whose commutator
/// reproduces the detuning terms of the equations of motion.
Eigen::Vector4d rotating_frame_energies(const SystemParams& params);

}  // namespace ntype
