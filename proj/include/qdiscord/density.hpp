#pragma once

// Two-qubit density matrices in the product basis |00>,|01>,|10>,|11>, with
// qubit A the left tensor factor. Qubit B is the measured subsystem
// everywhere in this library.

#include "qdiscord/types.hpp"

#include <array>

namespace qdiscord {

inline constexpr double kDefaultTolerance = 1e-12;

/// Pauli matrix by index: 0 -> identity, 1 -> x, 2 -> y, 3 -> z.
[[nodiscard]] Matrix2c pauli(int index);

/// Validated single-qubit state (reduced marginal).
class DensityMatrix2 {
public:
  static DensityMatrix2 validate(const Matrix2c &entries, double tol = kDefaultTolerance);

  [[nodiscard]] const Matrix2c &matrix() const noexcept { return m_; }
  /// Ascending eigenvalues; values in [-tol, 0) are clamped to zero.
  [[nodiscard]] Eigen::Vector2d eigenvalues() const;
  /// Bloch vector (Tr rho sigma_x, Tr rho sigma_y, Tr rho sigma_z).
  [[nodiscard]] Vector3d bloch_vector() const;

private:
  explicit DensityMatrix2(const Matrix2c &m) : m_(m) {}
  Matrix2c m_;
};

/// Validated joint two-qubit state. Construct through validate(); any
/// instance is Hermitian, unit-trace and positive semidefinite to the
/// tolerance it was validated with.
class DensityMatrix4 {
public:
  /// Throws Error listing every violated invariant (NotHermitian,
  /// TraceNotOne, NotPSD) with its magnitude.
  static DensityMatrix4 validate(const Matrix4c &entries, double tol = kDefaultTolerance);

  static DensityMatrix4 maximally_mixed();

  [[nodiscard]] const Matrix4c &matrix() const noexcept { return m_; }
  [[nodiscard]] Complex operator()(int row, int col) const { return m_(row, col); }
  /// Ascending eigenvalues from a general Hermitian eigensolver, clamped.
  [[nodiscard]] Eigen::Vector4d eigenvalues() const;

private:
  explicit DensityMatrix4(const Matrix4c &m) : m_(m) {}
  Matrix4c m_;
};

enum class Subsystem { A, B };

/// -sum x ln x over a probability vector, with 0 ln 0 = 0. Negative
/// entries are treated as zero.
[[nodiscard]] double shannon_nats(std::span<const double> weights) noexcept;

/// x ln x with the 0 ln 0 = 0 convention; nonpositive x gives 0.
[[nodiscard]] inline double xlogx(double x) noexcept { return x > 0.0 ? x * std::log(x) : 0.0; }

[[nodiscard]] double von_neumann_entropy(const DensityMatrix4 &rho, EntropyUnit unit = EntropyUnit::nats);
[[nodiscard]] double von_neumann_entropy(const DensityMatrix2 &rho, EntropyUnit unit = EntropyUnit::nats);

/// Marginal of the subsystem that is kept; the other one is traced out.
[[nodiscard]] DensityMatrix2 partial_trace(const DensityMatrix4 &rho, Subsystem keep);

/// S(rho_A) + S(rho_B) - S(rho_AB), clamped at zero.
[[nodiscard]] double mutual_information(const DensityMatrix4 &rho, EntropyUnit unit = EntropyUnit::nats);

/// Throws NotUnitary when ||U U^dagger - I|| exceeds tol.
void require_unitary(const Matrix2c &u, double tol = 1e-12);

/// (U_A (x) U_B) rho (U_A (x) U_B)^dagger.
[[nodiscard]] DensityMatrix4 conjugate_local(const DensityMatrix4 &rho, const Matrix2c &ua, const Matrix2c &ub);

[[nodiscard]] Matrix4c kron(const Matrix2c &a, const Matrix2c &b);

/// rho = (1/4)[s0 1 + sum_i a_i sigma_i (x) 1 + sum_j b_j 1 (x) sigma_j
///             + sum_ij T_ij sigma_i (x) sigma_j]
struct BlochCoefficients {
  double scalar = 1.0;
  Vector3d local_a = Vector3d::Zero();
  Vector3d local_b = Vector3d::Zero();
  Matrix3d correlations = Matrix3d::Zero();
};

/// Coefficients are Tr[rho (sigma_i (x) sigma_j)]; works on any Hermitian 4x4.
[[nodiscard]] BlochCoefficients bloch_decompose(const Matrix4c &rho);
[[nodiscard]] inline BlochCoefficients bloch_decompose(const DensityMatrix4 &rho) {
  return bloch_decompose(rho.matrix());
}
/// Raw synthesis; the result is Hermitian but not validated.
[[nodiscard]] Matrix4c bloch_matrix(const BlochCoefficients &coeffs);
[[nodiscard]] DensityMatrix4 bloch_compose(const BlochCoefficients &coeffs, double tol = kDefaultTolerance);

}  // namespace qdiscord
