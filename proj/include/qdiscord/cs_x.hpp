#pragma once

// Centrosymmetric (CS) and X-shaped fourth-order matrices, and the double
// Hadamard similarity H (x) H that maps one family onto the other. The
// matrices may be arbitrary complex; nothing here assumes a density matrix
// except the DensityMatrix4 overloads.

#include "qdiscord/density.hpp"

#include <cstdint>

namespace qdiscord {

/// CS pattern:
///   a1 a2 a3 a4
///   a5 a6 a7 a8
///   a8 a7 a6 a5
///   a4 a3 a2 a1
struct CSMatrix {
  std::array<Complex, 8> a{};

  [[nodiscard]] Matrix4c to_matrix() const;
  /// Throws NotCS when the input deviates from the pattern by more than tol.
  static CSMatrix from_matrix(const Matrix4c &m, double tol = kDefaultTolerance);
};

/// X pattern; b1..b8 sit at (1,1),(1,4),(2,2),(2,3),(3,2),(3,3),(4,1),(4,4).
struct XMatrix {
  std::array<Complex, 8> b{};

  [[nodiscard]] Matrix4c to_matrix() const;
  /// Throws NotX when a non-X entry exceeds tol in modulus.
  static XMatrix from_matrix(const Matrix4c &m, double tol = kDefaultTolerance);
};

[[nodiscard]] double cs_deviation(const Matrix4c &m);
[[nodiscard]] double x_deviation(const Matrix4c &m);
[[nodiscard]] inline bool is_cs(const Matrix4c &m, double tol = kDefaultTolerance) { return cs_deviation(m) <= tol; }
[[nodiscard]] inline bool is_x(const Matrix4c &m, double tol = kDefaultTolerance) { return x_deviation(m) <= tol; }

/// H (x) H with H the 2x2 Hadamard matrix. Real, symmetric, orthogonal and
/// involutive; every entry is exactly +-1/2.
[[nodiscard]] Matrix4d hadamard2();
[[nodiscard]] Matrix2c hadamard();

/// Integer table T with b_m = (1/2) sum_k T[m][k] a_k, obtained by
/// conjugating each CS basis pattern with hadamard2(). Because H2 is an
/// involution the same table times 1/2 inverts itself.
using CoefficientTable = std::array<std::array<int, 8>, 8>;
[[nodiscard]] const CoefficientTable &cs_to_x_table();
/// FNV-1a hash of the table above, as a 16-digit hex string.
[[nodiscard]] std::string cs_to_x_table_hash();

[[nodiscard]] XMatrix cs_to_x(const CSMatrix &a);
[[nodiscard]] CSMatrix x_to_cs(const XMatrix &b);

/// Matrix-level forms: check the structure, then conjugate by hadamard2().
[[nodiscard]] Matrix4c cs_to_x(const Matrix4c &m, double tol = kDefaultTolerance);
[[nodiscard]] Matrix4c x_to_cs(const Matrix4c &m, double tol = kDefaultTolerance);

/// Density-matrix forms; the result is again a valid state.
[[nodiscard]] DensityMatrix4 cs_to_x(const DensityMatrix4 &rho, double tol = kDefaultTolerance);
[[nodiscard]] DensityMatrix4 x_to_cs(const DensityMatrix4 &rho, double tol = kDefaultTolerance);

}  // namespace qdiscord
