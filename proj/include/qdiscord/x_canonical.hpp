#pragma once

// General seven-parameter X states and their reduction to the real
// five-parameter form with nonnegative coherences.
//
//   a   0   0   u1+iu2
//   0   b   v1+iv2   0
//   0   v1-iv2   c   0
//   u1-iu2   0   0   d

#include "qdiscord/density.hpp"

#include <cstdint>

namespace qdiscord {

struct XState {
  double a = 0.25, b = 0.25, c = 0.25, d = 0.25;
  double u1 = 0.0, u2 = 0.0;
  double v1 = 0.0, v2 = 0.0;
};

/// A local unitary U_A (x) U_B that was applied to reach canonical form.
struct LocalTransform {
  Matrix2c on_a;
  Matrix2c on_b;
};

struct CanonicalXState {
  double a = 0.25, b = 0.25, c = 0.25, d = 0.25;
  double u = 0.0;  ///< outer coherence, >= 0
  double v = 0.0;  ///< inner coherence, >= 0
  std::vector<LocalTransform> applied;
};

/// Throws InvalidXState listing the violated trace/positivity bounds.
void validate(const XState &x, double tol = kDefaultTolerance);
void validate(const CanonicalXState &x, double tol = kDefaultTolerance);

/// Independent z-rotations on A and B make both coherences real and
/// nonnegative: the outer element picks up exp(-i(alpha+gamma)) and the inner
/// one exp(-i(alpha-gamma)). Zero coherences leave their phase untouched.
[[nodiscard]] CanonicalXState canonicalize(const XState &x, double tol = kDefaultTolerance);

/// Reads the X parameters out of a density matrix with X structure.
[[nodiscard]] XState x_state_from(const DensityMatrix4 &rho, double tol = kDefaultTolerance);

[[nodiscard]] Matrix4c x_matrix(const XState &x);
[[nodiscard]] Matrix4c x_matrix(const CanonicalXState &x);
[[nodiscard]] DensityMatrix4 embed(const XState &x, double tol = kDefaultTolerance);
[[nodiscard]] DensityMatrix4 embed(const CanonicalXState &x, double tol = kDefaultTolerance);

/// Deterministic test-data generator: populations uniform on the simplex,
/// each coherence uniform over its positivity disk.
[[nodiscard]] XState sample_random_xstate(std::uint64_t seed);

}  // namespace qdiscord
