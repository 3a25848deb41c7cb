#pragma once

// Quantum discord of a canonical (real, nonnegative) X state with qubit B
// measured. Q = min{Q0, Q_theta, Q_pi/2}: the two endpoint branches are
// closed forms, the interior branch is found numerically.
//
// Everything is computed in nats; the unit argument converts at the end.

#include "qdiscord/x_canonical.hpp"

#include <optional>

namespace qdiscord {

/// Post-measurement weights for a projective measurement on B at polar
/// angle theta. outcome[] are the two outcome probabilities, spectral[] the
/// eigenvalues of the two post-measurement joint blocks. radius is
/// sqrt((a+b-c-d)^2 + 4(u+v)^2).
struct ConditionalEntropyParams {
  std::array<double, 2> outcome{};
  std::array<double, 4> spectral{};
  double radius = 0.0;
};

[[nodiscard]] ConditionalEntropyParams conditional_weights(const CanonicalXState &s, double theta);

[[nodiscard]] double entropy_B(const CanonicalXState &s, EntropyUnit unit = EntropyUnit::nats);
/// From the closed-form block eigenvalues (a+d)/2 +- sqrt((a-d)^2/4+u^2)
/// and (b+c)/2 +- sqrt((b-c)^2/4+v^2).
[[nodiscard]] double entropy_AB(const CanonicalXState &s, EntropyUnit unit = EntropyUnit::nats);
/// theta must lie in [0, pi/2].
[[nodiscard]] double conditional_entropy(const CanonicalXState &s, double theta, EntropyUnit unit = EntropyUnit::nats);
/// Measurement-dependent discord S_B - S_AB + S_cond(theta).
[[nodiscard]] double q_at(const CanonicalXState &s, double theta, EntropyUnit unit = EntropyUnit::nats);
[[nodiscard]] double q0(const CanonicalXState &s, EntropyUnit unit = EntropyUnit::nats);
[[nodiscard]] double q_pi2(const CanonicalXState &s, EntropyUnit unit = EntropyUnit::nats);

/// Second derivative of S_cond (nats) at an endpoint. The analytic
/// expression is singular when a population vanishes, or, at pi/2, when the
/// radius approaches 0 or 1; then a central finite difference is returned
/// and analytic is false.
struct Curvature {
  double value = 0.0;
  bool analytic = true;
};

[[nodiscard]] Curvature second_derivative_at_0(const CanonicalXState &s);
[[nodiscard]] Curvature second_derivative_at_pi2(const CanonicalXState &s);

enum class Branch { q0, q_theta, q_pi2 };
[[nodiscard]] const char *to_string(Branch b) noexcept;

struct DiscordResult {
  double q_value = 0.0;
  Branch branch = Branch::q0;
  double theta_opt = 0.0;  ///< radians in [0, pi/2]
  EntropyUnit unit = EntropyUnit::nats;
  double q0 = 0.0;
  double q_pi2 = 0.0;
  std::optional<double> q_theta;  ///< present when an interior minimum was found
};

struct DiscordOptions {
  int grid_points = 64;     ///< interior grid on (0, pi/2)
  double refine_tol = 1e-10;  ///< bracket width in theta for the refinement
};

/// Endpoint closed forms plus an interior grid scan; every interior local
/// minimum (and any endpoint with negative curvature) is refined by
/// golden-section search. Ties within 1e-12 go to the endpoint branch.
[[nodiscard]] DiscordResult discord(const CanonicalXState &s, EntropyUnit unit = EntropyUnit::nats,
                                    const DiscordOptions &opts = {});

struct BifurcationReport {
  /// True when the endpoint holding min(Q0, Q_pi/2) has negative curvature,
  /// i.e. its minimum has split and the optimum moved into (0, pi/2).
  bool interior_minimum_possible = false;
  Curvature at_0;
  Curvature at_pi2;
};

[[nodiscard]] BifurcationReport bifurcation_report(const CanonicalXState &s);

}  // namespace qdiscord
