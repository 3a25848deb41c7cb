#pragma once

// Pair correlations of N spin-1/2 gas molecules in a closed nanopore after a
// single pi/2 pulse. Time enters only through alpha_t and temperature only
// through beta. All discord values default to bits.

#include "qdiscord/x_discord.hpp"

#include <functional>

namespace qdiscord::nanopore {

/// Numerical prefactors of the closed-form correlators
///   p = P tanh(b/2) cos^{N-1}(at)
///   q = Q tanh^2(b/2) [1 + cos^{N-2}(2at)]
///   r = R tanh^2(b/2) [1 - cos^{N-2}(2at)]
///   u = U tanh(b/2) cos^{N-2}(at) sin(at)
/// Only the self-test's fault injection changes them.
struct CorrelatorPrefactors {
  double p = 0.5;
  double q = 0.125;
  double r = 0.125;
  double u = 0.25;
};

struct NanoporeParams {
  int n = 10;
  double beta = 1.0;
  double alpha_t = 0.0;
  CorrelatorPrefactors prefactors{};
};

void validate(const NanoporeParams &p);

struct NanoporeCorrelators {
  double p = 0.0, q = 0.0, r = 0.0, u = 0.0;
  double phi = 0.0;  ///< common z-rotation angle -atan2(2u, r)/2
};

[[nodiscard]] NanoporeCorrelators correlators(const NanoporeParams &params);

/// rho = (1/4)[1 + 2p(sx1 + sx2) + 4q sx1 sx2 + 4r sy1 sy2 + 4u(sy1 sz2 + sz1 sy2)]
[[nodiscard]] BlochCoefficients bloch_form(const NanoporeCorrelators &c);
/// Inverse of bloch_form on states of that shape.
[[nodiscard]] NanoporeCorrelators correlators_from(const BlochCoefficients &b);

/// The centrosymmetric pair state built from the Bloch form.
[[nodiscard]] DensityMatrix4 pair_state(const NanoporeParams &params);

/// a = 1/4+p+q, b = c = 1/4-q, d = 1/4-p+q, outer sqrt(r^2+4u^2), inner r.
[[nodiscard]] CanonicalXState canonical_x_state(const NanoporeParams &params);

/// Joint entropy in bits from the block eigenvalues
/// 1/4+q +- sqrt(p^2+r^2+4u^2) and 1/4-q +- r.
[[nodiscard]] double pair_entropy_bits(const NanoporeCorrelators &c);
[[nodiscard]] double q0_bits(const NanoporeParams &params);
[[nodiscard]] double q_pi2_bits(const NanoporeParams &params);

[[nodiscard]] DiscordResult discord_at(const NanoporeParams &params, EntropyUnit unit = EntropyUnit::bits,
                                       const DiscordOptions &opts = {});

struct SweepRecord {
  double alpha_t = 0.0;
  double q0 = 0.0;
  double q_pi2 = 0.0;
  std::optional<double> q_theta;
  double q = 0.0;
  double theta_opt = 0.0;
};

struct SweepRange {
  int n = 10;
  double beta = 1.0;
  double t_start = 0.0;
  double t_end = kPi;
  int steps = 1000;  ///< number of samples, endpoints included
  EntropyUnit unit = EntropyUnit::bits;
  CorrelatorPrefactors prefactors{};
};

/// Records are in time order whatever the thread count.
[[nodiscard]] std::vector<SweepRecord> sweep(const SweepRange &range, int threads = 1);

struct ScanOptions {
  int grid_points = 4000;  ///< interior samples of the bracket
  double tol = 1e-10;      ///< bisection width in alpha_t
};

/// Roots of Q0 - Q_pi/2 strictly inside (lo, hi), located by sign changes on
/// a grid and bisection. Tangencies without a sign change are not roots.
[[nodiscard]] std::vector<double> find_branch_crossings(int n, double beta, double lo, double hi,
                                                        const ScanOptions &opts = {},
                                                        const CorrelatorPrefactors &pre = {});

struct Window {
  double lo = 0.0;
  double hi = 0.0;
  bool degenerate = false;  ///< width below 1e-6
};

/// Parameter intervals on which an interior-angle branch can exist.
///  * Open windows: the curvature of S_cond at the endpoint holding
///    min(Q0, Q_pi/2) is negative.
///  * At each branch crossing, the nearest zeros of S''(0) and S''(pi/2)
///    bound the interval over which the optimum travels between the two
///    endpoints; when they coincide the window collapses to a point.
/// Overlapping intervals are merged.
using XFamily = std::function<CanonicalXState(double)>;
[[nodiscard]] std::vector<Window> find_bifurcation_windows(const XFamily &family, double lo, double hi,
                                                           const ScanOptions &opts = {});
[[nodiscard]] std::vector<Window> find_bifurcation_windows(int n, double beta, double lo, double hi,
                                                           const ScanOptions &opts = {});

/// N -> infinity plateau value (bits) with q = tanh^2(beta/2)/8.
[[nodiscard]] double thermodynamic_limit_discord(double beta);

struct Harmonic {
  int index = 0;
  double amplitude = 0.0;  ///< mean for index 0, 2|X_h|/M otherwise
  double cos_coeff = 0.0;
  double sin_coeff = 0.0;
};

/// Real DFT of Q(alpha_t) (bits) sampled at alpha_t = k pi / samples over one
/// period. Harmonic h oscillates as cos(2 h alpha_t). samples must be a power
/// of two and at least 4 * harmonics.
[[nodiscard]] std::vector<Harmonic> flicker_spectrum(int n, double beta, int samples, int harmonics, int threads = 1);

}  // namespace qdiscord::nanopore
