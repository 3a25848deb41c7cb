#include "qdiscord/x_discord.hpp"

#include "qdiscord/detail/minimize.hpp"

namespace qdiscord {

namespace {

constexpr double kHalfPi = kPi / 2.0;
constexpr double kTieTolerance = 1e-12;
constexpr double kFiniteDifferenceStep = 1e-4;

// (ln x - ln y)/(x - y), continuous through x == y where it tends to 1/x.
double log_ratio_over_difference(double x, double y) {
  if (x == y) return 1.0 / x;
  const double rel = (x - y) / y;
  return std::log1p(rel) / (rel * y);
}

// No range check on theta: the finite-difference fallbacks evaluate just
// outside [0, pi/2], where the expression is the even continuation.
double conditional_entropy_nats(const CanonicalXState &s, double theta) {
  const auto w = conditional_weights(s, theta);
  return -shannon_nats(w.outcome) + shannon_nats(w.spectral);
}

double block_entropy_nats(const CanonicalXState &s) {
  const double outer = std::sqrt(0.25 * (s.a - s.d) * (s.a - s.d) + s.u * s.u);
  const double inner = std::sqrt(0.25 * (s.b - s.c) * (s.b - s.c) + s.v * s.v);
  const std::array<double, 4> ev{0.5 * (s.a + s.d) + outer, 0.5 * (s.a + s.d) - outer,
                                 0.5 * (s.b + s.c) + inner, 0.5 * (s.b + s.c) - inner};
  return shannon_nats(ev);
}

double entropy_B_nats(const CanonicalXState &s) {
  const std::array<double, 2> w{s.a + s.c, s.b + s.d};
  return shannon_nats(w);
}

double q0_nats(const CanonicalXState &s) {
  const std::array<double, 4> diag{s.a, s.b, s.c, s.d};
  return shannon_nats(diag) - block_entropy_nats(s);
}

double q_pi2_nats(const CanonicalXState &s) {
  const double x = s.a + s.b - s.c - s.d;
  const double w = s.u + s.v;
  const double radius = std::sqrt(x * x + 4.0 * w * w);
  return -block_entropy_nats(s) - kLn2 - xlogx(s.a + s.c) - xlogx(s.b + s.d) - 2.0 * xlogx(0.25 * (1.0 + radius)) -
         2.0 * xlogx(0.25 * (1.0 - radius));
}

Curvature finite_difference_at(const CanonicalXState &s, double theta0) {
  const double h = kFiniteDifferenceStep;
  const double inward = theta0 == 0.0 ? h : theta0 - h;
  // S_cond is even about both endpoints, so the central difference reduces
  // to a one-sided evaluation.
  const double value = 2.0 * (conditional_entropy_nats(s, inward) - conditional_entropy_nats(s, theta0)) / (h * h);
  return {value, false};
}

}  // namespace

const char *to_string(Branch b) noexcept {
  switch (b) {
  case Branch::q0: return "Q0";
  case Branch::q_theta: return "Qtheta";
  case Branch::q_pi2: return "Qpi2";
  }
  return "?";
}

ConditionalEntropyParams conditional_weights(const CanonicalXState &s, double theta) {
  const double z = s.a - s.b + s.c - s.d;
  const double x = s.a + s.b - s.c - s.d;
  const double t = s.a - s.b - s.c + s.d;
  const double w = s.u + s.v;
  const double cs = std::cos(theta);
  const double sn2 = std::sin(theta) * std::sin(theta);
  const double cross = 4.0 * w * w * sn2;
  const double w1 = std::sqrt((x + t * cs) * (x + t * cs) + cross);
  const double w2 = std::sqrt((x - t * cs) * (x - t * cs) + cross);

  ConditionalEntropyParams p;
  p.outcome = {0.5 * (1.0 + z * cs), 0.5 * (1.0 - z * cs)};
  p.spectral = {0.25 * (1.0 + z * cs + w1), 0.25 * (1.0 + z * cs - w1), 0.25 * (1.0 - z * cs + w2),
                0.25 * (1.0 - z * cs - w2)};
  p.radius = std::sqrt(x * x + 4.0 * w * w);
  return p;
}

double entropy_B(const CanonicalXState &s, EntropyUnit unit) { return from_nats(entropy_B_nats(s), unit); }

double entropy_AB(const CanonicalXState &s, EntropyUnit unit) { return from_nats(block_entropy_nats(s), unit); }

double conditional_entropy(const CanonicalXState &s, double theta, EntropyUnit unit) {
  if (!(theta >= 0.0 && theta <= kHalfPi))
    throw Error(ErrorCode::invalid_argument, "measurement angle must lie in [0, pi/2]", theta);
  return from_nats(std::max(conditional_entropy_nats(s, theta), 0.0), unit);
}

double q_at(const CanonicalXState &s, double theta, EntropyUnit unit) {
  if (!(theta >= 0.0 && theta <= kHalfPi))
    throw Error(ErrorCode::invalid_argument, "measurement angle must lie in [0, pi/2]", theta);
  return from_nats(entropy_B_nats(s) - block_entropy_nats(s) + conditional_entropy_nats(s, theta), unit);
}

double q0(const CanonicalXState &s, EntropyUnit unit) { return from_nats(q0_nats(s), unit); }

double q_pi2(const CanonicalXState &s, EntropyUnit unit) { return from_nats(q_pi2_nats(s), unit); }

Curvature second_derivative_at_0(const CanonicalXState &s) {
  const double a = s.a, b = s.b, c = s.c, d = s.d;
  constexpr double kFloor = 1e-14;
  if (std::min({a, b, c, d}) <= kFloor) return finite_difference_at(s, 0.0);
  const double w = s.u + s.v;
  const double value = 0.25 * (a - b + c - d) * (2.0 * std::log((b + d) / (a + c)) + std::log(a * c / (b * d))) +
                       0.25 * (a - b - c + d) * std::log(a * d / (b * c)) -
                       0.5 * w * w * (log_ratio_over_difference(a, c) + log_ratio_over_difference(b, d));
  return {value, true};
}

Curvature second_derivative_at_pi2(const CanonicalXState &s) {
  const double z = s.a - s.b + s.c - s.d;
  const double x = s.a + s.b - s.c - s.d;
  const double t = s.a - s.b - s.c + s.d;
  const double w = s.u + s.v;
  const double r = std::sqrt(x * x + 4.0 * w * w);
  if (r < 1e-6 || 1.0 - r < 1e-9) return finite_difference_at(s, kHalfPi);
  const double mix = x * t / r;
  const double value = z * z - (z + mix) * (z + mix) / (2.0 * (1.0 + r)) - (z - mix) * (z - mix) / (2.0 * (1.0 - r)) +
                       (t * t * (1.0 - x * x / (r * r)) - 4.0 * w * w) * std::log((1.0 - r) / (1.0 + r)) / (2.0 * r);
  return {value, true};
}

DiscordResult discord(const CanonicalXState &s, EntropyUnit unit, const DiscordOptions &opts) {
  const double base = entropy_B_nats(s) - block_entropy_nats(s);
  auto q_of = [&](double theta) { return base + conditional_entropy_nats(s, theta); };

  const double end0 = q0_nats(s);
  const double end1 = q_pi2_nats(s);

  const int n = std::max(opts.grid_points, 1);
  const double step = kHalfPi / (n + 1);
  std::vector<double> grid(n + 2);
  grid.front() = end0;
  grid.back() = end1;
  for (int k = 1; k <= n; ++k) grid[k] = q_of(k * step);

  std::vector<std::pair<double, double>> brackets;
  for (int k = 1; k <= n; ++k)
    if (grid[k] < grid[k - 1] && grid[k] <= grid[k + 1]) brackets.emplace_back((k - 1) * step, (k + 1) * step);
  // A minimum that has only just split off an endpoint can sit inside the
  // first grid cell.
  if (second_derivative_at_0(s).value < 0.0) brackets.emplace_back(0.0, 2.0 * step);
  if (second_derivative_at_pi2(s).value < 0.0) brackets.emplace_back(kHalfPi - 2.0 * step, kHalfPi);

  std::optional<detail::Minimum> interior;
  for (const auto &[lo, hi] : brackets) {
    const auto m = detail::golden_section(q_of, lo, hi, opts.refine_tol);
    if (m.x <= 0.0 || m.x >= kHalfPi) continue;
    if (!interior || m.fx < interior->fx) interior = m;
  }

  DiscordResult out;
  out.unit = unit;
  out.q0 = from_nats(end0, unit);
  out.q_pi2 = from_nats(end1, unit);
  double best = end0;
  out.branch = Branch::q0;
  out.theta_opt = 0.0;
  if (end1 < end0) {
    best = end1;
    out.branch = Branch::q_pi2;
    out.theta_opt = kHalfPi;
  }
  if (interior) {
    out.q_theta = from_nats(interior->fx, unit);
    if (interior->fx < best - kTieTolerance) {
      best = interior->fx;
      out.branch = Branch::q_theta;
      out.theta_opt = interior->x;
    }
  }
  out.q_value = from_nats(std::max(best, 0.0), unit);
  return out;
}

BifurcationReport bifurcation_report(const CanonicalXState &s) {
  BifurcationReport r;
  r.at_0 = second_derivative_at_0(s);
  r.at_pi2 = second_derivative_at_pi2(s);
  const double e0 = q0_nats(s), e1 = q_pi2_nats(s);
  if (e0 < e1 - kTieTolerance)
    r.interior_minimum_possible = r.at_0.value < 0.0;
  else if (e1 < e0 - kTieTolerance)
    r.interior_minimum_possible = r.at_pi2.value < 0.0;
  else
    r.interior_minimum_possible = r.at_0.value < 0.0 || r.at_pi2.value < 0.0;
  return r;
}

}  // namespace qdiscord
