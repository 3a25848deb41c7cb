#include "qdiscord/selftest.hpp"

#include "qdiscord/cs_x.hpp"
#include "qdiscord/oracle.hpp"

#include <chrono>
#include <random>
#include <sstream>

namespace qdiscord::selftest {

namespace {

constexpr double kHalfPi = kPi / 2.0;

struct Outcome {
  bool passed = false;
  std::string detail;
};

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(8);
  os << x;
  return os.str();
}

Outcome branch_crossings(const Options &o) {
  const auto roots = nanopore::find_branch_crossings(10, 1.0, 0.0, kPi, {}, o.prefactors);
  std::string d = "roots:";
  for (double r : roots) d += " " + fmt(r);
  const bool ok = roots.size() == 2 && std::abs(roots[0] - 0.98486) <= 1e-4 && std::abs(roots[1] - 2.15673) <= 1e-4;
  return {ok, d + " (expected 0.98486 2.15673 +- 1e-4)"};
}

Outcome peak_discord(const Options &o) {
  nanopore::SweepRange range;
  range.n = 10;
  range.steps = 10000;
  range.prefactors = o.prefactors;
  const auto rec = nanopore::sweep(range, o.threads);
  double peak = 0.0;
  for (const auto &r : rec) peak = std::max(peak, r.q);
  return {std::abs(peak - 0.008342) <= 1e-5, "max Q = " + fmt(peak) + " bits (expected 0.008342 +- 1e-5)"};
}

Outcome thermodynamic_limit(const Options &o) {
  const double lim = nanopore::thermodynamic_limit_discord(1.0);
  const double big = nanopore::discord_at({1000, 1.0, kPi / 4.0, o.prefactors}).q_value;
  const bool ok = std::abs(lim - 0.0083358) <= 1e-7 && std::abs(big - lim) <= 1e-4;
  return {ok, "limit = " + fmt(lim) + ", Q(N=1000, pi/4) = " + fmt(big)};
}

Outcome odd_n_branch(const Options &o) {
  constexpr int kPoints = 1000;
  int violations = 0;
  double min_gap = 1.0;
  for (int k = 1; k <= kPoints; ++k) {
    const nanopore::NanoporeParams p{11, 1.0, kPi * k / (kPoints + 1), o.prefactors};
    const double gap = nanopore::q0_bits(p) - nanopore::q_pi2_bits(p);
    min_gap = std::min(min_gap, gap);
    if (!(gap >= 0.0)) ++violations;
  }
  const auto roots = nanopore::find_branch_crossings(11, 1.0, 0.0, kPi, {}, o.prefactors);
  return {violations == 0 && roots.empty(), "violations = " + std::to_string(violations) + ", min(Q0 - Qpi2) = " +
                                                fmt(min_gap) + ", crossings = " + std::to_string(roots.size())};
}

Outcome periodicity(const Options &o) {
  std::mt19937_64 rng(o.seed);
  std::uniform_real_distribution<double> t(0.0, kPi);
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    const double x = t(rng);
    const double a = nanopore::discord_at({10, 1.0, x, o.prefactors}).q_value;
    const double b = nanopore::discord_at({10, 1.0, x + kPi, o.prefactors}).q_value;
    worst = std::max(worst, std::abs(a - b));
  }
  const double at0 = nanopore::discord_at({10, 1.0, 0.0, o.prefactors}).q_value;
  const double atpi = nanopore::discord_at({10, 1.0, kPi, o.prefactors}).q_value;
  const bool ok = worst <= 1e-10 && std::abs(at0) <= 1e-12 && std::abs(atpi) <= 1e-12;
  return {ok, "max |Q(t) - Q(t+pi)| = " + fmt(worst) + ", Q(0) = " + fmt(at0) + ", Q(pi) = " + fmt(atpi)};
}

Outcome chain_oracle(const Options &o) {
  double worst = 0.0, worst_full = 0.0;
  for (int n = 2; n <= 8; ++n)
    for (double beta : {0.2, 1.0, 3.0})
      for (int k = 0; k < 10; ++k) {
        const double t = 0.05 + 0.37 * k;
        const auto chain = oracle::simulate_chain({n, beta, t});
        const auto closed = nanopore::pair_state({n, beta, t, o.prefactors});
        worst = std::max(worst, (chain.matrix() - closed.matrix()).cwiseAbs().maxCoeff());
        if (n <= 4) {
          const auto full = oracle::simulate_chain_full_hamiltonian({n, beta, t});
          worst_full = std::max(worst_full, (full.matrix() - chain.matrix()).cwiseAbs().maxCoeff());
        }
      }
  return {worst <= 1e-12 && worst_full <= 1e-12,
          "max entry deviation = " + fmt(worst) + ", with I^2 term = " + fmt(worst_full)};
}

Outcome oracle_equivalence(const Options &o) {
  double worst = 0.0;
  for (int k = 0; k < 500; ++k) {
    const XState x = sample_random_xstate(o.seed + static_cast<std::uint64_t>(k));
    const auto piecewise = discord(canonicalize(x)).q_value;
    const auto brute = oracle::discord(embed(x), EntropyUnit::nats, {181, 181, true, o.threads}).q_value;
    worst = std::max(worst, std::abs(piecewise - brute));
  }
  int found = 0, bad = 0;
  double worst_interior = 0.0, min_margin = 1.0;
  for (std::uint64_t seed = o.seed + 1000000; found < 5 && seed < o.seed + 3000000; ++seed) {
    const auto s = canonicalize(sample_random_xstate(seed));
    if (!(second_derivative_at_0(s).value < 0.0 && second_derivative_at_pi2(s).value < 0.0)) continue;
    ++found;
    const auto r = discord(s);
    const double margin = std::min(r.q0, r.q_pi2) - r.q_value;
    const double brute = oracle::discord(embed(s), EntropyUnit::nats, {181, 181, true, o.threads}).q_value;
    min_margin = std::min(min_margin, margin);
    worst_interior = std::max(worst_interior, std::abs(r.q_value - brute));
    if (r.branch != Branch::q_theta || !(margin > 0.0) || std::abs(r.q_value - brute) > 2e-6) ++bad;
  }
  const bool ok = worst <= 2e-6 && found >= 5 && bad == 0;
  return {ok, "max |piecewise - oracle| = " + fmt(worst) + " nats; interior states " + std::to_string(found) +
                  ", min margin below endpoints = " + fmt(min_margin) + ", max oracle gap = " + fmt(worst_interior)};
}

Matrix4c random_complex(std::mt19937_64 &rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Matrix4c m;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m(i, j) = Complex(u(rng), u(rng));
  return m;
}

Outcome cs_x_machinery(const Options &o) {
  std::mt19937_64 rng(o.seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double worst_round = 0.0;
  for (int k = 0; k < 1000; ++k) {
    CSMatrix a;
    for (auto &e : a.a) e = Complex(u(rng), u(rng));
    const CSMatrix back = x_to_cs(cs_to_x(a));
    for (int i = 0; i < 8; ++i) worst_round = std::max(worst_round, std::abs(back.a[i] - a.a[i]));
  }
  const Matrix4d h = hadamard2();
  const bool involution = (h * h) == Matrix4d::Identity();

  double worst_discord = 0.0;
  Matrix4c exchange = Matrix4c::Zero();
  for (int i = 0; i < 4; ++i) exchange(i, 3 - i) = 1.0;
  for (int k = 0; k < 50; ++k) {
    const Matrix4c g = random_complex(rng);
    Matrix4c sigma = g * g.adjoint();
    sigma /= sigma.trace();
    const Matrix4c cs = 0.5 * (sigma + exchange * sigma * exchange);
    const auto rho = DensityMatrix4::validate(cs, 1e-12);
    const auto xr = cs_to_x(rho);
    const double before = oracle::discord(rho, EntropyUnit::nats, {181, 181, true, o.threads}).q_value;
    const double after = oracle::discord(xr, EntropyUnit::nats, {181, 181, true, o.threads}).q_value;
    const double piecewise = discord(canonicalize(x_state_from(xr, 1e-12))).q_value;
    worst_discord = std::max({worst_discord, std::abs(before - after), std::abs(before - piecewise)});
  }
  const bool ok = worst_round <= 1e-14 && involution && worst_discord <= 2e-6;
  return {ok, "round trip = " + fmt(worst_round) + ", H2^2 == I exactly: " + (involution ? "yes" : "no") +
                  ", max discord change = " + fmt(worst_discord)};
}

// Finite-difference reference for the endpoint derivatives. The expression
// for S_cond is analytic in cos(theta) and sin^2(theta), so it is evaluated
// symmetrically across the endpoints.
double s_cond(const CanonicalXState &s, double theta) {
  const auto w = conditional_weights(s, theta);
  return -shannon_nats(w.outcome) + shannon_nats(w.spectral);
}

Outcome derivative_checks(const Options &o) {
  constexpr double h = 1e-4;
  int tested = 0, bad = 0;
  double worst_rel = 0.0, worst_slope = 0.0;
  for (std::uint64_t seed = o.seed + 5000000; tested < 200; ++seed) {
    const auto s = canonicalize(sample_random_xstate(seed));
    const double radius = conditional_weights(s, 0.0).radius;
    if (std::min({s.a, s.b, s.c, s.d}) < 0.02 || radius < 0.05 || radius > 0.95) continue;
    const double fd0 = (s_cond(s, h) - 2.0 * s_cond(s, 0.0) + s_cond(s, -h)) / (h * h);
    const double fd1 = (s_cond(s, kHalfPi + h) - 2.0 * s_cond(s, kHalfPi) + s_cond(s, kHalfPi - h)) / (h * h);
    if (std::abs(fd0) < 1e-2 || std::abs(fd1) < 1e-2) continue;
    ++tested;
    const auto an0 = second_derivative_at_0(s), an1 = second_derivative_at_pi2(s);
    const double rel = std::max(std::abs(an0.value - fd0) / std::abs(fd0), std::abs(an1.value - fd1) / std::abs(fd1));
    // Second-order one-sided differences from inside [0, pi/2].
    const double slope0 = (-3.0 * s_cond(s, 0.0) + 4.0 * s_cond(s, h) - s_cond(s, 2.0 * h)) / (2.0 * h);
    const double slope1 =
        (3.0 * s_cond(s, kHalfPi) - 4.0 * s_cond(s, kHalfPi - h) + s_cond(s, kHalfPi - 2.0 * h)) / (2.0 * h);
    worst_rel = std::max(worst_rel, rel);
    worst_slope = std::max({worst_slope, std::abs(slope0), std::abs(slope1)});
    if (!an0.analytic || !an1.analytic || rel > 1e-5 || std::abs(slope0) > 1e-6 || std::abs(slope1) > 1e-6) ++bad;
  }
  return {bad == 0, "states = " + std::to_string(tested) + ", max relative S'' error = " + fmt(worst_rel) +
                        ", max |S'| at endpoints = " + fmt(worst_slope)};
}

Outcome degenerate_windows(const Options &o) {
  auto family = [&](double t) { return nanopore::canonical_x_state({10, 1.0, t, o.prefactors}); };
  const auto windows = nanopore::find_bifurcation_windows(family, 0.0, kPi);
  const auto crossings = nanopore::find_branch_crossings(10, 1.0, 0.0, kPi, {}, o.prefactors);
  bool all_degenerate = true;
  double widest = 0.0;
  for (const auto &w : windows) {
    all_degenerate = all_degenerate && w.degenerate;
    widest = std::max(widest, w.hi - w.lo);
  }
  int covered = 0;
  for (double c : crossings)
    for (const auto &w : windows)
      if (w.lo - 1e-9 <= c && c <= w.hi + 1e-9) {
        ++covered;
        break;
      }
  const bool ok = all_degenerate && covered == static_cast<int>(crossings.size());
  return {ok, std::to_string(windows.size()) + " windows, widest = " + fmt(widest) + ", crossings with a window: " +
                  std::to_string(covered) + "/" + std::to_string(crossings.size())};
}

struct CheckSpec {
  const char *name;
  double time_limit;
  bool needs_oracle;
  Outcome (*fn)(const Options &);
};

const std::array<CheckSpec, kCheckCount> kChecks{{
    {"branch crossings N=10", 1.0, false, branch_crossings},
    {"peak discord N=10", 10.0, false, peak_discord},
    {"thermodynamic limit", 1.0, false, thermodynamic_limit},
    {"odd N branch", 5.0, false, odd_n_branch},
    {"periodicity and zeros", 60.0, false, periodicity},
    {"full-chain oracle", 30.0, true, chain_oracle},
    {"measurement oracle", 300.0, true, oracle_equivalence},
    {"CS-X machinery", 300.0, true, cs_x_machinery},
    {"endpoint derivatives", 60.0, false, derivative_checks},
    {"degenerate windows N=10", 60.0, false, degenerate_windows},
}};

}  // namespace

const char *to_string(Status s) noexcept {
  switch (s) {
  case Status::pass: return "PASS";
  case Status::fail: return "FAIL";
  case Status::skipped: return "SKIP";
  }
  return "?";
}

bool Report::ok() const noexcept {
  if (checks.empty()) return false;
  for (const auto &c : checks)
    if (c.status != Status::pass) return false;
  return true;
}

CheckResult run_check(int id, const Options &opts) {
  if (id < 1 || id > kCheckCount) throw Error(ErrorCode::invalid_argument, "no such check", id);
  const auto &spec = kChecks[static_cast<std::size_t>(id - 1)];
  CheckResult r;
  r.id = id;
  r.name = spec.name;
  r.time_limit = spec.time_limit;
  if (spec.needs_oracle && !opts.oracle_enabled) {
    r.status = Status::skipped;
    r.detail = "oracle disabled";
    return r;
  }
  const auto start = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = spec.fn(opts);
  } catch (const std::exception &e) {
    out = {false, std::string("exception: ") + e.what()};
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  r.detail = out.detail;
  r.status = out.passed && r.seconds <= spec.time_limit ? Status::pass : Status::fail;
  if (out.passed && r.seconds > spec.time_limit) r.detail += " (over time limit)";
  return r;
}

Report run(const Options &opts) {
  Report rep;
  for (int id = 1; id <= kCheckCount; ++id) rep.checks.push_back(run_check(id, opts));
  return rep;
}

}  // namespace qdiscord::selftest
