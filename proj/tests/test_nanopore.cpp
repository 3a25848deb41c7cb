#include "helpers.hpp"

#include "qdiscord/nanopore.hpp"
#include "qdiscord/oracle.hpp"
#include "qdiscord/x_discord.hpp"

#include <doctest.h>

using namespace qdiscord;
using namespace qdiscord::nanopore;
using qdtest::max_abs;

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(validate(NanoporeParams{1, 1.0, 0.0}), Error);
  CHECK_THROWS_AS(validate(NanoporeParams{10, std::nan(""), 0.0}), Error);
  CHECK_NOTHROW(validate(NanoporeParams{2, 0.0, 0.0}));
}

TEST_CASE("correlators at the half period") {
  const double t2 = std::pow(std::tanh(0.5), 2);
  const auto even = correlators({10, 1.0, kPi / 2});
  CHECK(std::abs(even.p) < 1e-15);
  CHECK(std::abs(even.u) < 1e-15);
  CHECK(even.q == doctest::Approx(t2 / 4));
  CHECK(std::abs(even.r) < 1e-15);
  const auto odd = correlators({11, 1.0, kPi / 2});
  CHECK(std::abs(odd.q) < 1e-15);
  CHECK(odd.r == doctest::Approx(t2 / 4));
}

TEST_CASE("pair state entries follow from the Bloch form") {
  const NanoporeParams np{10, 1.0, 0.5};
  const auto c = correlators(np);
  const auto rho = pair_state(np).matrix();
  const Complex i(0, 1);
  CHECK(std::abs(rho(0, 1) - (c.p / 2 - i * c.u)) < 1e-15);
  CHECK(std::abs(rho(0, 3) - (c.q - c.r)) < 1e-15);
  CHECK(std::abs(rho(0, 0) - 0.25) < 1e-15);
  CHECK(std::abs(rho(1, 2) - (c.q + c.r)) < 1e-15);

  // Direct Pauli expansion is an independent construction of the same matrix.
  auto ss = [](int a, int b) { return kron(pauli(a), pauli(b)); };
  const Matrix4c expanded = 0.25 * (Matrix4c::Identity() + 2 * c.p * (ss(1, 0) + ss(0, 1)) + 4 * c.q * ss(1, 1) +
                                    4 * c.r * ss(2, 2) + 4 * c.u * (ss(2, 3) + ss(3, 2)));
  CHECK(max_abs(expanded - rho) < 1e-15);
  const auto back = correlators_from(bloch_form(c));
  CHECK(back.p == doctest::Approx(c.p));
  CHECK(back.u == doctest::Approx(c.u));
}

TEST_CASE("two-spin pair spectrum is time independent") {
  const auto e0 = pair_state({2, 1.0, 0.0}).eigenvalues();
  for (int k = 1; k < 20; ++k) {
    const NanoporeParams np{2, 1.0, k * 0.15};
    CHECK((pair_state(np).eigenvalues() - e0).cwiseAbs().maxCoeff() <= 1e-13);
    CHECK(pair_entropy_bits(correlators(np)) == doctest::Approx(von_neumann_entropy(pair_state(np), EntropyUnit::bits)));
  }
}

TEST_CASE("thermodynamic limit") {
  CHECK(std::abs(thermodynamic_limit_discord(1.0) - 0.0083358) <= 1e-7);
  CHECK(thermodynamic_limit_discord(0.0) == 0.0);
  CHECK(std::abs(discord_at({1000, 1.0, kPi / 4}).q_value - thermodynamic_limit_discord(1.0)) <= 1e-4);
}

TEST_CASE("crossings") {
  const auto roots = find_branch_crossings(10, 1.0, 0.0, kPi);
  REQUIRE(roots.size() == 2);
  CHECK(roots[0] == doctest::Approx(0.98486).epsilon(1e-4));
  CHECK(roots[1] == doctest::Approx(2.15673).epsilon(1e-4));
  CHECK(find_branch_crossings(11, 1.0, 0.0, kPi).empty());
  CHECK_THROWS_AS((void)find_branch_crossings(10, 1.0, 1.0, 0.5), Error);
}

TEST_CASE("sweep layout") {
  SweepRange range;
  range.steps = 11;
  const auto recs = sweep(range, 2);
  REQUIRE(recs.size() == 11);
  CHECK(recs.front().alpha_t == 0.0);
  CHECK(recs.back().alpha_t == kPi);
  for (const auto &r : recs) CHECK(r.q == doctest::Approx(std::min(r.q0, r.q_pi2)));
  range.steps = 1;
  CHECK_THROWS_AS((void)sweep(range), Error);
}

TEST_CASE("flicker spectrum") {
  CHECK_THROWS_AS((void)flicker_spectrum(10, 1.0, 100, 4), Error);
  CHECK_THROWS_AS((void)flicker_spectrum(10, 1.0, 16, 8), Error);

  for (const auto &h : flicker_spectrum(10, 0.0, 64, 8)) CHECK(h.amplitude == 0.0);

  const int samples = 256, harmonics = 64;
  const auto spec = flicker_spectrum(10, 1.0, samples, harmonics, 2);
  std::vector<double> values(samples);
  double mean = 0.0, energy = 0.0;
  for (int k = 0; k < samples; ++k) {
    values[k] = discord_at({10, 1.0, kPi * k / samples}).q_value;
    mean += values[k] / samples;
    energy += values[k] * values[k] / samples;
  }
  CHECK(spec[0].amplitude == doctest::Approx(mean).epsilon(1e-12));

  double kept = spec[0].amplitude * spec[0].amplitude, worst = 0.0;
  for (int h = 1; h <= harmonics; ++h) kept += 0.5 * spec[h].amplitude * spec[h].amplitude;
  CHECK(kept <= energy * (1 + 1e-12));
  CHECK(kept >= energy * (1 - 1e-4));
  for (int k = 0; k < samples; ++k) {
    double rec = 0.0;
    for (const auto &h : spec)
      rec += h.cos_coeff * std::cos(2 * h.index * kPi * k / samples) + h.sin_coeff * std::sin(2 * h.index * kPi * k / samples);
    worst = std::max(worst, std::abs(rec - values[k]));
  }
  CHECK(worst <= 1e-4);

  // Q(pi - t) = Q(t), so the spectrum is a pure cosine series.
  for (int n : {10, 11})
    for (const auto &h : flicker_spectrum(n, 1.0, 128, 16)) CHECK(std::abs(h.sin_coeff) <= 1e-12);
}

TEST_CASE("window finder detects a genuine interior window") {
  // Mix a state whose optimum is interior with the maximally mixed state.
  // Take the sampled state whose both endpoint curvatures are most negative.
  CanonicalXState target;
  double depth = 0.0;
  for (std::uint64_t seed = 0; seed < 40000; ++seed) {
    const auto s = canonicalize(sample_random_xstate(seed));
    const auto rep = bifurcation_report(s);
    const double d = -std::max(rep.at_0.value, rep.at_pi2.value);
    if (d > depth) {
      depth = d;
      target = s;
    }
  }
  const bool found = depth > 0.0;
  REQUIRE(found);
  const XFamily family = [&](double lambda) {
    return CanonicalXState{lambda * target.a + (1 - lambda) / 4, lambda * target.b + (1 - lambda) / 4,
                           lambda * target.c + (1 - lambda) / 4, lambda * target.d + (1 - lambda) / 4,
                           lambda * target.u,                     lambda * target.v, {}};
  };
  ScanOptions opts;
  opts.grid_points = 2000;
  const auto windows = find_bifurcation_windows(family, 0.0, 1.0, opts);
  REQUIRE_FALSE(windows.empty());
  const auto &w = windows.back();
  CHECK_FALSE(w.degenerate);
  CHECK(w.hi == doctest::Approx(1.0));
  CHECK(discord(family(0.5 * (w.lo + w.hi))).branch == Branch::q_theta);
}

TEST_CASE("nanopore windows are degenerate") {
  const auto windows = find_bifurcation_windows(10, 1.0, 0.0, kPi);
  REQUIRE(windows.size() == 2);
  for (const auto &w : windows) CHECK(w.degenerate);
}

TEST_CASE("property: pair state is a valid CS state whose discord matches the oracle") {
  for (int n : {3, 10, 25})
    for (double t : {0.3, 1.0, 1.9, 2.8}) {
      const NanoporeParams np{n, 1.0, t};
      const auto rho = pair_state(np);
      CHECK(cs_deviation(rho.matrix()) <= 1e-15);
      CHECK(std::abs(discord_at(np).q_value - oracle::discord(rho, EntropyUnit::bits).q_value) <= 2e-6);
    }
}

TEST_CASE("property: bits branches agree with the general X formulas") {
  for (int n : {2, 5, 10, 11, 40})
    for (int k = 0; k <= 30; ++k) {
      const NanoporeParams np{n, 1.3, k * kPi / 30};
      const auto s = canonical_x_state(np);
      CHECK(std::abs(q0_bits(np) - q0(s) / kLn2) <= 1e-12);
      CHECK(std::abs(q_pi2_bits(np) - q_pi2(s) / kLn2) <= 1e-12);
      CHECK(std::abs(pair_entropy_bits(correlators(np)) - entropy_AB(s, EntropyUnit::bits)) <= 1e-12);
    }
}

TEST_CASE("property: curves are nonnegative, vanish at the ends, and barely depend on N parity") {
  SweepRange even, odd;
  even.steps = odd.steps = 2001;
  odd.n = 11;
  const auto a = sweep(even), b = sweep(odd);
  double gap = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    CHECK(a[k].q >= 0.0);
    gap = std::max(gap, std::abs(a[k].q - b[k].q));
  }
  CHECK(gap < 1e-3);
  CHECK(a.front().q <= 1e-12);
  CHECK(a.back().q <= 1e-12);
  CHECK(b.back().q <= 1e-12);
}
