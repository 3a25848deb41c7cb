#include "helpers.hpp"

#include "qdiscord/oracle.hpp"
#include "qdiscord/x_canonical.hpp"
#include "qdiscord/x_discord.hpp"

#include <doctest.h>

using namespace qdiscord;

namespace {

CanonicalXState werner(double p) {
  const double outer = (1 - p) / 4, inner = (1 + p) / 4;
  return {outer, inner, inner, outer, 0.0, p / 2, {}};
}

// Known closed form for the Werner family, in bits.
double werner_discord_bits(double p) {
  auto t = [](double x) { return x > 0 ? x * std::log2(x) : 0.0; };
  return t(1 - p) / 4 - t(1 + p) / 2 + t(1 + 3 * p) / 4;
}

double s_extended(const CanonicalXState &s, double theta) {
  const auto w = conditional_weights(s, theta);
  double out = 0.0;
  for (double x : w.outcome) out += xlogx(x);
  for (double x : w.spectral) out -= xlogx(x);
  return out;
}

CanonicalXState random_canonical(std::uint64_t seed) { return canonicalize(sample_random_xstate(seed)); }

}  // namespace

TEST_CASE("trivial and known states") {
  const CanonicalXState mixed;
  CHECK(discord(mixed).q_value == 0.0);

  const CanonicalXState bell{0.5, 0.0, 0.0, 0.5, 0.5, 0.0, {}};
  const auto r = discord(bell, EntropyUnit::bits);
  CHECK(r.q_value == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.branch != Branch::q_theta);

  for (double p : {0.1, 0.35, 0.7, 0.95})
    CHECK(discord(werner(p), EntropyUnit::bits).q_value == doctest::Approx(werner_discord_bits(p)).epsilon(1e-10));
}

TEST_CASE("product X states carry no discord") {
  for (double pa : {0.1, 0.5, 0.8})
    for (double pb : {0.2, 0.6}) {
      const CanonicalXState s{pa * pb, pa * (1 - pb), (1 - pa) * pb, (1 - pa) * (1 - pb), 0.0, 0.0, {}};
      CHECK(std::abs(discord(s).q_value) <= 1e-12);
    }
}

TEST_CASE("measurement angle outside the quarter turn is rejected") {
  const CanonicalXState s = werner(0.5);
  CHECK_THROWS_AS((void)q_at(s, -0.1), Error);
  CHECK_THROWS_AS((void)conditional_entropy(s, 2.0), Error);
  CHECK_NOTHROW((void)q_at(s, kPi / 2));
}

TEST_CASE("weights are probability vectors") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto s = random_canonical(seed);
    for (double theta : {0.0, 0.3, 1.0, kPi / 2}) {
      const auto w = conditional_weights(s, theta);
      CHECK(w.outcome[0] + w.outcome[1] == doctest::Approx(1.0).epsilon(1e-14));
      CHECK(w.spectral[0] + w.spectral[1] + w.spectral[2] + w.spectral[3] == doctest::Approx(1.0).epsilon(1e-14));
      for (double x : w.spectral) {
        CHECK(x >= -1e-15);
        CHECK(x <= 1.0 + 1e-15);
      }
    }
  }
}

TEST_CASE("closed-form endpoints agree with the general theta formula") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto s = random_canonical(seed);
    CHECK(q0(s) == doctest::Approx(q_at(s, 0.0)).epsilon(1e-12));
    CHECK(q_pi2(s) == doctest::Approx(q_at(s, kPi / 2)).epsilon(1e-12));
  }
}

TEST_CASE("interior optimum on a both-curvatures-negative state") {
  int found = 0;
  for (std::uint64_t seed = 0; seed < 40000 && found < 3; ++seed) {
    const auto s = random_canonical(seed);
    const auto rep = bifurcation_report(s);
    if (!(rep.at_0.value < 0 && rep.at_pi2.value < 0)) continue;
    ++found;
    CHECK(rep.interior_minimum_possible);
    const auto r = discord(s);
    CHECK(r.branch == Branch::q_theta);
    CHECK(r.q_value < std::min(r.q0, r.q_pi2));
    CHECK(r.theta_opt > 0.0);
    CHECK(r.theta_opt < kPi / 2);
    CHECK(std::abs(r.q_value - oracle::discord(embed(s)).q_value) <= 2e-6);
  }
  CHECK(found == 3);
}

TEST_CASE("diagonal state curvature signs match a grid scan") {
  const CanonicalXState s{0.5, 0.1, 0.15, 0.25, 0.0, 0.0, {}};
  const double h = 1e-3;
  const auto rep = bifurcation_report(s);
  const double fd0 = 2 * (s_extended(s, h) - s_extended(s, 0)) / (h * h);
  const double fdp = 2 * (s_extended(s, kPi / 2 - h) - s_extended(s, kPi / 2)) / (h * h);
  CHECK((rep.at_0.value < 0) == (fd0 < 0));
  CHECK((rep.at_pi2.value < 0) == (fdp < 0));
}

TEST_CASE("degenerate curvature inputs fall back to flagged finite differences") {
  const CanonicalXState edge{0.5, 0.0, 0.2, 0.3, 0.1, 0.0, {}};
  CHECK_FALSE(second_derivative_at_0(edge).analytic);
  const CanonicalXState zero_radius{0.25, 0.25, 0.25, 0.25, 0.0, 0.0, {}};
  CHECK_FALSE(second_derivative_at_pi2(zero_radius).analytic);
  CHECK(second_derivative_at_0(werner(0.3)).analytic);
}

TEST_CASE("property: min structure of the piecewise formula") {
  for (std::uint64_t seed = 1000; seed < 1500; ++seed) {
    const auto s = random_canonical(seed);
    const auto r = discord(s);
    CHECK(r.q_value >= 0.0);
    CHECK(r.q_value <= std::min(r.q0, r.q_pi2) + 1e-12);
    for (int k = 0; k <= 20; ++k) CHECK(q_at(s, k * kPi / 40) >= r.q_value - 1e-9);
    CHECK(r.q_value <= mutual_information(embed(s)) + 1e-12);
  }
}

TEST_CASE("property: endpoint slopes vanish") {
  const double h = 1e-4;
  for (std::uint64_t seed = 2000; seed < 2200; ++seed) {
    const auto s = random_canonical(seed);
    CHECK(std::abs(s_extended(s, h) - s_extended(s, -h)) / (2 * h) <= 1e-6);
    CHECK(std::abs(s_extended(s, kPi / 2 + h) - s_extended(s, kPi / 2 - h)) / (2 * h) <= 1e-6);
  }
}

TEST_CASE("property: block entropies equal the generic eigensolve") {
  std::mt19937_64 rng(3);
  for (std::uint64_t seed = 3000; seed < 4000; ++seed) {
    const auto s = random_canonical(seed);
    const auto rho = embed(s);
    CHECK(std::abs(entropy_AB(s) - von_neumann_entropy(rho)) <= 1e-11);
    CHECK(std::abs(entropy_B(s) - von_neumann_entropy(partial_trace(rho, Subsystem::B))) <= 1e-11);
  }
}

TEST_CASE("property: piecewise agrees with the measurement oracle") {
  for (std::uint64_t seed = 5000; seed < 5100; ++seed) {
    const auto x = sample_random_xstate(seed);
    CHECK(std::abs(discord(canonicalize(x)).q_value - oracle::discord(embed(x)).q_value) <= 2e-6);
  }
}
