#include "helpers.hpp"

#include "qdiscord/nanopore.hpp"
#include "qdiscord/oracle.hpp"

#include <doctest.h>

using namespace qdiscord;
using qdtest::max_abs;

TEST_CASE("projectors") {
  for (double theta : {0.0, 0.7, 2.0})
    for (double phi : {0.0, 1.3, 5.0}) {
      const oracle::MeasurementDirection dir{theta, phi};
      CHECK(dir.unit_vector().norm() == doctest::Approx(1.0));
      const Matrix2c p = dir.projector(+1), m = dir.projector(-1);
      CHECK(max_abs(p + m - Matrix2c::Identity()) < 1e-15);
      CHECK(max_abs(p * p - p) < 1e-15);
      CHECK(max_abs(m * m - m) < 1e-15);
    }
}

TEST_CASE("oracle on trivial states") {
  CHECK(oracle::discord(DensityMatrix4::maximally_mixed()).q_value == 0.0);
  Matrix4c bell = Matrix4c::Zero();
  bell(1, 1) = bell(2, 2) = 0.5;
  bell(1, 2) = bell(2, 1) = -0.5;
  const auto r = oracle::discord(DensityMatrix4::validate(bell), EntropyUnit::bits);
  CHECK(r.q_value == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("refinement only lowers the grid value") {
  std::mt19937_64 rng(31);
  for (int k = 0; k < 20; ++k) {
    const auto rho = qdtest::random_density(rng);
    oracle::GridOptions coarse;
    coarse.n_theta = coarse.n_phi = 31;
    coarse.refine = false;
    const double grid = oracle::discord(rho, EntropyUnit::nats, coarse).q_value;
    coarse.refine = true;
    CHECK(oracle::discord(rho, EntropyUnit::nats, coarse).q_value <= grid + 1e-15);
  }
}

TEST_CASE("threaded grid matches the serial one") {
  std::mt19937_64 rng(32);
  const auto rho = qdtest::random_density(rng);
  oracle::GridOptions serial, threaded;
  threaded.threads = 3;
  CHECK(oracle::discord(rho, EntropyUnit::nats, serial).q_value ==
        oracle::discord(rho, EntropyUnit::nats, threaded).q_value);
}

TEST_CASE("chain simulation argument checks") {
  CHECK_THROWS_AS((void)oracle::simulate_chain({13, 1.0, 0.3}), Error);
  try {
    (void)oracle::simulate_chain({13, 1.0, 0.3});
  } catch (const Error &e) {
    CHECK(e.code() == ErrorCode::too_large);
  }
  CHECK_THROWS_AS((void)oracle::simulate_chain({1, 1.0, 0.3}), Error);
  CHECK_THROWS_AS((void)oracle::simulate_chain({4, 1.0, 0.3}, 1, 1), Error);
  CHECK_THROWS_AS((void)oracle::simulate_chain({4, 1.0, 0.3}, 0, 4), Error);
}

TEST_CASE("initial chain state is a product with no discord") {
  const auto rho = oracle::simulate_chain({6, 1.0, 0.0});
  CHECK(std::abs(mutual_information(rho)) <= 1e-12);
  CHECK(oracle::discord(rho).q_value <= 1e-12);
}

TEST_CASE("N=10 chain matches the closed-form pair state") {
  const auto chain = oracle::simulate_chain({10, 1.0, 0.5});
  CHECK(max_abs(chain.matrix() - nanopore::pair_state({10, 1.0, 0.5}).matrix()) <= 1e-12);
}

TEST_CASE("two-spin chain spectrum does not evolve") {
  const auto e0 = oracle::simulate_chain({2, 1.0, 0.0}).eigenvalues();
  for (double t : {0.3, 1.1, 2.5})
    CHECK((oracle::simulate_chain({2, 1.0, t}).eigenvalues() - e0).cwiseAbs().maxCoeff() <= 1e-13);
}

TEST_CASE("dropping the total-spin term changes nothing at N=3") {
  for (double t : {0.2, 0.9, 2.4}) {
    const oracle::ChainParams p{3, 1.0, t};
    CHECK(max_abs(oracle::simulate_chain(p).matrix() - oracle::simulate_chain_full_hamiltonian(p).matrix()) <=
          1e-13);
  }
}

TEST_CASE("property: pair state does not depend on which spins are kept") {
  for (int n = 3; n <= 6; ++n)
    for (double t : {0.4, 1.7}) {
      const oracle::ChainParams p{n, 0.8, t};
      const auto ref = oracle::simulate_chain(p, 0, 1);
      CHECK(max_abs(oracle::simulate_chain(p, 0, 2).matrix() - ref.matrix()) <= 1e-12);
      CHECK(max_abs(oracle::simulate_chain(p, 1, n - 1).matrix() - ref.matrix()) <= 1e-12);
    }
}

TEST_CASE("property: chain pair states are centrosymmetric with the closed-form correlators") {
  std::mt19937_64 rng(33);
  std::uniform_real_distribution<double> time(0.0, kPi), temp(0.1, 3.0);
  std::uniform_int_distribution<int> size(2, 9);
  for (int k = 0; k < 20; ++k) {
    const nanopore::NanoporeParams np{size(rng), temp(rng), time(rng)};
    const auto rho = oracle::simulate_chain({np.n, np.beta, np.alpha_t});
    CHECK(cs_deviation(rho.matrix()) <= 1e-12);
    const auto got = nanopore::correlators_from(bloch_decompose(rho));
    const auto want = nanopore::correlators(np);
    CHECK(std::abs(got.p - want.p) <= 1e-12);
    CHECK(std::abs(got.q - want.q) <= 1e-12);
    CHECK(std::abs(got.r - want.r) <= 1e-12);
    CHECK(std::abs(got.u - want.u) <= 1e-12);
  }
}
