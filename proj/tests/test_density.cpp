#include "helpers.hpp"

#include <doctest.h>

using namespace qdiscord;
using qdtest::max_abs;

namespace {

bool has_code(const Error &e, ErrorCode c) {
  for (const auto &v : e.violations())
    if (v.code == c) return true;
  return false;
}

Matrix4c bell_phi_plus() {
  Matrix4c m = Matrix4c::Zero();
  m(0, 0) = m(0, 3) = m(3, 0) = m(3, 3) = 0.5;
  return m;
}

}  // namespace

TEST_CASE("validate reports every violated invariant") {
  Matrix4c m = Matrix4c::Zero();
  m(0, 0) = 1.5;
  m(1, 1) = -0.2;
  m(0, 1) = 0.3;
  try {
    (void)DensityMatrix4::validate(m);
    FAIL("expected an exception");
  } catch (const Error &e) {
    CHECK(has_code(e, ErrorCode::not_hermitian));
    CHECK(has_code(e, ErrorCode::trace_not_one));
    CHECK(has_code(e, ErrorCode::not_psd));
    for (const auto &v : e.violations()) CHECK(v.magnitude > 0.0);
    CHECK(std::string(e.what()).find("NotPSD") != std::string::npos);
  }
}

TEST_CASE("tiny negative eigenvalues are clamped, larger ones rejected") {
  Matrix4c m = Matrix4c::Zero();
  m(0, 0) = 1.0 + 5e-13;
  m(1, 1) = -5e-13;
  const auto rho = DensityMatrix4::validate(m);
  CHECK(rho.eigenvalues().minCoeff() >= 0.0);

  m(0, 0) = 1.0 + 1e-6;
  m(1, 1) = -1e-6;
  CHECK_THROWS_AS((void)DensityMatrix4::validate(m), Error);
}

TEST_CASE("qubit validation and Bloch vector") {
  Matrix2c m;
  m << 0.75, Complex(0.1, -0.2), Complex(0.1, 0.2), 0.25;
  const auto rho = DensityMatrix2::validate(m);
  CHECK(rho.bloch_vector()(0) == doctest::Approx(0.2));
  CHECK(rho.bloch_vector()(1) == doctest::Approx(0.4));
  CHECK(rho.bloch_vector()(2) == doctest::Approx(0.5));
  m(0, 0) = 2.0;
  CHECK_THROWS_AS((void)DensityMatrix2::validate(m), Error);
}

TEST_CASE("entropy conventions") {
  CHECK(xlogx(0.0) == 0.0);
  CHECK(von_neumann_entropy(DensityMatrix4::maximally_mixed(), EntropyUnit::bits) == doctest::Approx(2.0));
  const auto bell = DensityMatrix4::validate(bell_phi_plus());
  CHECK(std::abs(von_neumann_entropy(bell)) < 1e-12);
  CHECK(mutual_information(bell, EntropyUnit::bits) == doctest::Approx(2.0));
  CHECK(from_nats(kLn2, EntropyUnit::bits) == doctest::Approx(1.0));
  const auto half = partial_trace(bell, Subsystem::A);
  CHECK(max_abs(half.matrix() - Matrix2c::Identity() * 0.5) < 1e-15);
}

TEST_CASE("partial trace keeps the requested subsystem") {
  Matrix2c ra, rb;
  ra << 0.9, 0.1, 0.1, 0.1;
  rb << 0.3, Complex(0, 0.2), Complex(0, -0.2), 0.7;
  const auto rho = DensityMatrix4::validate(kron(ra, rb));
  CHECK(max_abs(partial_trace(rho, Subsystem::A).matrix() - ra) < 1e-15);
  CHECK(max_abs(partial_trace(rho, Subsystem::B).matrix() - rb) < 1e-15);
  CHECK(std::abs(mutual_information(rho)) <= 1e-12);
}

TEST_CASE("require_unitary and pauli errors") {
  Matrix2c bad = Matrix2c::Identity();
  bad(0, 1) = 0.1;
  CHECK_THROWS_AS(require_unitary(bad), Error);
  CHECK_NOTHROW(require_unitary(pauli(2)));
  CHECK_THROWS_AS((void)pauli(4), Error);
}

TEST_CASE("Bloch decomposition of the identity is trivial") {
  const auto c = bloch_decompose(DensityMatrix4::maximally_mixed());
  CHECK(c.scalar == doctest::Approx(1.0));
  CHECK(c.local_a.norm() < 1e-15);
  CHECK(c.local_b.norm() < 1e-15);
  CHECK(max_abs(c.correlations) < 1e-15);
}

TEST_CASE("property: entropy is invariant under local unitaries") {
  std::mt19937_64 rng(11);
  double worst = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const auto rho = qdtest::random_density(rng);
    const auto moved = conjugate_local(rho, qdtest::random_unitary(rng), qdtest::random_unitary(rng));
    worst = std::max(worst, std::abs(von_neumann_entropy(rho) - von_neumann_entropy(moved)));
  }
  CHECK(worst <= 1e-10);
}

TEST_CASE("property: Bloch compose inverts decompose and marginals match") {
  std::mt19937_64 rng(12);
  for (int k = 0; k < 200; ++k) {
    const auto rho = qdtest::random_density(rng);
    const auto c = bloch_decompose(rho);
    CHECK(c.scalar == doctest::Approx(1.0));
    const auto back = bloch_compose(c);
    CHECK(max_abs(back.matrix() - rho.matrix()) <= 1e-14);
    CHECK((partial_trace(back, Subsystem::A).bloch_vector() - c.local_a).norm() <= 1e-14);
    CHECK((partial_trace(back, Subsystem::B).bloch_vector() - c.local_b).norm() <= 1e-14);
  }
}

TEST_CASE("property: mutual information is nonnegative and subadditivity holds") {
  std::mt19937_64 rng(13);
  for (int k = 0; k < 300; ++k) {
    const auto rho = qdtest::random_density(rng);
    CHECK(mutual_information(rho) >= 0.0);
    const double sa = von_neumann_entropy(partial_trace(rho, Subsystem::A));
    const double sb = von_neumann_entropy(partial_trace(rho, Subsystem::B));
    CHECK(von_neumann_entropy(rho) <= sa + sb + 1e-12);
  }
}
