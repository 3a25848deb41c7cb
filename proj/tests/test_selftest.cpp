#include "qdiscord/selftest.hpp"

#include <doctest.h>

using namespace qdiscord;

TEST_CASE("a perturbed correlator is caught") {
  selftest::Options opts;
  opts.prefactors.p *= 1.05;
  const auto r = selftest::run_check(1, opts);
  CHECK(r.status == selftest::Status::fail);
  CHECK(selftest::run_check(1).status == selftest::Status::pass);
}

TEST_CASE("disabling the oracle skips its checks and the report is not ok") {
  selftest::Options opts;
  opts.oracle_enabled = false;
  for (int id : {6, 7, 8}) CHECK(selftest::run_check(id, opts).status == selftest::Status::skipped);
  selftest::Report rep;
  rep.checks.push_back(selftest::run_check(6, opts));
  CHECK_FALSE(rep.ok());
}

TEST_CASE("unknown check id") {
  CHECK_THROWS_AS((void)selftest::run_check(0), Error);
  CHECK_THROWS_AS((void)selftest::run_check(selftest::kCheckCount + 1), Error);
}
