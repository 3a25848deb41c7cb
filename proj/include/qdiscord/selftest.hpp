#pragma once

// Desk-scale verification suite: reproduces the published nanopore numbers
// and cross-checks the closed forms against the brute-force oracles. Each
// check carries its own tolerance and runtime limit.

#include "qdiscord/nanopore.hpp"

#include <cstdint>
#include <string>

namespace qdiscord::selftest {

struct Options {
  std::uint64_t seed = 20140601;
  int threads = 1;
  /// With the oracle disabled the oracle-backed checks report skipped and
  /// the suite as a whole does not pass.
  bool oracle_enabled = true;
  /// Fault injection for mutation testing of the nanopore checks.
  nanopore::CorrelatorPrefactors prefactors{};
};

enum class Status { pass, fail, skipped };
[[nodiscard]] const char *to_string(Status s) noexcept;

struct CheckResult {
  int id = 0;
  std::string name;
  Status status = Status::fail;
  std::string detail;
  double seconds = 0.0;
  double time_limit = 0.0;
};

struct Report {
  std::vector<CheckResult> checks;
  [[nodiscard]] bool ok() const noexcept;
};

inline constexpr int kCheckCount = 10;

/// Runs check `id` (1-based).
[[nodiscard]] CheckResult run_check(int id, const Options &opts = {});
[[nodiscard]] Report run(const Options &opts = {});

}  // namespace qdiscord::selftest
