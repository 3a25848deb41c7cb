#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace qdiscord {

using Complex = std::complex<double>;
using Matrix2c = Eigen::Matrix<Complex, 2, 2>;
using Matrix4c = Eigen::Matrix<Complex, 4, 4>;
using Matrix4d = Eigen::Matrix<double, 4, 4>;
using Vector3d = Eigen::Vector3d;
using Matrix3d = Eigen::Matrix3d;

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kLn2 = 0.693147180559945309417232121458176568;

enum class EntropyUnit { nats, bits };

/// Converts a value in nats to the requested unit.
[[nodiscard]] inline double from_nats(double nats, EntropyUnit unit) noexcept {
  return unit == EntropyUnit::bits ? nats / kLn2 : nats;
}

[[nodiscard]] inline const char *to_string(EntropyUnit unit) noexcept {
  return unit == EntropyUnit::bits ? "bits" : "nats";
}

enum class ErrorCode {
  not_hermitian,
  trace_not_one,
  not_psd,
  not_unitary,
  not_cs,
  not_x,
  invalid_x_state,
  too_large,
  no_sign_change,
  invalid_argument,
};

[[nodiscard]] const char *to_string(ErrorCode code) noexcept;

/// One violated invariant together with the size of the violation.
struct Violation {
  ErrorCode code;
  double magnitude;
};

/// Domain error raised by every module. Validation failures carry the full
/// list of violated invariants; the first entry determines code().
class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string &what, double magnitude = 0.0);
  Error(std::vector<Violation> violations, const std::string &what);

  [[nodiscard]] ErrorCode code() const noexcept { return violations_.front().code; }
  [[nodiscard]] double magnitude() const noexcept { return violations_.front().magnitude; }
  [[nodiscard]] const std::vector<Violation> &violations() const noexcept { return violations_; }

private:
  std::vector<Violation> violations_;
};

}  // namespace qdiscord
