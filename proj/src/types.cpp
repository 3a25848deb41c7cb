#include "qdiscord/types.hpp"

namespace qdiscord {

const char *to_string(ErrorCode code) noexcept {
  switch (code) {
  case ErrorCode::not_hermitian: return "NotHermitian";
  case ErrorCode::trace_not_one: return "TraceNotOne";
  case ErrorCode::not_psd: return "NotPSD";
  case ErrorCode::not_unitary: return "NotUnitary";
  case ErrorCode::not_cs: return "NotCS";
  case ErrorCode::not_x: return "NotX";
  case ErrorCode::invalid_x_state: return "InvalidXState";
  case ErrorCode::too_large: return "TooLarge";
  case ErrorCode::no_sign_change: return "NoSignChange";
  case ErrorCode::invalid_argument: return "InvalidArgument";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string &what, double magnitude)
    : std::runtime_error(what), violations_{{code, magnitude}} {}

Error::Error(std::vector<Violation> violations, const std::string &what)
    : std::runtime_error(what), violations_(std::move(violations)) {
  if (violations_.empty()) violations_.push_back({ErrorCode::invalid_argument, 0.0});
}

}  // namespace qdiscord
