#pragma once

#include <stdexcept>
#include <string>

namespace ppdm {

// Error taxonomy shared by the library, the C API and the CLI. Codes are
// stable: the C API exposes them 1:1 and the CLI maps them to exit codes.
enum class errc {
  invalid_input = 1,
  infeasible_parameters = 2,
  degenerate_class_parameters = 3,
  overconstrained_class = 4,
  ambiguous_or_degenerate = 5,
  degenerate_trajectory_or_room = 6,
  parse_error = 7,
};

inline const char* errc_name(errc c) {
  switch (c) {
    case errc::invalid_input: return "invalid-input";
    case errc::infeasible_parameters: return "InfeasibleParameters";
    case errc::degenerate_class_parameters: return "DegenerateClassParameters";
    case errc::overconstrained_class: return "OverconstrainedClass";
    case errc::ambiguous_or_degenerate: return "AmbiguousOrDegenerate";
    case errc::degenerate_trajectory_or_room: return "DegenerateTrajectoryOrRoom";
    case errc::parse_error: return "parse-error";
  }
  return "unknown";
}

class error : public std::runtime_error {
 public:
  error(errc code, std::string message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message),
        code_(code),
        message_(std::move(message)) {}

  errc code() const { return code_; }
  const std::string& message() const { return message_; }

 private:
  errc code_;
  std::string message_;
};

[[noreturn]] inline void fail(errc code, const std::string& message) {
  throw error(code, message);
}

inline void require(bool ok, errc code, const std::string& message) {
  if (!ok) fail(code, message);
}

}  // namespace ppdm
