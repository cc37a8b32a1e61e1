#pragma once

#include <stdexcept>
#include <string>

namespace ncs {

/// Category of a reported failure, used by callers (and the CLI) to map
/// errors onto exit codes and report fields.
enum class ErrorKind {
  InvalidArgument,   ///< malformed input, bad preset, parse failure
  DomainError,       ///< operation outside its mathematical domain (e.g. 1/0)
  PresentationMismatch,  ///< operands belong to different presentations
  InternalCheckFailed,   ///< a self-validation of computed data failed
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string message)
      : std::runtime_error(std::move(message)), kind_(kind) {}

  [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void raise(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace ncs
