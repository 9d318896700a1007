#pragma once

#include <stdexcept>
#include <string>

namespace mechkit {

// Malformed or out-of-contract user input. The CLI maps this to exit code 1.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A request that is well formed but refused because no valid answer exists
// under the stated assumptions (e.g. EEIC repair on non-uniform marginals).
class RefusalError : public InputError {
 public:
  using InputError::InputError;
};

// An internal invariant was violated. Always a bug; the CLI exits with 2.
class InvariantError : public std::logic_error {
 public:
  explicit InvariantError(const std::string& what, std::string trace = {})
      : std::logic_error(what), trace_(std::move(trace)) {}

  const std::string& trace() const noexcept { return trace_; }

 private:
  std::string trace_;
};

inline void require(bool condition, const std::string& message) {
  if (!condition) throw InputError(message);
}

inline void ensure(bool condition, const std::string& message) {
  if (!condition) throw InvariantError(message);
}

}  // namespace mechkit
