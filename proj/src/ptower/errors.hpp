#pragma once

#include <stdexcept>
#include <string>

namespace ptw {

// Error taxonomy shared by the C++ core and the C API layer.  Numeric values
// are part of the shared-library ABI; do not reorder.
enum class Status : int {
  kOk = 0,
  kDomainError = 1,
  kNotInvertible = 2,
  kPrecisionExhausted = 3,
  kLevelMismatch = 4,
  kDivergenceDetected = 5,
  kNotPsiZero = 6,
  kCapExceeded = 7,
  kParseError = 8,
  kCheckFailed = 9,
  kInvalidArgument = 10,
  kInternal = 11,
};

const char* status_name(Status s);

class Error : public std::runtime_error {
 public:
  Error(Status code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  Status code() const { return code_; }

 private:
  Status code_;
};

[[noreturn]] inline void fail(Status code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace ptw
