#pragma once

#include <stdexcept>
#include <string>

namespace uorb {

// Error taxonomy shared by the C API and the CLI exit codes.
enum class errc : int {
  ok = 0,
  invalid_input = 2,   // bad type/rank/prime/vector, malformed request
  resource_limit = 3,  // state-space or branch budget exceeded
  certification = 4,   // a certification or invariant check failed
  internal = 5,        // broken internal invariant (always a bug)
};

class Error : public std::runtime_error {
public:
  Error(errc code, std::string msg) : std::runtime_error(std::move(msg)), code_(code) {}
  errc code() const noexcept { return code_; }

private:
  errc code_;
};

[[noreturn]] inline void fail_invalid(const std::string& msg) { throw Error(errc::invalid_input, msg); }
[[noreturn]] inline void fail_limit(const std::string& msg) { throw Error(errc::resource_limit, msg); }
[[noreturn]] inline void fail_cert(const std::string& msg) { throw Error(errc::certification, msg); }
[[noreturn]] inline void fail_internal(const std::string& msg) { throw Error(errc::internal, msg); }

inline void check_internal(bool ok, const std::string& msg) {
  if (!ok) fail_internal(msg);
}

}  // namespace uorb
