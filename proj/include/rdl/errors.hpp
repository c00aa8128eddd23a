#pragma once

#include <stdexcept>
#include <string>

namespace rdl {

// All library failures carry a stable machine-readable code alongside the
// human-readable message, so callers (and tests) can dispatch on `code`.
class Error : public std::runtime_error {
public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(code + ": " + what), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

private:
  std::string code_;
};

[[noreturn]] inline void fail(const std::string& code, const std::string& what) {
  throw Error(code, what);
}

inline void require(bool ok, const std::string& code, const std::string& what) {
  if (!ok) fail(code, what);
}

}  // namespace rdl
