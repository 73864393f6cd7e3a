#pragma once

#include <stdexcept>
#include <string>

namespace sattrack {

enum class ErrorKind {
  InvalidArgument,  // precondition violated by caller-supplied values
  Parse,            // malformed input file
  Io,               // file could not be opened or written
  Domain,           // mathematically undefined (e.g. tan at 90 deg)
  Runtime,          // failure while running a computation
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

}  // namespace sattrack
