#pragma once

#include <stdexcept>
#include <string>

namespace wmark {

/// Broad failure classes; the CLI maps them onto process exit codes.
enum class ErrorKind {
  InvalidArgument,  // parameter outside its contract (exit 1)
  Geometry,         // image dimensions incompatible with the operation (exit 2)
  Format,           // malformed file contents (exit 2)
  Io,               // filesystem failure (exit 2)
  Internal,         // broken invariant (exit 3)
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace wmark
