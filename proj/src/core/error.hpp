#pragma once

#include <stdexcept>
#include <string>

namespace svf {

enum class ErrorKind {
  Input,         // malformed or out-of-range input data
  Precondition,  // operation called outside its domain
  Unsupported,   // model outside the supported range of an operation
  Resource,      // size caps exceeded
  Consistency,   // input claims a structure it does not have
  Internal       // invariant broken inside the library
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

}  // namespace svf
