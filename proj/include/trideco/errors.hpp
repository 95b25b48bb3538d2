#pragma once

#include <stdexcept>
#include <string>

namespace trideco {

/// Broad failure class; the CLI maps each one to an exit code.
enum class ErrorKind {
  Config,     // bad user input: exit 2
  Invariant,  // a mathematical invariant failed, i.e. a bug: exit 3
  Budget,     // a size or degree budget was exceeded: exit 4
  Io,         // filesystem trouble: exit 1
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string code, const std::string& what)
      : std::runtime_error(code + ": " + what), kind_(kind), code_(std::move(code)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& code() const noexcept { return code_; }

 private:
  ErrorKind kind_;
  std::string code_;
};

inline Error config_error(std::string code, const std::string& what) {
  return Error(ErrorKind::Config, std::move(code), what);
}
inline Error invariant_error(std::string code, const std::string& what) {
  return Error(ErrorKind::Invariant, std::move(code), what);
}
inline Error budget_error(std::string code, const std::string& what) {
  return Error(ErrorKind::Budget, std::move(code), what);
}

inline int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Config: return 2;
    case ErrorKind::Invariant: return 3;
    case ErrorKind::Budget: return 4;
    case ErrorKind::Io: return 1;
  }
  return 1;
}

}  // namespace trideco
