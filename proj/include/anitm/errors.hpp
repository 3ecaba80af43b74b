#pragma once

#include <stdexcept>
#include <string>

namespace anitm {

// Numeric values double as CLI exit codes.
enum class ErrorCode : int {
  validation = 2,
  overflow = 3,
  io = 4,
  domain = 5,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

struct ValidationError : Error {
  explicit ValidationError(const std::string& what) : Error(ErrorCode::validation, what) {}
};

struct OverflowError : Error {
  explicit OverflowError(const std::string& what) : Error(ErrorCode::overflow, what) {}
};

struct IoError : Error {
  explicit IoError(const std::string& what) : Error(ErrorCode::io, what) {}
};

// Operation undefined at the given input (gradient at the origin, zero profile, ...).
struct DomainError : Error {
  explicit DomainError(const std::string& what) : Error(ErrorCode::domain, what) {}
};

}  // namespace anitm
