#pragma once

#include <stdexcept>
#include <string>

namespace chabauty {

// Error categories surfaced to the CLI as the "code" field of error objects.
enum class ErrorCode {
  Precondition,
  Parse,
  Resource,
  AmbientMismatch,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

class PreconditionError : public Error {
 public:
  explicit PreconditionError(const std::string& message)
      : Error(ErrorCode::Precondition, message) {}
};

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& message)
      : Error(ErrorCode::Parse, message) {}
};

class ResourceError : public Error {
 public:
  explicit ResourceError(const std::string& message)
      : Error(ErrorCode::Resource, message) {}
};

class AmbientMismatchError : public Error {
 public:
  explicit AmbientMismatchError(const std::string& message = "ambient mismatch")
      : Error(ErrorCode::AmbientMismatch, message) {}
};

}  // namespace chabauty
