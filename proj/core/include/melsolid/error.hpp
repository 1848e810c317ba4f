#pragma once

#include <stdexcept>
#include <string>

namespace melsolid {

enum class ErrorCode {
  CoincidentPoints,
  CoincidentLines,
  NotCollinear,
  DegenerateQuadruple,
  SingularHomography,
  TooFewPoints,
  OutOfRange,
  AlreadyTruncated,
  NotPentagon,
  BehindEye,
  AtEye,
  ZeroDirection,
  EmptyMesh,
  IllConditioned,
  TooFewCorrespondences,
  MissingLambda,
  BadAnnotation,
  BadConfig,
  IoError,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace melsolid
