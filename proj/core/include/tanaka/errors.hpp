#pragma once

#include <stdexcept>
#include <string>

namespace tanaka {

enum class Errc {
  AmbientMismatch,
  NotADerivation,
  NotGradedSubalgebra,
  NotBracketGenerating,
  IncompatibleBrackets,
  NontrivialIntersection,
  PrerequisiteViolated,
  PreconditionViolated,
  LambdaOutOfRange,
  KappaTooSmall,
  InvalidDocument,
  InvalidArgument,
  InternalInconsistency,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}
  Errc code() const { return code_; }

private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& message) {
  throw Error(code, message);
}

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::AmbientMismatch: return "AmbientMismatch";
    case Errc::NotADerivation: return "NotADerivation";
    case Errc::NotGradedSubalgebra: return "NotGradedSubalgebra";
    case Errc::NotBracketGenerating: return "NotBracketGenerating";
    case Errc::IncompatibleBrackets: return "IncompatibleBrackets";
    case Errc::NontrivialIntersection: return "NontrivialIntersection";
    case Errc::PrerequisiteViolated: return "PrerequisiteViolated";
    case Errc::PreconditionViolated: return "PreconditionViolated";
    case Errc::LambdaOutOfRange: return "LambdaOutOfRange";
    case Errc::KappaTooSmall: return "KappaTooSmall";
    case Errc::InvalidDocument: return "InvalidDocument";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::InternalInconsistency: return "InternalInconsistency";
  }
  return "Error";
}

}  // namespace tanaka
