#pragma once

#include <stdexcept>
#include <string>

namespace tcss {

enum class Errc {
  InvalidArgument,
  Infeasible,
  ZeroInverse,
  DuplicateIdentity,
  ZeroIdentity,
  BadDimensions,
  NotVandermonde,
  TooFew,
  Singular,
  ZeroCoefficient,
  SecretOutOfRange,
  NotAParticipant,
  BadSetSize,
  SessionMismatch,
  MissingComponent,
  DuplicateIndex,
  ConfigError,
  NoSuchAgent,
  TooLarge,
  TooSparse,
  ParseError,
};

const char* to_string(Errc code) noexcept;

// All failures in the library surface as tcss::Error; the C API maps the
// code onto a status value.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace tcss
