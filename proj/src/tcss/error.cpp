#include "tcss/error.hpp"

namespace tcss {

const char* to_string(Errc code) noexcept {
  switch (code) {
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::Infeasible: return "Infeasible";
    case Errc::ZeroInverse: return "ZeroInverse";
    case Errc::DuplicateIdentity: return "DuplicateIdentity";
    case Errc::ZeroIdentity: return "ZeroIdentity";
    case Errc::BadDimensions: return "BadDimensions";
    case Errc::NotVandermonde: return "NotVandermonde";
    case Errc::TooFew: return "TooFew";
    case Errc::Singular: return "Singular";
    case Errc::ZeroCoefficient: return "ZeroCoefficient";
    case Errc::SecretOutOfRange: return "SecretOutOfRange";
    case Errc::NotAParticipant: return "NotAParticipant";
    case Errc::BadSetSize: return "BadSetSize";
    case Errc::SessionMismatch: return "SessionMismatch";
    case Errc::MissingComponent: return "MissingComponent";
    case Errc::DuplicateIndex: return "DuplicateIndex";
    case Errc::ConfigError: return "ConfigError";
    case Errc::NoSuchAgent: return "NoSuchAgent";
    case Errc::TooLarge: return "TooLarge";
    case Errc::TooSparse: return "TooSparse";
    case Errc::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace tcss
