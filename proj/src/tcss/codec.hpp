#pragma once

// Canonical JSON documents for every object that crosses a process boundary.
// Keys appear in a fixed order, integers are decimal strings and the compact
// dump (no whitespace) is the byte string that gets hashed.

#include <json.hpp>

#include <string>

#include "tcss/groupauth.hpp"
#include "tcss/scheme.hpp"

namespace tcss::codec {

using Json = nlohmann::ordered_json;

std::string canonical(const Json& doc);
Json parse(const std::string& text);

Json to_json(const GeneratorMatrix& g);
GeneratorMatrix generator_from_json(const Json& doc);

// Parameters without the trailing "digest" field; hashed to get the digest.
Json params_body(const PrimePair& primes, const GeneratorMatrix& g);
Json to_json(const SchemeParams& params);
// Validates everything, including the digest when present.
SchemeParams params_from_json(const Json& doc);

Json to_json(const Share& share, const SchemeParams& params);
Share share_from_json(const Json& doc, const SchemeParams& params);

Json to_json(const SessionBinding& session);
SessionBinding session_from_json(const Json& doc);

Json to_json(const Component& component);
Component component_from_json(const Json& doc, const SchemeParams& params);

Json to_json(const groupauth::GroupCommitment& commitment);
groupauth::GroupCommitment commitment_from_json(const Json& doc);

Json to_json(const groupauth::AuthVerdict& verdict);

}  // namespace tcss::codec
