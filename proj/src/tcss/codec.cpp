#include "tcss/codec.hpp"

#include <limits>

#include "tcss/error.hpp"

namespace tcss::codec {
namespace {

const Json& field(const Json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key)) throw Error(Errc::ParseError, std::string("missing field '") + key + "'");
  return doc.at(key);
}

std::string text(const Json& doc, const char* key) {
  const Json& v = field(doc, key);
  if (!v.is_string()) throw Error(Errc::ParseError, std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

BigInt integer(const Json& doc, const char* key) { return parse_decimal(text(doc, key)); }

BigInt integer(const Json& v) {
  if (!v.is_string()) throw Error(Errc::ParseError, "integers are encoded as decimal strings");
  return parse_decimal(v.get<std::string>());
}

unsigned small(const BigInt& v) {
  if (v > std::numeric_limits<unsigned>::max()) throw Error(Errc::ParseError, "index out of range");
  return static_cast<unsigned>(v.get_ui());
}

unsigned small(const Json& doc, const char* key) { return small(integer(doc, key)); }

Json decimal_list(const std::vector<FieldElement>& values) {
  Json out = Json::array();
  for (const auto& v : values) out.push_back(to_decimal(v.value()));
  return out;
}

}  // namespace

std::string canonical(const Json& doc) { return doc.dump(); }

Json parse(const std::string& input) {
  try {
    return Json::parse(input);
  } catch (const Json::exception& e) {
    throw Error(Errc::ParseError, e.what());
  }
}

Json to_json(const GeneratorMatrix& g) {
  Json doc;
  doc["t"] = std::to_string(g.t());
  doc["n"] = std::to_string(g.n());
  doc["p"] = to_decimal(g.p());
  if (g.identities()) {
    // Columns follow from the identities.
    doc["identities"] = decimal_list(*g.identities());
    doc["columns"] = nullptr;
    return doc;
  }
  doc["identities"] = nullptr;
  Json cols = Json::array();
  for (const auto& col : g.columns())
    for (const auto& e : col) cols.push_back(to_decimal(e.value()));
  doc["columns"] = std::move(cols);
  return doc;
}

GeneratorMatrix generator_from_json(const Json& doc) {
  const unsigned t = small(doc, "t");
  const unsigned n = small(doc, "n");
  auto p = std::make_shared<const BigInt>(integer(doc, "p"));

  const Json& ids = field(doc, "identities");
  const Json& cols = field(doc, "columns");
  if (!ids.is_null()) {
    if (!cols.is_null()) throw Error(Errc::ParseError, "give identities or columns, not both");
    if (!ids.is_array() || ids.size() != static_cast<std::size_t>(n) + 1)
      throw Error(Errc::ParseError, "identity list must hold n+1 entries");
    std::vector<FieldElement> identities;
    for (const auto& u : ids) {
      BigInt value = integer(u);
      if (value >= *p) throw Error(Errc::ParseError, "identity not reduced modulo p");
      identities.emplace_back(std::move(value), p);
    }
    GeneratorMatrix g = build_vandermonde(identities, t);
    if (g.t() != t) throw Error(Errc::ParseError, "threshold mismatch");
    return g;
  }

  if (!cols.is_array() || cols.size() != static_cast<std::size_t>(n + 1) * t)
    throw Error(Errc::ParseError, "column list must hold (n+1)*t entries");
  std::vector<Column> columns(n + 1);
  for (unsigned i = 0; i <= n; ++i) {
    columns[i].reserve(t);
    for (unsigned r = 0; r < t; ++r) {
      BigInt e = integer(cols[static_cast<std::size_t>(i) * t + r]);
      if (e >= *p) throw Error(Errc::ParseError, "matrix entry not reduced modulo p");
      columns[i].emplace_back(std::move(e), p);
    }
  }
  return GeneratorMatrix(t, std::move(columns));
}

Json params_body(const PrimePair& primes, const GeneratorMatrix& g) {
  Json doc;
  doc["p"] = to_decimal(primes.p);
  doc["q"] = to_decimal(primes.q);
  doc["n"] = std::to_string(g.n());
  doc["t"] = std::to_string(g.t());
  doc["generator"] = to_json(g);
  return doc;
}

Json to_json(const SchemeParams& params) {
  Json doc = params_body(params.primes(), params.generator());
  doc["digest"] = params.digest();
  return doc;
}

SchemeParams params_from_json(const Json& doc) {
  const unsigned n = small(doc, "n");
  const unsigned t = small(doc, "t");
  GeneratorMatrix g = generator_from_json(field(doc, "generator"));
  if (g.n() != n || g.t() != t) throw Error(Errc::ParseError, "generator dimensions disagree with n, t");
  PrimePair primes = validate_prime_pair(n, integer(doc, "p"), integer(doc, "q"));
  SchemeParams params(std::move(primes), std::move(g));
  if (doc.contains("digest") && text(doc, "digest") != params.digest())
    throw Error(Errc::ParseError, "parameter digest does not match contents");
  return params;
}

Json to_json(const Share& share, const SchemeParams& params) {
  Json doc;
  doc["index"] = std::to_string(share.index);
  doc["value"] = to_decimal(share.value.value());
  doc["params_digest"] = params.digest();
  return doc;
}

Share share_from_json(const Json& doc, const SchemeParams& params) {
  if (text(doc, "params_digest") != params.digest())
    throw Error(Errc::SessionMismatch, "share was issued under other parameters");
  const unsigned index = small(doc, "index");
  if (index < 1 || index > params.n()) throw Error(Errc::ParseError, "share index outside 1..n");
  BigInt value = integer(doc, "value");
  if (value >= params.p()) throw Error(Errc::ParseError, "share value not reduced modulo p");
  return Share{index, FieldElement(std::move(value), params.p_ptr())};
}

Json to_json(const SessionBinding& session) {
  Json doc;
  Json list = Json::array();
  for (unsigned i : session.participants) list.push_back(std::to_string(i));
  doc["participants"] = std::move(list);
  doc["nonce"] = session.nonce;
  doc["digest"] = session.digest;
  return doc;
}

SessionBinding session_from_json(const Json& doc) {
  SessionBinding out;
  const Json& list = field(doc, "participants");
  if (!list.is_array()) throw Error(Errc::ParseError, "participants must be a list");
  for (const auto& v : list) out.participants.push_back(small(integer(v)));
  out.nonce = text(doc, "nonce");
  out.digest = text(doc, "digest");
  return out;
}

Json to_json(const Component& component) {
  Json doc;
  doc["index"] = std::to_string(component.index);
  doc["value"] = to_decimal(component.value.value());
  doc["session_binding"] = to_json(component.session);
  return doc;
}

Component component_from_json(const Json& doc, const SchemeParams& params) {
  const unsigned index = small(doc, "index");
  BigInt value = integer(doc, "value");
  if (value >= params.p()) throw Error(Errc::ParseError, "component value not reduced modulo p");
  return Component{index, FieldElement(std::move(value), params.p_ptr()),
                   session_from_json(field(doc, "session_binding"))};
}

Json to_json(const groupauth::GroupCommitment& commitment) {
  Json doc;
  doc["hash"] = commitment.digest;
  doc["params_digest"] = commitment.params_digest;
  return doc;
}

groupauth::GroupCommitment commitment_from_json(const Json& doc) {
  return groupauth::GroupCommitment{text(doc, "hash"), text(doc, "params_digest")};
}

Json to_json(const groupauth::AuthVerdict& verdict) {
  Json doc;
  doc["accepted"] = verdict.accepted;
  doc["recovered_digest"] = verdict.recovered_digest;
  doc["group_key"] = verdict.group_key ? Json(to_decimal(verdict.group_key->value())) : Json(nullptr);
  return doc;
}

}  // namespace tcss::codec
