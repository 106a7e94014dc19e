#include "tcss/scheme.hpp"

#include <cctype>
#include <sodium.h>

#include <algorithm>
#include <array>

#include "tcss/codec.hpp"
#include "tcss/digest.hpp"
#include "tcss/error.hpp"

namespace tcss {
namespace {

std::vector<FieldElement> default_identities(const std::shared_ptr<const BigInt>& p, unsigned n) {
  std::vector<FieldElement> ids;
  ids.reserve(n + 1);
  for (unsigned i = 0; i <= n; ++i) ids.emplace_back(BigInt(i + 1), p);
  return ids;
}

FieldElement dot(const std::vector<FieldElement>& v, const Column& g) {
  FieldElement acc(0, g.front().modulus_ptr());
  for (std::size_t k = 0; k < v.size(); ++k) acc += v[k] * g[k];
  return acc;
}

std::string session_digest(const SchemeParams& params, const std::vector<unsigned>& participants,
                           const std::string& nonce) {
  codec::Json doc;
  doc["params_digest"] = params.digest();
  codec::Json list = codec::Json::array();
  for (unsigned i : participants) list.push_back(std::to_string(i));
  doc["participants"] = std::move(list);
  doc["nonce"] = nonce;
  return sha256_hex(codec::canonical(doc));
}

}  // namespace

SchemeParams::SchemeParams(PrimePair primes, GeneratorMatrix generator)
    : primes_(std::move(primes)), generator_(std::move(generator)) {
  if (primes_.p != generator_.p()) throw Error(Errc::InvalidArgument, "generator matrix is over a different field");
  const unsigned n = generator_.n();
  if (generator_.t() < 2 || generator_.t() > n) throw Error(Errc::BadDimensions, "need 2 <= t <= n");
  if (primes_.p <= n * primes_.q * primes_.q)
    throw Error(Errc::Infeasible, "p must exceed n*q^2 for reconstruction to be exact");
  primes_.n_max = std::max(primes_.n_max, n);
  if (!generator_.is_vandermonde() && n <= 16 && !verify_rank(generator_))
    throw Error(Errc::InvalidArgument, "some t columns of the generator matrix are dependent");
  digest_ = sha256_hex(codec::canonical(codec::params_body(primes_, generator_)));
}

SchemeParams SchemeParams::with_default_identities(PrimePair primes, unsigned t, unsigned n) {
  auto p = std::make_shared<const BigInt>(primes.p);
  auto ids = default_identities(p, n);
  return SchemeParams(std::move(primes), build_vandermonde(ids, t));
}

SchemeParams SchemeParams::with_identities(PrimePair primes, unsigned t, std::span<const BigInt> identities) {
  auto p = std::make_shared<const BigInt>(primes.p);
  std::vector<FieldElement> ids;
  ids.reserve(identities.size());
  for (const auto& u : identities) {
    if (u <= 0 || u >= *p) throw Error(Errc::ZeroIdentity, "identity must lie in F_p^*");
    ids.emplace_back(u, p);
  }
  return SchemeParams(std::move(primes), build_vandermonde(ids, t));
}

Dealing share_generation(const BigInt& s, const SchemeParams& params, RandomSource& rng) {
  if (s < 0 || s >= params.q()) throw Error(Errc::SecretOutOfRange, "secret must lie in F_q");
  const auto& g0 = params.generator().column(0);
  const unsigned t = params.t();
  const auto& p = params.p_ptr();

  // Solve for the first coordinate whose g_0 entry is invertible (the first
  // one for Vandermonde matrices); the others are uniform.
  unsigned pivot = 0;
  while (g0[pivot].is_zero()) ++pivot;
  const FieldElement pivot_inv = g0[pivot].inverse();
  const FieldElement target(s, p);

  std::vector<FieldElement> v(t, FieldElement(0, p));
  for (;;) {
    FieldElement rest(0, p);
    for (unsigned k = 0; k < t; ++k) {
      if (k == pivot) continue;
      v[k] = random_field_element(p, rng);
      rest += v[k] * g0[k];
    }
    v[pivot] = (target - rest) * pivot_inv;
    if (std::any_of(v.begin(), v.end(), [](const FieldElement& x) { return !x.is_zero(); })) break;
  }
  return deal_from_vector(params, std::move(v));
}

Dealing deal_from_vector(const SchemeParams& params, std::vector<FieldElement> v) {
  if (v.size() != params.t()) throw Error(Errc::BadDimensions, "v needs t entries");
  const auto& p = params.p_ptr();
  for (auto& x : v) x = FieldElement(x.value(), p);
  if (std::all_of(v.begin(), v.end(), [](const FieldElement& x) { return x.is_zero(); }))
    throw Error(Errc::InvalidArgument, "v must not be the zero vector");

  const auto& g = params.generator();
  FieldElement s = dot(v, g.column(0));
  if (s.value() >= params.q()) throw Error(Errc::SecretOutOfRange, "v . g_0 falls outside F_q");

  Dealing out{DealerSecret{std::move(v), s.value()}, {}};
  out.shares.reserve(params.n());
  for (unsigned i = 1; i <= params.n(); ++i) out.shares.push_back(Share{i, dot(out.secret.v, g.column(i))});
  return out;
}

SessionBinding bind_session(const SchemeParams& params, std::span<const unsigned> participants, std::string nonce) {
  auto sorted = normalize_participants(participants, params.n());
  if (sorted.size() < params.t() || sorted.size() > params.n())
    throw Error(Errc::BadSetSize, "participant set must have between t and n members");
  for (char c : nonce)
    if (!std::isxdigit(static_cast<unsigned char>(c)) || std::isupper(static_cast<unsigned char>(c)))
      throw Error(Errc::InvalidArgument, "nonce must be lowercase hex");
  SessionBinding out{std::move(sorted), std::move(nonce), {}};
  out.digest = session_digest(params, out.participants, out.nonce);
  return out;
}

std::string fresh_nonce(RandomSource& rng) {
  std::array<std::uint8_t, 16> bytes{};
  rng.fill(bytes);
  std::array<char, 33> hex{};
  sodium_bin2hex(hex.data(), hex.size(), bytes.data(), bytes.size());
  return std::string(hex.data(), 32);
}

bool binding_matches(const SchemeParams& params, const SessionBinding& session) {
  return session_digest(params, session.participants, session.nonce) == session.digest;
}

Component construct_component(const Share& share, const SchemeParams& params, const SessionBinding& session,
                              RandomSource& rng) {
  auto coeffs = canonical_coefficients(params.generator(), session.participants);
  return construct_component(share, params, session, coeffs, random_below(params.q(), rng));
}

Component construct_component(const Share& share, const SchemeParams& params, const SessionBinding& session,
                              const CoefficientSet& coeffs, const BigInt& mask) {
  if (session.participants.size() < params.t() || session.participants.size() > params.n())
    throw Error(Errc::BadSetSize, "participant set must have between t and n members");
  if (!std::binary_search(session.participants.begin(), session.participants.end(), share.index))
    throw Error(Errc::NotAParticipant, "shareholder " + std::to_string(share.index) + " is not in the session");
  if (!binding_matches(params, session)) throw Error(Errc::SessionMismatch, "session bound to other parameters");
  if (coeffs.participants != session.participants)
    throw Error(Errc::InvalidArgument, "coefficients computed for another participant set");
  if (mask < 0 || mask >= params.q()) throw Error(Errc::InvalidArgument, "mask must lie in F_q");

  const auto& p = params.p_ptr();
  FieldElement value = coeffs.at(share.index) * FieldElement(share.value.value(), p);
  value += FieldElement(mask * params.q(), p);
  return Component{share.index, std::move(value), session};
}

FieldElement combine_components(std::span<const Component> components, const SchemeParams& params) {
  if (components.empty()) throw Error(Errc::MissingComponent, "no components");
  const SessionBinding& session = components.front().session;
  for (const auto& c : components)
    if (c.session.digest != session.digest || c.session != session)
      throw Error(Errc::SessionMismatch, "components from different sessions");
  if (!binding_matches(params, session)) throw Error(Errc::SessionMismatch, "session bound to other parameters");

  std::vector<unsigned> seen;
  seen.reserve(components.size());
  FieldElement sum(0, params.p_ptr());
  for (const auto& c : components) {
    if (!std::binary_search(session.participants.begin(), session.participants.end(), c.index))
      throw Error(Errc::NotAParticipant, "component from non-member " + std::to_string(c.index));
    if (std::find(seen.begin(), seen.end(), c.index) != seen.end())
      throw Error(Errc::DuplicateIndex, "two components for index " + std::to_string(c.index));
    seen.push_back(c.index);
    if (c.value.modulus() != params.p()) throw Error(Errc::InvalidArgument, "component outside F_p");
    sum += FieldElement(c.value.value(), params.p_ptr());
  }
  if (seen.size() != session.participants.size())
    throw Error(Errc::MissingComponent, std::to_string(session.participants.size() - seen.size()) +
                                            " component(s) missing; every participant must contribute");
  return sum;
}

BigInt reconstruct(std::span<const Component> components, const SchemeParams& params) {
  BigInt s = combine_components(components, params).value();
  mpz_mod(s.get_mpz_t(), s.get_mpz_t(), params.q().get_mpz_t());
  return s;
}

}  // namespace tcss
