#include "tcss/groupauth.hpp"

#include <algorithm>

#include "tcss/digest.hpp"
#include "tcss/error.hpp"

namespace tcss::groupauth {

std::string secret_digest(const BigInt& s, const SchemeParams& params) {
  return sha256_hex(params.digest() + ":" + to_decimal(s));
}

GroupCommitment commit(const BigInt& s, const SchemeParams& params) {
  return GroupCommitment{secret_digest(s, params), params.digest()};
}

TokenIssue issue_from_dealing(Dealing dealing, const SchemeParams& params) {
  GroupCommitment c = commit(dealing.secret.s, params);
  return TokenIssue{std::move(c), std::move(dealing.shares), std::move(dealing.secret)};
}

TokenIssue token_generation(const BigInt& s, const SchemeParams& params, RandomSource& rng) {
  return issue_from_dealing(share_generation(s, params, rng), params);
}

TokenIssue token_generation(const SchemeParams& params, RandomSource& rng) {
  return token_generation(random_below(params.q(), rng), params, rng);
}

SessionBinding open_session(const SchemeParams& params, std::span<const unsigned> participants, RandomSource& rng) {
  return bind_session(params, participants, fresh_nonce(rng));
}

Component make_auth_component(const Token& token, const SchemeParams& params, const SessionBinding& session,
                              RandomSource& rng) {
  return construct_component(token, params, session, rng);
}

AuthVerdict authenticate(std::span<const Component> components, const GroupCommitment& commitment,
                         const SchemeParams& params) {
  if (commitment.params_digest != params.digest())
    throw Error(Errc::InvalidArgument, "commitment was published for other parameters");
  FieldElement key = combine_components(components, params);
  BigInt recovered = key.value();
  mpz_mod(recovered.get_mpz_t(), recovered.get_mpz_t(), params.q().get_mpz_t());

  AuthVerdict verdict;
  verdict.recovered_digest = secret_digest(recovered, params);
  verdict.accepted = verdict.recovered_digest == commitment.digest;
  if (verdict.accepted) verdict.group_key = std::move(key);
  return verdict;
}

AuthSession::AuthSession(const SchemeParams& params, SessionBinding session, GroupCommitment commitment)
    : params_(&params), session_(std::move(session)), commitment_(std::move(commitment)) {
  if (!binding_matches(params, session_)) throw Error(Errc::SessionMismatch, "session bound to other parameters");
  components_.reserve(session_.participants.size());
}

void AuthSession::add(Component component) {
  if (component.session != session_) throw Error(Errc::SessionMismatch, "component belongs to another session");
  if (!std::binary_search(session_.participants.begin(), session_.participants.end(), component.index))
    throw Error(Errc::NotAParticipant, "component from non-member " + std::to_string(component.index));
  for (const auto& c : components_)
    if (c.index == component.index)
      throw Error(Errc::DuplicateIndex, "second component for index " + std::to_string(c.index));
  components_.push_back(std::move(component));
}

AuthVerdict AuthSession::verdict() const {
  if (!complete()) throw Error(Errc::MissingComponent, "session still waiting for components");
  return authenticate(components_, commitment_, *params_);
}

}  // namespace tcss::groupauth
