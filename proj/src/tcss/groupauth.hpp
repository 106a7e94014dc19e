#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tcss/scheme.hpp"

namespace tcss::groupauth {

// Published H(s), domain-separated by the parameter digest.
struct GroupCommitment {
  std::string digest;         // lowercase hex SHA-256
  std::string params_digest;

  bool operator==(const GroupCommitment&) const = default;
};

using Token = Share;

struct TokenIssue {
  GroupCommitment commitment;
  std::vector<Token> tokens;
  // Kept by the group manager only if it wants to re-issue tokens later.
  DealerSecret retained;
};

struct AuthVerdict {
  bool accepted = false;
  std::string recovered_digest;
  std::optional<FieldElement> group_key;  // present iff accepted
};

std::string secret_digest(const BigInt& s, const SchemeParams& params);
GroupCommitment commit(const BigInt& s, const SchemeParams& params);

TokenIssue token_generation(const SchemeParams& params, RandomSource& rng);
TokenIssue token_generation(const BigInt& s, const SchemeParams& params, RandomSource& rng);
TokenIssue issue_from_dealing(Dealing dealing, const SchemeParams& params);

// Participant set plus a fresh nonce so components cannot be replayed into a
// later run.
SessionBinding open_session(const SchemeParams& params, std::span<const unsigned> participants, RandomSource& rng);

Component make_auth_component(const Token& token, const SchemeParams& params, const SessionBinding& session,
                              RandomSource& rng);

// Accepts iff H(s') matches the commitment; the group key is sum c_j mod p.
AuthVerdict authenticate(std::span<const Component> components, const GroupCommitment& commitment,
                         const SchemeParams& params);

// Collects the components of one session. Single writer; the verdict is only
// available once every participant has contributed.
class AuthSession {
 public:
  AuthSession(const SchemeParams& params, SessionBinding session, GroupCommitment commitment);

  void add(Component component);
  bool complete() const noexcept { return components_.size() == session_.participants.size(); }
  std::size_t received() const noexcept { return components_.size(); }
  const SessionBinding& session() const noexcept { return session_; }

  AuthVerdict verdict() const;

 private:
  const SchemeParams* params_;
  SessionBinding session_;
  GroupCommitment commitment_;
  std::vector<Component> components_;
};

}  // namespace tcss::groupauth
