#include <gtest/gtest.h>

#include "support.hpp"
#include "tcss/digest.hpp"
#include "tcss/error.hpp"
#include "tcss/groupauth.hpp"

namespace tcss::groupauth {
namespace {

std::vector<Component> zero_mask_components(const TokenIssue& issue, const SchemeParams& params,
                                            const SessionBinding& session) {
  const CoefficientSet coeffs = canonical_coefficients(params.generator(), session.participants);
  std::vector<Component> out;
  for (unsigned i : session.participants)
    out.push_back(construct_component(issue.tokens[i - 1], params, session, coeffs, BigInt(0)));
  return out;
}

TEST(Digest, KnownAnswer) {
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(TokenGeneration, HandTraceTokensAndCommitment) {
  const auto params = test::small_params();
  const TokenIssue issue = issue_from_dealing(test::hand_dealing(params), params);
  std::vector<unsigned long> tokens;
  for (const auto& t : issue.tokens) tokens.push_back(t.value.value().get_ui());
  EXPECT_EQ(tokens, (std::vector<unsigned long>{4, 5, 6}));
  EXPECT_EQ(issue.commitment.digest, sha256_hex(params.digest() + ":3"));
  EXPECT_EQ(issue.commitment.params_digest, params.digest());
}

TEST(TokenGeneration, CommitmentDependsOnlyOnSecret) {
  const auto params = test::small_params();
  SeededRandom rng("tokens");
  const TokenIssue a = token_generation(BigInt(3), params, rng);
  const TokenIssue b = token_generation(BigInt(3), params, rng);
  EXPECT_EQ(a.commitment, b.commitment);
  EXPECT_NE(a.tokens[0].value, b.tokens[0].value);
}

TEST(Authenticate, HonestHandTraceAcceptsWithKeyThree) {
  const auto params = test::small_params();
  const TokenIssue issue = issue_from_dealing(test::hand_dealing(params), params);
  const unsigned all[] = {1, 2, 3};
  const SessionBinding session = bind_session(params, all);
  const auto comps = zero_mask_components(issue, params, session);
  const AuthVerdict v = authenticate(comps, issue.commitment, params);
  EXPECT_TRUE(v.accepted);
  ASSERT_TRUE(v.group_key);
  EXPECT_EQ(v.group_key->value(), 3);
}

TEST(Authenticate, PerturbedComponentRejected) {
  const auto params = test::small_params();
  const TokenIssue issue = issue_from_dealing(test::hand_dealing(params), params);
  const unsigned all[] = {1, 2, 3};
  const SessionBinding session = bind_session(params, all);
  auto comps = zero_mask_components(issue, params, session);
  comps[2].value += FieldElement(1, params.p_ptr());
  const AuthVerdict v = authenticate(comps, issue.commitment, params);
  EXPECT_FALSE(v.accepted);
  EXPECT_FALSE(v.group_key);
}

TEST(Authenticate, Errors) {
  const auto params = test::small_params();
  const TokenIssue issue = issue_from_dealing(test::hand_dealing(params), params);
  try {
    authenticate(std::vector<Component>{}, issue.commitment, params);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::MissingComponent);
  }
  GroupCommitment foreign = issue.commitment;
  foreign.params_digest = test::small_params(3).digest();
  const unsigned all[] = {1, 2, 3};
  const auto comps = zero_mask_components(issue, params, bind_session(params, all));
  EXPECT_THROW(authenticate(comps, foreign, params), Error);
}

TEST(AuthSession, CollectsExactlyOneComponentPerMember) {
  const auto params = test::small_params();
  SeededRandom rng("auth-session");
  const TokenIssue issue = token_generation(params, rng);
  const unsigned pair[] = {1, 3};
  const SessionBinding session = open_session(params, pair, rng);
  AuthSession collector(params, session, issue.commitment);
  EXPECT_THROW(collector.verdict(), Error);

  const Component c1 = make_auth_component(issue.tokens[0], params, session, rng);
  const Component c3 = make_auth_component(issue.tokens[2], params, session, rng);
  collector.add(c1);
  EXPECT_THROW(collector.add(c1), Error);
  const SessionBinding replay = open_session(params, pair, rng);
  EXPECT_THROW(collector.add(make_auth_component(issue.tokens[2], params, replay, rng)), Error);
  collector.add(c3);
  ASSERT_TRUE(collector.complete());
  const AuthVerdict v = collector.verdict();
  EXPECT_TRUE(v.accepted);
}

// Honest sessions accept and every accepted session yields one key.
TEST(Property, HonestSessionsAlwaysAccept) {
  SeededRandom rng("honest-auth");
  const auto params = SchemeParams::with_default_identities(generate_prime_pair(5, 32, rng), 3, 5);
  for (int trial = 0; trial < 100; ++trial) {
    const TokenIssue issue = token_generation(params, rng);
    std::vector<unsigned> set{1, 2, 3, 4, 5};
    set.resize(3 + trial % 3);
    const SessionBinding session = open_session(params, set, rng);
    std::vector<Component> comps;
    for (unsigned i : set) comps.push_back(make_auth_component(issue.tokens[i - 1], params, session, rng));
    const AuthVerdict v = authenticate(comps, issue.commitment, params);
    ASSERT_TRUE(v.accepted);
    BigInt key = v.group_key->value();
    ASSERT_EQ(BigInt(key % params.q()), issue.retained.s);
  }
}

}  // namespace
}  // namespace tcss::groupauth
