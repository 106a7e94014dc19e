#include <gtest/gtest.h>

#include "support.hpp"
#include "tcss/netsim.hpp"

namespace tcss::netsim {
namespace {

struct Fixture {
  SchemeParams params;
  groupauth::TokenIssue issue;
};

Fixture make_fixture(const PrimePair& primes, unsigned t, unsigned n, unsigned long s, RandomSource& rng) {
  auto params = SchemeParams::with_default_identities(primes, t, n);
  auto issue = groupauth::token_generation(BigInt(s), params, rng);
  return {std::move(params), std::move(issue)};
}

std::vector<ParticipantAgent> honest_agents(const Fixture& f, std::initializer_list<unsigned> indices) {
  std::vector<ParticipantAgent> out;
  for (unsigned i : indices) {
    ParticipantAgent a;
    a.index = i;
    a.share = f.issue.tokens[i - 1];
    out.push_back(a);
  }
  return out;
}

TEST(RunSession, AllHonestRecoverTheSecret) {
  SeededRandom rng("netsim-honest");
  const Fixture f = make_fixture(validate_prime_pair(3, 79, 5), 2, 3, 3, rng);
  const auto agents = honest_agents(f, {1, 2, 3});
  for (Mode mode : {Mode::Reconstruction, Mode::Authentication}) {
    SessionConfig config;
    config.mode = mode;
    config.commitment = f.issue.commitment;
    const SessionTranscript tr = run_session(f.params, agents, config, rng);
    EXPECT_EQ(tr.messages.size(), 6u);  // pairwise: 3 senders x 2 peers
    std::optional<BigInt> key;
    for (const auto& o : tr.outcomes) {
      ASSERT_FALSE(o.error) << o.error_message;
      EXPECT_EQ(o.recovered, BigInt(3));
      if (mode == Mode::Authentication) {
        EXPECT_EQ(o.accepted, true);
        if (key) EXPECT_EQ(*key, o.group_key->value());
        key = o.group_key->value();
      }
    }
  }
}

TEST(RunSession, BroadcastSendsOneMessagePerAgent) {
  SeededRandom rng("netsim-broadcast");
  const Fixture f = make_fixture(validate_prime_pair(3, 79, 5), 2, 3, 1, rng);
  SessionConfig config;
  config.topology = Topology::Broadcast;
  const SessionTranscript tr = run_session(f.params, honest_agents(f, {1, 2, 3}), config, rng);
  ASSERT_EQ(tr.messages.size(), 3u);
  EXPECT_EQ(tr.messages[0].receivers, (std::vector<unsigned>{2, 3}));
  for (const auto& o : tr.outcomes) EXPECT_EQ(o.recovered, BigInt(1));
}

TEST(RunSession, ImpersonatorRarelyProducesTheSecret) {
  SeededRandom rng("netsim-ipa");
  const Fixture f = make_fixture(prime_pair_for_q(2, 3), 2, 2, 2, rng);  // p = 19
  int hits = 0;
  const int sessions = 400;
  for (int k = 0; k < sessions; ++k) {
    auto agents = honest_agents(f, {1});
    ParticipantAgent adversary;
    adversary.index = 2;
    adversary.behavior = Behavior::IpaImpersonator;
    adversary.forged_value = BigInt(0);
    agents.push_back(adversary);
    const SessionTranscript tr = run_session(f.params, agents, SessionConfig{}, rng);
    if (tr.outcomes[0].recovered == BigInt(2)) ++hits;
    EXPECT_EQ(adversary_view_extract(tr, 2).size(), 1u);
  }
  // Exact rate for this forgery is far below 7/19; leave room for sampling noise.
  EXPECT_LT(hits, sessions * 7 / 19 + 40);
}

TEST(RunSession, ReplayedComponentCausesSessionMismatch) {
  SeededRandom rng("netsim-replay");
  const Fixture f = make_fixture(validate_prime_pair(3, 79, 5), 2, 3, 4, rng);
  const unsigned all[] = {1, 2, 3};
  const SessionBinding earlier = groupauth::open_session(f.params, all, rng);
  auto agents = honest_agents(f, {1, 2, 3});
  agents[2].behavior = Behavior::Replayer;
  agents[2].replayed = construct_component(f.issue.tokens[2], f.params, earlier, rng);
  for (Mode mode : {Mode::Reconstruction, Mode::Authentication}) {
    SessionConfig config;
    config.mode = mode;
    config.commitment = f.issue.commitment;
    const SessionTranscript tr = run_session(f.params, agents, config, rng);
    for (const auto& o : tr.outcomes) {
      if (o.behavior != Behavior::Honest) continue;
      ASSERT_TRUE(o.error);
      EXPECT_EQ(*o.error, Errc::SessionMismatch);
    }
  }
}

TEST(RunSession, LateMutatorOnlyControlsTheSum) {
  SeededRandom rng("netsim-mutator");
  const Fixture f = make_fixture(validate_prime_pair(3, 79, 5), 2, 3, 3, rng);
  auto agents = honest_agents(f, {1, 2});
  ParticipantAgent m;
  m.index = 3;
  m.behavior = Behavior::Mutator;
  m.ordering = Ordering::Last;
  m.target_sum = 42;
  agents.push_back(m);
  const SessionTranscript tr = run_session(f.params, agents, SessionConfig{}, rng);
  // The mutator's messages come after every honest message.
  EXPECT_EQ(tr.messages.back().sender, 3u);
  for (const auto& o : tr.outcomes) EXPECT_EQ(o.recovered, BigInt(42 % 5));
  EXPECT_EQ(adversary_view_extract(tr, 3).size(), 2u);
}

TEST(RunSession, ConfigErrors) {
  SeededRandom rng("netsim-config");
  const Fixture f = make_fixture(validate_prime_pair(3, 79, 5), 2, 3, 0, rng);
  auto expect_config_error = [&](std::vector<ParticipantAgent> agents, SessionConfig config = {}) {
    try {
      run_session(f.params, agents, config, rng);
      ADD_FAILURE() << "accepted bad configuration";
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), Errc::ConfigError);
    }
  };
  expect_config_error(honest_agents(f, {1, 1}));
  expect_config_error(honest_agents(f, {1}));
  ParticipantAgent a, b;
  a.index = 1;
  a.behavior = Behavior::IpaImpersonator;
  b.index = 2;
  b.behavior = Behavior::IpaImpersonator;
  expect_config_error({a, b});
  SessionConfig auth;
  auth.mode = Mode::Authentication;
  expect_config_error(honest_agents(f, {1, 2}), auth);
  ParticipantAgent missing;
  missing.index = 2;
  auto agents = honest_agents(f, {1});
  agents.push_back(missing);
  expect_config_error(agents);
}

TEST(AdversaryView, CountsAndUnknownAgents) {
  SeededRandom rng("netsim-view");
  const Fixture f = make_fixture(validate_prime_pair(3, 79, 5), 2, 3, 2, rng);
  auto agents = honest_agents(f, {1, 2});
  const SessionTranscript honest = run_session(f.params, agents, SessionConfig{}, rng);
  EXPECT_THROW(adversary_view_extract(honest, 3), Error);
  ParticipantAgent adv;
  adv.index = 3;
  adv.behavior = Behavior::IpaImpersonator;
  agents.push_back(adv);
  const SessionTranscript tr = run_session(f.params, agents, SessionConfig{}, rng);
  EXPECT_EQ(adversary_view_extract(tr, 3).size(), 2u);

  // m = t: the adversary sees t - 1 components.
  auto pair = honest_agents(f, {1});
  pair.push_back(adv);
  const SessionTranscript small = run_session(f.params, pair, SessionConfig{}, rng);
  EXPECT_EQ(adversary_view_extract(small, 3).size(), 1u);
}

TEST(RunSession, DeterministicAcrossSeedsAndThreading) {
  const auto transcript = [](bool parallel) {
    SeededRandom rng("netsim-determinism");
    const Fixture f = make_fixture(validate_prime_pair(3, 79, 5), 2, 3, 3, rng);
    auto agents = honest_agents(f, {1, 2});
    ParticipantAgent adv;
    adv.index = 3;
    adv.behavior = Behavior::Mutator;
    adv.ordering = Ordering::Last;
    agents.push_back(adv);
    SessionConfig config;
    config.parallel = parallel;
    return to_jsonl(run_session(f.params, agents, config, rng));
  };
  const std::string a = transcript(false);
  EXPECT_EQ(a, transcript(false));
  EXPECT_EQ(a, transcript(true));
  EXPECT_EQ(std::count(a.begin(), a.end(), '\n'), 1 + 6 + 3);
}

}  // namespace
}  // namespace tcss::netsim
