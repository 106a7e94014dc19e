#pragma once

// In-memory simulation of one synchronous component-exchange round between
// honest shareholders and adversarial agents.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tcss/error.hpp"
#include "tcss/groupauth.hpp"
#include "tcss/scheme.hpp"

namespace tcss::netsim {

enum class Behavior {
  Honest,
  IpaImpersonator,  // legal index, no share, forged component
  Replayer,         // resends a component captured in an earlier session
  Mutator,          // picks its component after seeing the others (ordering Last)
};

enum class Mode { Reconstruction, Authentication };
enum class Ordering { Simultaneous, Last };
enum class Topology { PairwisePrivate, Broadcast };

struct ParticipantAgent {
  unsigned index = 0;
  Behavior behavior = Behavior::Honest;
  std::optional<Share> share;            // required for Honest
  std::optional<BigInt> forged_value;    // IpaImpersonator; uniform in F_p when absent
  std::optional<Component> replayed;     // required for Replayer
  BigInt target_sum = 0;                 // Mutator: desired sum of all components mod p
  Ordering ordering = Ordering::Simultaneous;
};

struct SessionConfig {
  Mode mode = Mode::Reconstruction;
  Topology topology = Topology::PairwisePrivate;
  std::optional<groupauth::GroupCommitment> commitment;  // required for Authentication
  bool parallel = false;  // one thread per agent
};

struct Message {
  std::size_t sequence = 0;
  unsigned sender = 0;
  std::vector<unsigned> receivers;
  Component component;
};

struct AgentOutcome {
  unsigned index = 0;
  Behavior behavior = Behavior::Honest;
  std::optional<BigInt> recovered;
  std::optional<bool> accepted;            // Authentication mode only
  std::optional<FieldElement> group_key;   // present iff accepted
  std::optional<Errc> error;
  std::string error_message;
};

struct SessionTranscript {
  Mode mode = Mode::Reconstruction;
  Topology topology = Topology::PairwisePrivate;
  SessionBinding session;
  std::vector<Message> messages;      // delivery log in deterministic order
  std::vector<AgentOutcome> outcomes;  // ascending index
};

// Runs one round. Every agent's outcome depends only on what it received and
// on its own component. Deterministic for a deterministic rng, with or
// without `parallel`.
SessionTranscript run_session(const SchemeParams& params, std::span<const ParticipantAgent> agents,
                              const SessionConfig& config, RandomSource& rng);

// Components from honest senders delivered to `agent`.
std::vector<Component> adversary_view_extract(const SessionTranscript& transcript, unsigned agent);

// One JSON object per line: the session header, every message, every outcome.
std::string to_jsonl(const SessionTranscript& transcript);

std::string to_string(Behavior behavior);
std::string to_string(Mode mode);

}  // namespace tcss::netsim
