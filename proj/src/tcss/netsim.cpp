#include "tcss/netsim.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <mutex>
#include <thread>

#include "tcss/codec.hpp"

namespace tcss::netsim {
namespace {

class MessageBus {
 public:
  explicit MessageBus(std::span<const unsigned> members) {
    for (unsigned i : members) inboxes_[i];
  }

  void post(unsigned sender, std::vector<unsigned> receivers, Component component) {
    std::lock_guard lock(mutex_);
    for (unsigned r : receivers) inboxes_.at(r).push_back(component);
    log_.push_back(Message{0, sender, std::move(receivers), std::move(component)});
  }

  // Snapshot ordered by sender so that results do not depend on thread timing.
  std::vector<Component> inbox(unsigned receiver) const {
    std::lock_guard lock(mutex_);
    std::vector<Component> out = inboxes_.at(receiver);
    std::stable_sort(out.begin(), out.end(), [](const Component& a, const Component& b) { return a.index < b.index; });
    return out;
  }

  // Log entries posted since `from`, ordered by (sender, first receiver).
  void seal_phase(std::size_t from) {
    std::lock_guard lock(mutex_);
    std::sort(log_.begin() + static_cast<std::ptrdiff_t>(from), log_.end(), [](const Message& a, const Message& b) {
      return std::tie(a.sender, a.receivers) < std::tie(b.sender, b.receivers);
    });
  }

  std::size_t size() const {
    std::lock_guard lock(mutex_);
    return log_.size();
  }

  std::vector<Message> take_log() {
    std::lock_guard lock(mutex_);
    for (std::size_t i = 0; i < log_.size(); ++i) log_[i].sequence = i;
    return std::move(log_);
  }

 private:
  mutable std::mutex mutex_;
  std::map<unsigned, std::vector<Component>> inboxes_;
  std::vector<Message> log_;
};

void run_all(std::size_t count, bool parallel, const std::function<void(std::size_t)>& task) {
  if (!parallel) {
    for (std::size_t i = 0; i < count; ++i) task(i);
    return;
  }
  std::vector<std::exception_ptr> errors(count);
  {
    std::vector<std::jthread> threads;
    threads.reserve(count);
    for (std::size_t i = 0; i < count; ++i)
      threads.emplace_back([&, i] {
        try {
          task(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      });
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

void validate(const SchemeParams& params, std::span<const ParticipantAgent> agents, const SessionConfig& config) {
  std::vector<unsigned> indices;
  bool any_honest = false;
  for (const auto& a : agents) {
    indices.push_back(a.index);
    if (a.index < 1 || a.index > params.n())
      throw Error(Errc::ConfigError, "agent index " + std::to_string(a.index) + " outside 1..n");
    switch (a.behavior) {
      case Behavior::Honest:
        any_honest = true;
        if (!a.share || a.share->index != a.index)
          throw Error(Errc::ConfigError, "honest agent " + std::to_string(a.index) + " lacks its share");
        break;
      case Behavior::Replayer:
        if (!a.replayed) throw Error(Errc::ConfigError, "replayer needs a captured component");
        break;
      case Behavior::IpaImpersonator:
        if (a.forged_value && *a.forged_value >= params.p())
          throw Error(Errc::ConfigError, "forged component outside F_p");
        break;
      case Behavior::Mutator:
        break;
    }
  }
  std::sort(indices.begin(), indices.end());
  if (std::adjacent_find(indices.begin(), indices.end()) != indices.end())
    throw Error(Errc::ConfigError, "duplicate agent index");
  if (!any_honest) throw Error(Errc::ConfigError, "session has no honest agent");
  if (agents.size() < params.t()) throw Error(Errc::ConfigError, "fewer than t agents");
  if (config.mode == Mode::Authentication && !config.commitment)
    throw Error(Errc::ConfigError, "authentication needs the published commitment");
}

bool sends_late(const ParticipantAgent& a) { return a.behavior != Behavior::Honest && a.ordering == Ordering::Last; }

std::vector<unsigned> others(std::span<const unsigned> members, unsigned self) {
  std::vector<unsigned> out;
  for (unsigned i : members)
    if (i != self) out.push_back(i);
  return out;
}

AgentOutcome evaluate(const SchemeParams& params, const SessionConfig& config, const SessionBinding& session,
                      const ParticipantAgent& agent, const std::optional<Component>& own,
                      std::vector<Component> received) {
  AgentOutcome out{agent.index, agent.behavior, {}, {}, {}, {}, {}};
  if (own) received.push_back(*own);
  std::sort(received.begin(), received.end(), [](const Component& a, const Component& b) { return a.index < b.index; });
  try {
    if (agent.behavior != Behavior::Honest) {
      // What an adversary computes from everything it holds.
      FieldElement sum(0, params.p_ptr());
      for (const auto& c : received) sum += FieldElement(c.value.value(), params.p_ptr());
      BigInt guess = sum.value();
      mpz_mod(guess.get_mpz_t(), guess.get_mpz_t(), params.q().get_mpz_t());
      out.recovered = std::move(guess);
    } else if (config.mode == Mode::Reconstruction) {
      out.recovered = reconstruct(received, params);
    } else {
      groupauth::AuthSession auth(params, session, *config.commitment);
      for (auto& c : received) auth.add(std::move(c));
      groupauth::AuthVerdict verdict = auth.verdict();
      out.accepted = verdict.accepted;
      if (verdict.accepted) {
        BigInt s = verdict.group_key->value();
        mpz_mod(s.get_mpz_t(), s.get_mpz_t(), params.q().get_mpz_t());
        out.recovered = std::move(s);
        out.group_key = std::move(verdict.group_key);
      }
    }
  } catch (const Error& e) {
    out.error = e.code();
    out.error_message = e.what();
    if (config.mode == Mode::Authentication && agent.behavior == Behavior::Honest) out.accepted = false;
  }
  return out;
}

}  // namespace

SessionTranscript run_session(const SchemeParams& params, std::span<const ParticipantAgent> agents,
                              const SessionConfig& config, RandomSource& rng) {
  validate(params, agents, config);

  std::vector<unsigned> members;
  for (const auto& a : agents) members.push_back(a.index);
  std::sort(members.begin(), members.end());

  SessionTranscript transcript;
  transcript.mode = config.mode;
  transcript.topology = config.topology;
  transcript.session = bind_session(params, members, fresh_nonce(rng));

  // Independent per-agent streams keep parallel runs reproducible.
  std::vector<SeededRandom> streams;
  streams.reserve(agents.size());
  for (std::size_t i = 0; i < agents.size(); ++i) {
    std::array<std::uint8_t, 32> key{};
    rng.fill(key);
    streams.emplace_back(key);
  }

  MessageBus bus(members);
  std::vector<std::optional<Component>> sent(agents.size());
  const SessionBinding& session = transcript.session;

  auto forge = [&](std::size_t k) -> Component {
    const ParticipantAgent& a = agents[k];
    switch (a.behavior) {
      case Behavior::Honest:
        return construct_component(*a.share, params, session, streams[k]);
      case Behavior::IpaImpersonator: {
        FieldElement value = a.forged_value ? FieldElement(*a.forged_value, params.p_ptr())
                                            : random_field_element(params.p_ptr(), streams[k]);
        return Component{a.index, std::move(value), session};
      }
      case Behavior::Replayer:
        return *a.replayed;
      case Behavior::Mutator: {
        FieldElement value(a.target_sum, params.p_ptr());
        for (const auto& seen : bus.inbox(a.index)) value -= FieldElement(seen.value.value(), params.p_ptr());
        return Component{a.index, std::move(value), session};
      }
    }
    throw Error(Errc::ConfigError, "unknown behavior");
  };

  auto emit = [&](std::size_t k) {
    const ParticipantAgent& a = agents[k];
    Component c = forge(k);
    sent[k] = c;
    const auto receivers = others(members, a.index);
    if (config.topology == Topology::Broadcast) {
      bus.post(a.index, receivers, std::move(c));
    } else {
      for (unsigned r : receivers) bus.post(a.index, {r}, c);
    }
  };

  std::vector<std::size_t> early;
  std::vector<std::size_t> late;
  for (std::size_t k = 0; k < agents.size(); ++k) (sends_late(agents[k]) ? late : early).push_back(k);

  run_all(early.size(), config.parallel, [&](std::size_t i) { emit(early[i]); });
  bus.seal_phase(0);
  const std::size_t first_late = bus.size();
  run_all(late.size(), config.parallel, [&](std::size_t i) { emit(late[i]); });
  bus.seal_phase(first_late);

  std::vector<AgentOutcome> outcomes(agents.size());
  run_all(agents.size(), config.parallel, [&](std::size_t k) {
    outcomes[k] = evaluate(params, config, session, agents[k], sent[k], bus.inbox(agents[k].index));
  });
  std::sort(outcomes.begin(), outcomes.end(), [](const AgentOutcome& a, const AgentOutcome& b) { return a.index < b.index; });

  transcript.messages = bus.take_log();
  transcript.outcomes = std::move(outcomes);
  return transcript;
}

std::vector<Component> adversary_view_extract(const SessionTranscript& transcript, unsigned agent) {
  std::map<unsigned, Behavior> behavior;
  for (const auto& o : transcript.outcomes) behavior[o.index] = o.behavior;
  if (!behavior.contains(agent)) throw Error(Errc::NoSuchAgent, "agent " + std::to_string(agent) + " not in session");

  std::vector<Component> out;
  for (const auto& m : transcript.messages) {
    if (behavior.at(m.sender) != Behavior::Honest) continue;
    if (std::find(m.receivers.begin(), m.receivers.end(), agent) != m.receivers.end()) out.push_back(m.component);
  }
  return out;
}

std::string to_string(Behavior behavior) {
  switch (behavior) {
    case Behavior::Honest: return "honest";
    case Behavior::IpaImpersonator: return "ipa_impersonator";
    case Behavior::Replayer: return "replayer";
    case Behavior::Mutator: return "mutator";
  }
  return "unknown";
}

std::string to_string(Mode mode) {
  return mode == Mode::Reconstruction ? "reconstruction" : "authentication";
}

std::string to_jsonl(const SessionTranscript& transcript) {
  using codec::Json;
  std::string out;
  auto line = [&](const Json& doc) { out += codec::canonical(doc) + "\n"; };

  Json header;
  header["event"] = "session";
  header["mode"] = to_string(transcript.mode);
  header["topology"] = transcript.topology == Topology::Broadcast ? "broadcast" : "pairwise_private";
  header["session_binding"] = codec::to_json(transcript.session);
  line(header);

  for (const auto& m : transcript.messages) {
    Json doc;
    doc["event"] = "message";
    doc["sequence"] = m.sequence;
    doc["sender"] = std::to_string(m.sender);
    Json receivers = Json::array();
    for (unsigned r : m.receivers) receivers.push_back(std::to_string(r));
    doc["receivers"] = std::move(receivers);
    doc["component"] = codec::to_json(m.component);
    line(doc);
  }

  for (const auto& o : transcript.outcomes) {
    Json doc;
    doc["event"] = "outcome";
    doc["agent"] = std::to_string(o.index);
    doc["behavior"] = to_string(o.behavior);
    doc["recovered"] = o.recovered ? Json(to_decimal(*o.recovered)) : Json(nullptr);
    doc["accepted"] = o.accepted ? Json(*o.accepted) : Json(nullptr);
    doc["group_key"] = o.group_key ? Json(to_decimal(o.group_key->value())) : Json(nullptr);
    doc["error"] = o.error ? Json(to_string(*o.error)) : Json(nullptr);
    line(doc);
  }
  return out;
}

}  // namespace tcss::netsim
