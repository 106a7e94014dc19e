#include "tcss.h"

#include <cstdlib>
#include <cstring>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "tcss/analysis.hpp"
#include "tcss/codec.hpp"
#include "tcss/error.hpp"
#include "tcss/groupauth.hpp"
#include "tcss/netsim.hpp"
#include "tcss/scheme.hpp"

struct tcss_rng {
  std::unique_ptr<tcss::RandomSource> source;
};

struct tcss_params {
  tcss::SchemeParams value;
};

struct tcss_dealing {
  tcss::SchemeParams params;
  tcss::groupauth::TokenIssue issue;
};

namespace {

using tcss::BigInt;
using tcss::Errc;
using tcss::Error;
using tcss::codec::Json;
namespace analysis = tcss::analysis;
namespace netsim = tcss::netsim;

thread_local std::string last_error;

tcss_status status_of(Errc code) { return static_cast<tcss_status>(static_cast<int>(code) + 1); }

template <typename Fn>
tcss_status guarded(Fn&& fn) {
  try {
    fn();
    last_error.clear();
    return TCSS_OK;
  } catch (const Error& e) {
    last_error = e.what();
    return status_of(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return TCSS_E_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return TCSS_E_INTERNAL;
  }
}

void require(const void* ptr, const char* what) {
  if (ptr == nullptr) throw Error(Errc::InvalidArgument, std::string(what) + " is null");
}

char* export_string(const std::string& text) {
  char* out = static_cast<char*>(std::malloc(text.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, text.c_str(), text.size() + 1);
  return out;
}

tcss::RandomSource& source_of(tcss_rng* rng) {
  require(rng, "rng");
  return *rng->source;
}

// ---- request decoding -------------------------------------------------------

const Json* find(const Json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key) || doc.at(key).is_null()) return nullptr;
  return &doc.at(key);
}

std::uint64_t as_u64(const Json& v) {
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_string()) {
    const BigInt b = tcss::parse_decimal(v.get<std::string>());
    if (!b.fits_ulong_p()) throw Error(Errc::TooLarge, "value exceeds 64 bits");
    return b.get_ui();
  }
  throw Error(Errc::ParseError, "expected a non-negative integer");
}

std::uint64_t get_u64(const Json& doc, const char* key) {
  const Json* v = find(doc, key);
  if (v == nullptr) throw Error(Errc::ParseError, std::string("missing field '") + key + "'");
  return as_u64(*v);
}

std::uint64_t get_u64(const Json& doc, const char* key, std::uint64_t fallback) {
  const Json* v = find(doc, key);
  return v ? as_u64(*v) : fallback;
}

unsigned get_unsigned(const Json& doc, const char* key, std::uint64_t fallback) {
  const std::uint64_t v = get_u64(doc, key, fallback);
  if (v > 1'000'000) throw Error(Errc::TooLarge, std::string("field '") + key + "' is too large");
  return static_cast<unsigned>(v);
}

std::vector<std::uint64_t> get_list(const Json& doc, const char* key) {
  std::vector<std::uint64_t> out;
  const Json* v = find(doc, key);
  if (v == nullptr) return out;
  if (!v->is_array()) throw Error(Errc::ParseError, std::string("field '") + key + "' must be a list");
  for (const auto& e : *v) out.push_back(as_u64(e));
  return out;
}

std::string get_text(const Json& doc, const char* key, const std::string& fallback) {
  const Json* v = find(doc, key);
  if (v == nullptr) return fallback;
  if (!v->is_string()) throw Error(Errc::ParseError, std::string("field '") + key + "' must be a string");
  return v->get<std::string>();
}

bool get_flag(const Json& doc, const char* key) {
  const Json* v = find(doc, key);
  if (v == nullptr) return false;
  if (!v->is_boolean()) throw Error(Errc::ParseError, std::string("field '") + key + "' must be a boolean");
  return v->get<bool>();
}

std::vector<tcss::Component> parse_components(const tcss::SchemeParams& params, const char* const* jsons,
                                              std::size_t count) {
  if (count > 0) require(jsons, "component list");
  std::vector<tcss::Component> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    require(jsons[i], "component");
    out.push_back(tcss::codec::component_from_json(tcss::codec::parse(jsons[i]), params));
  }
  return out;
}

// ---- analysis reports -------------------------------------------------------

Json rational(const analysis::Rational& r) {
  Json doc;
  doc["fraction"] = r.get_str();
  doc["decimal"] = r.get_d();
  return doc;
}

Json distribution_json(const analysis::Distribution& d) {
  Json doc;
  doc["support"] = d.support();
  doc["total"] = d.total();
  doc["entropy_bits"] = d.entropy();
  doc["exactly_uniform"] = d.exactly_uniform();
  if (d.support() <= 64) doc["counts"] = d.counts();
  return doc;
}

Json leakage_json(const analysis::LeakageReport& r, const analysis::TinyScheme& scheme) {
  Json doc;
  doc["claim"] = r.claim;
  doc["exact"] = true;
  doc["p"] = r.p;
  doc["q"] = r.q;
  doc["t"] = r.t;
  doc["n"] = scheme.n();
  doc["m"] = r.m;
  doc["observed"] = r.observed;
  doc["correctness_margin"] = scheme.correctness_margin();
  doc["evaluated"] = r.evaluated;
  doc["entropy_of_secret_bits"] = r.entropy_of_secret;
  doc["mutual_information_bits"] = r.mutual_information;
  doc["information_bound_bits"] = r.information_bound;
  doc["information_within_bound"] = r.information_within_bound();
  doc["success_probability"] = rational(r.success_probability);
  doc["worst_posterior"] = rational(r.worst_posterior);
  doc["probability_bound"] = rational(r.probability_bound);
  doc["probability_within_bound"] = r.probability_within_bound();
  doc["worst_posterior_within_bound"] = r.worst_posterior <= r.probability_bound;
  doc["baseline"] = rational(r.baseline);
  doc["secret_determined"] = r.secret_determined;
  if (r.best_forgery) doc["best_forgery"] = *r.best_forgery;
  if (r.adaptive_success) doc["adaptive_success"] = rational(*r.adaptive_success);
  if (r.honest_success) doc["honest_success"] = rational(*r.honest_success);
  if (!r.subsets.empty()) {
    Json list = Json::array();
    for (const auto& s : r.subsets) {
      Json e;
      e["indices"] = s.indices;
      e["mutual_information_bits"] = s.mutual_information;
      e["success_probability"] = rational(s.success_probability);
      list.push_back(std::move(e));
    }
    doc["subsets"] = std::move(list);
  }
  return doc;
}

Json combination_report(const Json& req, const std::string& claim, tcss_rng* rng) {
  const std::uint64_t p = get_u64(req, "p");
  const std::uint64_t q = claim == "lemma2" ? p : get_u64(req, "q");
  const auto a = get_list(req, claim == "lemma2" ? "coeffs" : "a");
  const auto b = claim == "lemma2" ? std::vector<std::uint64_t>{} : get_list(req, "b");
  const std::uint64_t budget = get_u64(req, "budget", analysis::kDefaultBudget);

  Json doc;
  doc["claim"] = claim;
  doc["p"] = p;
  if (claim != "lemma2") doc["q"] = q;
  doc["hypothesis_holds"] = analysis::mixed_combination_hypothesis(a, b, p, q);
  try {
    const auto d = analysis::enumerate_mixed_combination(a, b, p, q, budget);
    doc["exact"] = true;
    doc["distribution"] = distribution_json(d);
  } catch (const Error& e) {
    if (e.code() != Errc::TooLarge) throw;
    if (p > (std::uint64_t{1} << 24)) throw Error(Errc::TooLarge, "field too large for the statistical fallback");
    const std::uint64_t draws = get_u64(req, "draws", std::max<std::uint64_t>(100'000, 20 * p));
    const double alpha = find(req, "alpha") ? find(req, "alpha")->get<double>() : 0.001;
    const auto d = analysis::sample_mixed_combination(a, b, p, q, draws, source_of(rng));
    const auto chi = analysis::chi_square_uniformity(d, alpha);
    doc["exact"] = false;
    doc["method"] = "monte_carlo";
    doc["distribution"] = distribution_json(d);
    Json c;
    c["statistic"] = chi.statistic;
    c["critical"] = chi.critical;
    c["dof"] = chi.dof;
    c["alpha"] = chi.alpha;
    c["pass"] = chi.pass;
    doc["chi_square"] = std::move(c);
  }
  return doc;
}

analysis::TinyScheme tiny_scheme(const Json& req, unsigned default_n) {
  const unsigned t = get_unsigned(req, "t", 2);
  const unsigned n = get_unsigned(req, "n", std::max(default_n, t));
  analysis::TinyScheme scheme =
      analysis::TinyScheme::with_default_identities(get_u64(req, "p"), get_u64(req, "q"), t, n);
  if (const auto ids = get_list(req, "identities"); !ids.empty()) scheme.identities = ids;
  return scheme;
}

Json analyze(const Json& req, tcss_rng* rng) {
  const std::string claim = get_text(req, "claim", "");
  const std::uint64_t budget = get_u64(req, "budget", analysis::kDefaultBudget);
  if (claim == "lemma2" || claim == "corollary1") return combination_report(req, claim, rng);

  if (claim == "theorem2") {
    const unsigned t = get_unsigned(req, "t", 2);
    const analysis::TinyScheme scheme = tiny_scheme(req, t);
    std::vector<unsigned> known;
    if (find(req, "known")) {
      for (auto k : get_list(req, "known")) known.push_back(static_cast<unsigned>(k));
    } else {
      for (unsigned i = 1; i < t; ++i) known.push_back(i);
    }
    return leakage_json(analysis::leakage_below_threshold(scheme, known, budget), scheme);
  }
  if (claim == "theorem3") {
    const unsigned m = get_unsigned(req, "m", get_unsigned(req, "t", 2));
    const analysis::TinyScheme scheme = tiny_scheme(req, m);
    const std::string name = get_text(req, "strategy", "exhaustive");
    analysis::ForgeStrategy strategy;
    if (name == "exhaustive") strategy = analysis::ForgeStrategy::Exhaustive;
    else if (name == "fixed") strategy = analysis::ForgeStrategy::Fixed;
    else if (name == "honest") strategy = analysis::ForgeStrategy::Honest;
    else throw Error(Errc::ParseError, "unknown strategy '" + name + "'");
    return leakage_json(
        analysis::ipa_success_probability(scheme, m, strategy, get_u64(req, "forged_value", 0), budget), scheme);
  }
  if (claim == "theorem4") {
    const unsigned m = get_unsigned(req, "m", get_unsigned(req, "t", 2));
    const analysis::TinyScheme scheme = tiny_scheme(req, m);
    const unsigned j = get_unsigned(req, "j", m - 1);
    return leakage_json(analysis::subset_component_leakage(scheme, m, j, budget), scheme);
  }
  throw Error(Errc::ParseError, "unknown claim '" + claim + "'");
}

// ---- attack simulation ------------------------------------------------------

netsim::Behavior behavior_of(const std::string& name) {
  if (name == "honest") return netsim::Behavior::Honest;
  if (name == "ipa_impersonator" || name == "ipa") return netsim::Behavior::IpaImpersonator;
  if (name == "replayer") return netsim::Behavior::Replayer;
  if (name == "mutator") return netsim::Behavior::Mutator;
  throw Error(Errc::ConfigError, "unknown behavior '" + name + "'");
}

std::pair<std::string, Json> attack(const tcss::SchemeParams& params, const Json& req, tcss::RandomSource& rng) {
  const std::string mode_name = get_text(req, "mode", "reconstruction");
  netsim::SessionConfig config;
  if (mode_name == "reconstruction") config.mode = netsim::Mode::Reconstruction;
  else if (mode_name == "authentication") config.mode = netsim::Mode::Authentication;
  else throw Error(Errc::ConfigError, "unknown mode '" + mode_name + "'");
  const std::string topology = get_text(req, "topology", "pairwise_private");
  if (topology == "broadcast") config.topology = netsim::Topology::Broadcast;
  else if (topology != "pairwise_private") throw Error(Errc::ConfigError, "unknown topology '" + topology + "'");
  config.parallel = get_flag(req, "parallel");

  std::vector<unsigned> participants;
  for (auto i : get_list(req, "participants")) participants.push_back(static_cast<unsigned>(i));
  if (participants.empty())
    for (unsigned i = 1; i <= params.n(); ++i) participants.push_back(i);

  const std::string secret_text = get_text(req, "secret", "");
  tcss::groupauth::TokenIssue issue =
      secret_text.empty() ? tcss::groupauth::token_generation(params, rng)
                          : tcss::groupauth::token_generation(tcss::parse_decimal(secret_text), params, rng);
  config.commitment = issue.commitment;

  std::map<unsigned, netsim::ParticipantAgent> agents;
  for (unsigned i : participants) {
    if (i < 1 || i > params.n()) throw Error(Errc::ConfigError, "participant outside 1..n");
    netsim::ParticipantAgent a;
    a.index = i;
    a.share = issue.tokens[i - 1];
    agents[i] = std::move(a);
  }
  if (const Json* list = find(req, "adversaries")) {
    if (!list->is_array()) throw Error(Errc::ParseError, "adversaries must be a list");
    for (const auto& spec : *list) {
      const unsigned index = get_unsigned(spec, "index", 0);
      auto it = agents.find(index);
      if (it == agents.end()) throw Error(Errc::ConfigError, "adversary index not among the participants");
      netsim::ParticipantAgent& a = it->second;
      a.behavior = behavior_of(get_text(spec, "behavior", "ipa_impersonator"));
      a.ordering = get_text(spec, "ordering", "simultaneous") == "last" ? netsim::Ordering::Last
                                                                        : netsim::Ordering::Simultaneous;
      if (a.behavior == netsim::Behavior::IpaImpersonator || a.behavior == netsim::Behavior::Mutator) a.share.reset();
      if (const Json* v = find(spec, "forged_value")) a.forged_value = tcss::parse_decimal(v->get<std::string>());
      if (const Json* v = find(spec, "target_sum")) a.target_sum = tcss::parse_decimal(v->get<std::string>());
      if (a.behavior == netsim::Behavior::Replayer) {
        // Component captured from an earlier honest session over the same set.
        const tcss::SessionBinding earlier = tcss::groupauth::open_session(params, participants, rng);
        a.replayed = tcss::construct_component(*a.share, params, earlier, rng);
      }
    }
  }

  std::vector<netsim::ParticipantAgent> roster;
  for (auto& [i, a] : agents) roster.push_back(std::move(a));
  const netsim::SessionTranscript transcript = netsim::run_session(params, roster, config, rng);

  Json summary;
  summary["mode"] = mode_name;
  summary["topology"] = topology;
  summary["session_digest"] = transcript.session.digest;
  unsigned honest = 0, recovered = 0, accepted = 0;
  std::map<std::string, unsigned> errors;
  std::vector<std::string> keys;
  Json views = Json::array();
  for (const auto& o : transcript.outcomes) {
    if (o.behavior != netsim::Behavior::Honest) {
      Json v;
      v["index"] = std::to_string(o.index);
      v["behavior"] = netsim::to_string(o.behavior);
      v["honest_components_seen"] = netsim::adversary_view_extract(transcript, o.index).size();
      v["own_guess_correct"] = o.recovered && *o.recovered == issue.retained.s;
      views.push_back(std::move(v));
      continue;
    }
    ++honest;
    if (o.recovered && *o.recovered == issue.retained.s) ++recovered;
    if (o.accepted && *o.accepted) ++accepted;
    if (o.error) ++errors[tcss::to_string(*o.error)];
    if (o.group_key) keys.push_back(tcss::to_decimal(o.group_key->value()));
  }
  summary["honest_agents"] = honest;
  summary["honest_recovered_secret"] = recovered;
  if (config.mode == netsim::Mode::Authentication) {
    summary["honest_accepted"] = accepted;
    summary["group_keys_agree"] = std::adjacent_find(keys.begin(), keys.end(), std::not_equal_to<>()) == keys.end();
  }
  Json err = Json::object();
  for (const auto& [name, count] : errors) err[name] = count;
  summary["honest_errors"] = std::move(err);
  summary["adversaries"] = std::move(views);
  return {netsim::to_jsonl(transcript), std::move(summary)};
}

}  // namespace

extern "C" {

const char* tcss_last_error(void) { return last_error.c_str(); }

const char* tcss_status_name(tcss_status status) {
  if (status == TCSS_OK) return "Ok";
  if (status == TCSS_E_INTERNAL) return "Internal";
  const int code = static_cast<int>(status) - 1;
  if (code < 0 || code > static_cast<int>(Errc::ParseError)) return "Unknown";
  return tcss::to_string(static_cast<Errc>(code));
}

void tcss_free_string(char* text) { std::free(text); }

tcss_status tcss_rng_new(const char* seed, tcss_rng** out) {
  return guarded([&] {
    require(out, "out");
    auto source = seed ? tcss::make_random(std::string_view(seed)) : tcss::make_random(std::nullopt);
    *out = new tcss_rng{std::move(source)};
  });
}

void tcss_rng_free(tcss_rng* rng) { delete rng; }

tcss_status tcss_params_generate(unsigned n, unsigned t, unsigned q_bits, tcss_rng* rng, tcss_params** out) {
  return guarded([&] {
    require(out, "out");
    if (t > n) throw Error(Errc::BadDimensions, "threshold exceeds the number of shareholders");
    tcss::PrimePair primes = tcss::generate_prime_pair(n, q_bits, source_of(rng));
    *out = new tcss_params{tcss::SchemeParams::with_default_identities(std::move(primes), t, n)};
  });
}

tcss_status tcss_params_from_primes(unsigned n, unsigned t, const char* p, const char* q, const char* identities_json,
                                    tcss_params** out) {
  return guarded([&] {
    require(out, "out");
    require(q, "q");
    if (t > n) throw Error(Errc::BadDimensions, "threshold exceeds the number of shareholders");
    const BigInt q_value = tcss::parse_decimal(q);
    tcss::PrimePair primes = p ? tcss::validate_prime_pair(n, tcss::parse_decimal(p), q_value)
                               : tcss::prime_pair_for_q(n, q_value);
    if (identities_json == nullptr) {
      *out = new tcss_params{tcss::SchemeParams::with_default_identities(std::move(primes), t, n)};
      return;
    }
    const Json list = tcss::codec::parse(identities_json);
    if (!list.is_array()) throw Error(Errc::ParseError, "identities must be a JSON list");
    std::vector<BigInt> ids;
    for (const auto& u : list) {
      if (!u.is_string()) throw Error(Errc::ParseError, "identities are decimal strings");
      ids.push_back(tcss::parse_decimal(u.get<std::string>()));
    }
    if (ids.size() != static_cast<std::size_t>(n) + 1) throw Error(Errc::BadDimensions, "need n + 1 identities");
    *out = new tcss_params{tcss::SchemeParams::with_identities(std::move(primes), t, ids)};
  });
}

tcss_status tcss_params_parse(const char* json, tcss_params** out) {
  return guarded([&] {
    require(json, "json");
    require(out, "out");
    *out = new tcss_params{tcss::codec::params_from_json(tcss::codec::parse(json))};
  });
}

tcss_status tcss_params_serialize(const tcss_params* params, char** out_json) {
  return guarded([&] {
    require(params, "params");
    require(out_json, "out_json");
    *out_json = export_string(tcss::codec::canonical(tcss::codec::to_json(params->value)));
  });
}

tcss_status tcss_params_summary(const tcss_params* params, char** out_json) {
  return guarded([&] {
    require(params, "params");
    require(out_json, "out_json");
    Json doc;
    doc["p"] = tcss::to_decimal(params->value.p());
    doc["q"] = tcss::to_decimal(params->value.q());
    doc["n"] = std::to_string(params->value.n());
    doc["t"] = std::to_string(params->value.t());
    doc["digest"] = params->value.digest();
    doc["share_size_regime"] = params->value.in_share_size_regime();
    *out_json = export_string(tcss::codec::canonical(doc));
  });
}

void tcss_params_free(tcss_params* params) { delete params; }

tcss_status tcss_deal(const tcss_params* params, const char* secret, tcss_rng* rng, tcss_dealing** out) {
  return guarded([&] {
    require(params, "params");
    require(out, "out");
    auto issue = secret ? tcss::groupauth::token_generation(tcss::parse_decimal(secret), params->value, source_of(rng))
                        : tcss::groupauth::token_generation(params->value, source_of(rng));
    *out = new tcss_dealing{params->value, std::move(issue)};
  });
}

size_t tcss_dealing_share_count(const tcss_dealing* dealing) { return dealing ? dealing->issue.tokens.size() : 0; }

tcss_status tcss_dealing_share(const tcss_dealing* dealing, unsigned index, char** out_json) {
  return guarded([&] {
    require(dealing, "dealing");
    require(out_json, "out_json");
    if (index < 1 || index > dealing->issue.tokens.size())
      throw Error(Errc::InvalidArgument, "share index outside 1..n");
    *out_json =
        export_string(tcss::codec::canonical(tcss::codec::to_json(dealing->issue.tokens[index - 1], dealing->params)));
  });
}

tcss_status tcss_dealing_commitment(const tcss_dealing* dealing, char** out_json) {
  return guarded([&] {
    require(dealing, "dealing");
    require(out_json, "out_json");
    *out_json = export_string(tcss::codec::canonical(tcss::codec::to_json(dealing->issue.commitment)));
  });
}

void tcss_dealing_free(tcss_dealing* dealing) { delete dealing; }

tcss_status tcss_session_open(const tcss_params* params, const unsigned* participants, size_t count, tcss_rng* rng,
                              char** out_json) {
  return guarded([&] {
    require(params, "params");
    require(out_json, "out_json");
    if (count > 0) require(participants, "participants");
    std::span<const unsigned> set(participants, count);
    const tcss::SessionBinding session = rng ? tcss::groupauth::open_session(params->value, set, *rng->source)
                                             : tcss::bind_session(params->value, set);
    *out_json = export_string(tcss::codec::canonical(tcss::codec::to_json(session)));
  });
}

tcss_status tcss_component_make(const tcss_params* params, const char* share_json, const char* session_json,
                                tcss_rng* rng, char** out_json) {
  return guarded([&] {
    require(params, "params");
    require(share_json, "share_json");
    require(session_json, "session_json");
    require(out_json, "out_json");
    const tcss::Share share = tcss::codec::share_from_json(tcss::codec::parse(share_json), params->value);
    const tcss::SessionBinding session = tcss::codec::session_from_json(tcss::codec::parse(session_json));
    const tcss::Component c = tcss::construct_component(share, params->value, session, source_of(rng));
    *out_json = export_string(tcss::codec::canonical(tcss::codec::to_json(c)));
  });
}

tcss_status tcss_reconstruct(const tcss_params* params, const char* const* component_jsons, size_t count,
                             char** out_secret) {
  return guarded([&] {
    require(params, "params");
    require(out_secret, "out_secret");
    const auto components = parse_components(params->value, component_jsons, count);
    *out_secret = export_string(tcss::to_decimal(tcss::reconstruct(components, params->value)));
  });
}

tcss_status tcss_reconstruct_from_shares(const tcss_params* params, const char* const* share_jsons, size_t count,
                                         tcss_rng* rng, char** out_secret) {
  return guarded([&] {
    require(params, "params");
    require(out_secret, "out_secret");
    if (count > 0) require(share_jsons, "share list");
    const tcss::SchemeParams& sp = params->value;
    std::vector<tcss::Share> shares;
    std::vector<unsigned> indices;
    for (std::size_t i = 0; i < count; ++i) {
      require(share_jsons[i], "share");
      shares.push_back(tcss::codec::share_from_json(tcss::codec::parse(share_jsons[i]), sp));
      indices.push_back(shares.back().index);
    }
    tcss::RandomSource& source = source_of(rng);
    const tcss::SessionBinding session = tcss::groupauth::open_session(sp, indices, source);
    const tcss::CoefficientSet coeffs = tcss::canonical_coefficients(sp.generator(), session.participants);
    std::vector<tcss::Component> components;
    components.reserve(shares.size());
    for (const auto& s : shares)
      components.push_back(tcss::construct_component(s, sp, session, coeffs, tcss::random_below(sp.q(), source)));
    *out_secret = export_string(tcss::to_decimal(tcss::reconstruct(components, sp)));
  });
}

tcss_status tcss_authenticate(const tcss_params* params, const char* const* component_jsons, size_t count,
                              const char* commitment_json, char** out_verdict_json, int* accepted) {
  return guarded([&] {
    require(params, "params");
    require(commitment_json, "commitment_json");
    require(out_verdict_json, "out_verdict_json");
    require(accepted, "accepted");
    const auto components = parse_components(params->value, component_jsons, count);
    const auto commitment = tcss::codec::commitment_from_json(tcss::codec::parse(commitment_json));
    const auto verdict = tcss::groupauth::authenticate(components, commitment, params->value);
    *out_verdict_json = export_string(tcss::codec::canonical(tcss::codec::to_json(verdict)));
    *accepted = verdict.accepted ? 1 : 0;
  });
}

tcss_status tcss_attack_run(const tcss_params* params, const char* request_json, tcss_rng* rng,
                            char** out_transcript_jsonl, char** out_summary_json) {
  return guarded([&] {
    require(params, "params");
    require(request_json, "request_json");
    require(out_transcript_jsonl, "out_transcript_jsonl");
    require(out_summary_json, "out_summary_json");
    auto [transcript, summary] = attack(params->value, tcss::codec::parse(request_json), source_of(rng));
    char* t = export_string(transcript);
    try {
      *out_summary_json = export_string(tcss::codec::canonical(summary));
    } catch (...) {
      std::free(t);
      throw;
    }
    *out_transcript_jsonl = t;
  });
}

tcss_status tcss_analyze(const char* request_json, tcss_rng* rng, char** out_report_json) {
  return guarded([&] {
    require(request_json, "request_json");
    require(out_report_json, "out_report_json");
    *out_report_json = export_string(tcss::codec::canonical(analyze(tcss::codec::parse(request_json), rng)));
  });
}

}  // extern "C"
