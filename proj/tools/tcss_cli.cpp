// Command-line front end. Talks to the library exclusively through tcss.h.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "tcss.h"

namespace {

using Json = nlohmann::ordered_json;
namespace fs = std::filesystem;

enum Exit { kOk = 0, kRejected = 1, kUsage = 2, kInfeasible = 3 };

// Library failure carrying the status for exit-code mapping.
struct Failure : std::runtime_error {
  tcss_status status;
  Failure(tcss_status s, const std::string& what) : std::runtime_error(what), status(s) {}
};

void check(tcss_status status) {
  if (status != TCSS_OK) throw Failure(status, tcss_last_error());
}

int exit_code_for(tcss_status status) {
  switch (status) {
    case TCSS_OK:
      return kOk;
    case TCSS_E_INFEASIBLE:
    case TCSS_E_BAD_DIMENSIONS:
    case TCSS_E_DUPLICATE_IDENTITY:
    case TCSS_E_ZERO_IDENTITY:
      return kInfeasible;
    case TCSS_E_SESSION_MISMATCH:
    case TCSS_E_MISSING_COMPONENT:
    case TCSS_E_NOT_A_PARTICIPANT:
    case TCSS_E_DUPLICATE_INDEX:
      return kRejected;
    default:
      return kUsage;
  }
}

struct Owned {
  char* ptr = nullptr;
  Owned() = default;
  Owned(const Owned&) = delete;
  Owned& operator=(const Owned&) = delete;
  ~Owned() { tcss_free_string(ptr); }
  std::string str() const { return ptr ? ptr : ""; }
};

struct Rng {
  tcss_rng* handle = nullptr;
  explicit Rng(const std::optional<std::string>& seed) { check(tcss_rng_new(seed ? seed->c_str() : nullptr, &handle)); }
  ~Rng() { tcss_rng_free(handle); }
};

struct Params {
  tcss_params* handle = nullptr;
  Params() = default;
  explicit Params(const std::string& json) { check(tcss_params_parse(json.c_str(), &handle)); }
  ~Params() { tcss_params_free(handle); }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure(TCSS_E_INVALID_ARGUMENT, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  std::string text = ss.str();
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.pop_back();
  return text;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Failure(TCSS_E_INVALID_ARGUMENT, "cannot write " + path);
  out << text;
  if (text.empty() || text.back() != '\n') out << '\n';
}

Json summary_of(const Params& params) {
  Owned s;
  check(tcss_params_summary(params.handle, &s.ptr));
  return Json::parse(s.str());
}

// Prints a report as "key: value" lines; nested objects get dotted keys.
void print_lines(const Json& doc, const std::string& prefix = "") {
  for (const auto& [key, value] : doc.items()) {
    const std::string name = prefix.empty() ? key : prefix + "." + key;
    if (value.is_object() && value.contains("fraction")) {
      std::printf("%s: %s (%.6f)\n", name.c_str(), value["fraction"].get<std::string>().c_str(),
                  value["decimal"].get<double>());
    } else if (value.is_object()) {
      print_lines(value, name);
    } else if (value.is_string()) {
      std::printf("%s: %s\n", name.c_str(), value.get<std::string>().c_str());
    } else {
      std::printf("%s: %s\n", name.c_str(), value.dump().c_str());
    }
  }
}

Json decimal_list(const std::vector<std::string>& items) {
  Json out = Json::array();
  for (const auto& i : items) out.push_back(i);
  return out;
}

// "INDEX:BEHAVIOR[:last][:forged=V][:target=V]"
Json adversary_spec(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
  if (parts.size() < 2) throw Failure(TCSS_E_CONFIG, "adversary spec must look like INDEX:BEHAVIOR");
  Json a;
  a["index"] = parts[0];
  a["behavior"] = parts[1];
  for (std::size_t i = 2; i < parts.size(); ++i) {
    const std::string& opt = parts[i];
    if (opt == "last") a["ordering"] = "last";
    else if (opt.rfind("forged=", 0) == 0) a["forged_value"] = opt.substr(7);
    else if (opt.rfind("target=", 0) == 0) a["target_sum"] = opt.substr(7);
    else throw Failure(TCSS_E_CONFIG, "unknown adversary option '" + opt + "'");
  }
  return a;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Threshold-changeable secret sharing and group authentication"};
  app.require_subcommand(1);
  app.fallthrough();
  std::optional<std::string> seed;
  app.add_option("--seed", seed, "Seed for reproducible randomness")->expected(1);

  // setup
  auto* setup = app.add_subcommand("setup", "Generate or validate public parameters");
  unsigned n = 0, t = 0, q_bits = 0;
  std::optional<std::string> p_text, q_text, identities;
  std::string params_out;
  setup->add_option("--n", n, "Number of shareholders")->required();
  setup->add_option("--t", t, "Initial threshold")->required();
  auto* qb = setup->add_option("--q-bits", q_bits, "Bit length of the secret-space prime");
  auto* qv = setup->add_option("--q", q_text, "Explicit secret-space prime");
  setup->add_option("--p", p_text, "Explicit share-space prime (needs --q)")->needs(qv);
  setup->add_option("--identities", identities, "Comma-separated U_0..U_n (default i+1)");
  setup->add_option("--out", params_out, "Output params file")->required();
  qb->excludes(qv);

  // deal
  auto* deal = app.add_subcommand("deal", "Issue shares/tokens and the public commitment");
  std::string params_in, out_dir;
  std::optional<std::string> secret;
  bool random_secret = false;
  deal->add_option("--params", params_in, "Params file")->required()->check(CLI::ExistingFile);
  auto* so = deal->add_option("--secret", secret, "Secret s in [0, q)");
  deal->add_flag("--random", random_secret, "Draw s uniformly")->excludes(so);
  deal->add_option("--out-dir", out_dir, "Directory for share and commitment files")->required();

  // session
  auto* session_cmd = app.add_subcommand("session", "Open a session over a participant set");
  std::vector<unsigned> participants;
  std::string session_out;
  session_cmd->add_option("--params", params_in, "Params file")->required()->check(CLI::ExistingFile);
  session_cmd->add_option("--participants", participants, "Participant indices")->required()->allow_extra_args(false)->delimiter(',');
  session_cmd->add_option("--out", session_out, "Output session file")->required();

  // component
  auto* component_cmd = app.add_subcommand("component", "Build one participant's component");
  std::string share_in, session_in, component_out;
  component_cmd->add_option("--params", params_in, "Params file")->required()->check(CLI::ExistingFile);
  component_cmd->add_option("--share", share_in, "Share/token file")->required()->check(CLI::ExistingFile);
  component_cmd->add_option("--session", session_in, "Session file")->required()->check(CLI::ExistingFile);
  component_cmd->add_option("--out", component_out, "Output component file")->required();

  // reconstruct
  auto* reconstruct_cmd = app.add_subcommand("reconstruct", "Honest all-in-one reconstruction from share files");
  std::vector<std::string> share_files;
  std::optional<std::string> expect;
  reconstruct_cmd->add_option("--params", params_in, "Params file")->required()->check(CLI::ExistingFile);
  reconstruct_cmd->add_option("--participants", participants, "Participant set (defaults to the share indices)")
      ->allow_extra_args(false)->delimiter(',');
  reconstruct_cmd->add_option("--expect", expect, "Exit 1 unless the recovered secret equals this value");
  reconstruct_cmd->add_option("shares", share_files, "Share files")->required()->check(CLI::ExistingFile);

  // authenticate
  auto* auth_cmd = app.add_subcommand("authenticate", "Verify components against the commitment");
  std::string commitment_in;
  std::vector<std::string> component_files;
  auth_cmd->add_option("--params", params_in, "Params file")->required()->check(CLI::ExistingFile);
  auth_cmd->add_option("--commitment", commitment_in, "Commitment file")->required()->check(CLI::ExistingFile);
  auth_cmd->add_option("components", component_files, "Component files")->required()->check(CLI::ExistingFile);

  // attack
  auto* attack_cmd = app.add_subcommand("attack", "Simulate a session with adversarial agents");
  std::string mode = "reconstruction", topology = "pairwise_private", transcript_out;
  std::vector<std::string> adversaries;
  bool parallel = false;
  attack_cmd->add_option("--params", params_in, "Params file")->required()->check(CLI::ExistingFile);
  attack_cmd->add_option("--mode", mode, "reconstruction or authentication")
      ->check(CLI::IsMember({"reconstruction", "authentication"}));
  attack_cmd->add_option("--topology", topology, "pairwise_private or broadcast")
      ->check(CLI::IsMember({"pairwise_private", "broadcast"}));
  attack_cmd->add_option("--participants", participants, "Participant set (default 1..n)")->allow_extra_args(false)->delimiter(',');
  attack_cmd->add_option("--adversary", adversaries, "INDEX:BEHAVIOR[:last][:forged=V][:target=V]");
  attack_cmd->add_option("--secret", secret, "Secret to deal (default uniform)");
  attack_cmd->add_flag("--parallel", parallel, "Run agents on separate threads");
  attack_cmd->add_option("--transcript", transcript_out, "Line-delimited JSON transcript output")->required();

  // analyze
  auto* analyze_cmd = app.add_subcommand("analyze", "Exact leakage analysis at enumerable sizes");
  std::string claim;
  std::optional<std::string> ap, aq, at, an, am, aj, strategy, forged, budget, alpha, draws;
  std::vector<std::string> known, coeffs, a_list, b_list;
  bool as_json = false;
  auto* claims = analyze_cmd->add_option_group("claim")->require_option(1);
  for (const char* name : {"lemma2", "corollary1", "theorem2", "theorem3", "theorem4"}) {
    claims->add_flag_callback(std::string("--") + name, [&claim, name] { claim = name; });
  }
  analyze_cmd->add_option("--p", ap, "Share-space prime");
  analyze_cmd->add_option("--q", aq, "Secret-space prime");
  analyze_cmd->add_option("--t", at, "Threshold");
  analyze_cmd->add_option("--n", an, "Number of shareholders");
  analyze_cmd->add_option("--m", am, "Participants in the session");
  analyze_cmd->add_option("--j", aj, "Subset size of observed components");
  analyze_cmd->add_option("--known", known, "Indices of known shares")->allow_extra_args(false)->delimiter(',');
  analyze_cmd->add_option("--coeffs", coeffs, "Coefficients (lemma2)")->allow_extra_args(false)->delimiter(',');
  analyze_cmd->add_option("--a", a_list, "F_p coefficients (corollary1)")->allow_extra_args(false)->delimiter(',');
  analyze_cmd->add_option("--b", b_list, "F_q coefficients (corollary1)")->allow_extra_args(false)->delimiter(',');
  analyze_cmd->add_option("--strategy", strategy, "exhaustive, fixed or honest")
      ->check(CLI::IsMember({"exhaustive", "fixed", "honest"}));
  analyze_cmd->add_option("--forged", forged, "Forged component for --strategy fixed");
  analyze_cmd->add_option("--budget", budget, "Enumeration budget in tuples");
  analyze_cmd->add_option("--alpha", alpha, "Significance level of the statistical fallback");
  analyze_cmd->add_option("--draws", draws, "Samples for the statistical fallback");
  analyze_cmd->add_flag("--json", as_json, "Emit JSON instead of key: value lines");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*setup) {
      if (!*qb && !q_text) throw Failure(TCSS_E_INVALID_ARGUMENT, "give --q-bits or --q");
      Params params;
      if (q_text) {
        std::string ids_json;
        if (identities) {
          std::vector<std::string> ids;
          std::stringstream ss(*identities);
          for (std::string part; std::getline(ss, part, ',');) ids.push_back(part);
          ids_json = decimal_list(ids).dump();
        }
        check(tcss_params_from_primes(n, t, p_text ? p_text->c_str() : nullptr, q_text->c_str(),
                                      identities ? ids_json.c_str() : nullptr, &params.handle));
      } else {
        if (identities) throw Failure(TCSS_E_INVALID_ARGUMENT, "--identities needs explicit --q");
        Rng rng(seed);
        check(tcss_params_generate(n, t, q_bits, rng.handle, &params.handle));
      }
      Owned json;
      check(tcss_params_serialize(params.handle, &json.ptr));
      write_file(params_out, json.str());
      const Json s = summary_of(params);
      std::printf("p: %s\nq: %s\nn: %s\nt: %s\ndigest: %s\n", s["p"].get<std::string>().c_str(),
                  s["q"].get<std::string>().c_str(), s["n"].get<std::string>().c_str(),
                  s["t"].get<std::string>().c_str(), s["digest"].get<std::string>().c_str());
      if (!s["share_size_regime"].get<bool>())
        std::fprintf(stderr, "warning: p >= q^3, shares exceed three times the secret size\n");
      return kOk;
    }

    if (*deal) {
      if (!secret && !random_secret) throw Failure(TCSS_E_INVALID_ARGUMENT, "give --secret or --random");
      Params params(read_file(params_in));
      Rng rng(seed);
      tcss_dealing* dealing = nullptr;
      check(tcss_deal(params.handle, secret ? secret->c_str() : nullptr, rng.handle, &dealing));
      std::unique_ptr<tcss_dealing, void (*)(tcss_dealing*)> guard(dealing, tcss_dealing_free);
      fs::create_directories(out_dir);
      const std::size_t count = tcss_dealing_share_count(dealing);
      for (unsigned i = 1; i <= count; ++i) {
        Owned share;
        check(tcss_dealing_share(dealing, i, &share.ptr));
        const std::string path = (fs::path(out_dir) / ("share_" + std::to_string(i) + ".json")).string();
        write_file(path, share.str());
        std::printf("%s\n", path.c_str());
      }
      Owned commitment;
      check(tcss_dealing_commitment(dealing, &commitment.ptr));
      const std::string path = (fs::path(out_dir) / "commitment.json").string();
      write_file(path, commitment.str());
      std::printf("%s\n", path.c_str());
      return kOk;
    }

    if (*session_cmd) {
      Params params(read_file(params_in));
      Rng rng(seed);
      Owned session;
      check(tcss_session_open(params.handle, participants.data(), participants.size(), rng.handle, &session.ptr));
      write_file(session_out, session.str());
      return kOk;
    }

    if (*component_cmd) {
      Params params(read_file(params_in));
      Rng rng(seed);
      const std::string share = read_file(share_in);
      const std::string session = read_file(session_in);
      Owned component;
      check(tcss_component_make(params.handle, share.c_str(), session.c_str(), rng.handle, &component.ptr));
      write_file(component_out, component.str());
      return kOk;
    }

    if (*reconstruct_cmd) {
      Params params(read_file(params_in));
      Rng rng(seed);
      std::vector<std::string> shares;
      std::vector<unsigned> indices;
      for (const auto& f : share_files) {
        shares.push_back(read_file(f));
        indices.push_back(std::stoul(Json::parse(shares.back()).at("index").get<std::string>()));
      }
      std::vector<const char*> ptrs;
      for (const auto& s : shares) ptrs.push_back(s.c_str());

      Owned secret_out;
      auto sorted = [](std::vector<unsigned> v) {
        std::sort(v.begin(), v.end());
        return v;
      };
      if (participants.empty() || sorted(participants) == sorted(indices)) {
        check(tcss_reconstruct_from_shares(params.handle, ptrs.data(), ptrs.size(), rng.handle, &secret_out.ptr));
      } else {
        // Declared set differs from the shares at hand: build what we can and let
        // reconstruction report the gap.
        Owned session;
        check(tcss_session_open(params.handle, participants.data(), participants.size(), rng.handle, &session.ptr));
        std::vector<std::unique_ptr<Owned>> comps;
        std::vector<const char*> comp_ptrs;
        for (const auto& s : shares) {
          comps.push_back(std::make_unique<Owned>());
          check(tcss_component_make(params.handle, s.c_str(), session.ptr, rng.handle, &comps.back()->ptr));
          comp_ptrs.push_back(comps.back()->ptr);
        }
        check(tcss_reconstruct(params.handle, comp_ptrs.data(), comp_ptrs.size(), &secret_out.ptr));
      }
      std::printf("%s\n", secret_out.ptr);
      if (expect && *expect != secret_out.str()) {
        std::fprintf(stderr, "mismatch: expected %s\n", expect->c_str());
        return kRejected;
      }
      return kOk;
    }

    if (*auth_cmd) {
      Params params(read_file(params_in));
      const std::string commitment = read_file(commitment_in);
      std::vector<std::string> comps;
      for (const auto& f : component_files) comps.push_back(read_file(f));
      std::vector<const char*> ptrs;
      for (const auto& c : comps) ptrs.push_back(c.c_str());
      Owned verdict;
      int accepted = 0;
      check(tcss_authenticate(params.handle, ptrs.data(), ptrs.size(), commitment.c_str(), &verdict.ptr, &accepted));
      std::printf("%s\n", verdict.ptr);
      return accepted ? kOk : kRejected;
    }

    if (*attack_cmd) {
      Params params(read_file(params_in));
      Rng rng(seed);
      Json request;
      request["mode"] = mode;
      request["topology"] = topology;
      request["parallel"] = parallel;
      Json plist = Json::array();
      for (unsigned i : participants) plist.push_back(std::to_string(i));
      request["participants"] = plist;
      if (secret) request["secret"] = *secret;
      Json advs = Json::array();
      for (const auto& a : adversaries) advs.push_back(adversary_spec(a));
      request["adversaries"] = advs;
      Owned transcript, summary;
      check(tcss_attack_run(params.handle, request.dump().c_str(), rng.handle, &transcript.ptr, &summary.ptr));
      write_file(transcript_out, transcript.str());
      print_lines(Json::parse(summary.str()));
      return kOk;
    }

    if (*analyze_cmd) {
      Json request;
      request["claim"] = claim;
      auto put = [&](const char* key, const std::optional<std::string>& v) {
        if (v) request[key] = *v;
      };
      put("p", ap);
      put("q", aq);
      put("t", at);
      put("n", an);
      put("m", am);
      put("j", aj);
      put("strategy", strategy);
      put("forged_value", forged);
      put("budget", budget);
      put("draws", draws);
      if (alpha) request["alpha"] = std::stod(*alpha);
      if (!known.empty()) request["known"] = decimal_list(known);
      if (!coeffs.empty()) request["coeffs"] = decimal_list(coeffs);
      if (!a_list.empty()) request["a"] = decimal_list(a_list);
      if (!b_list.empty()) request["b"] = decimal_list(b_list);
      Rng rng(seed);
      Owned report;
      check(tcss_analyze(request.dump().c_str(), rng.handle, &report.ptr));
      if (as_json) {
        std::printf("%s\n", report.ptr);
      } else {
        print_lines(Json::parse(report.str()));
      }
      return kOk;
    }
  } catch (const Failure& f) {
    std::fprintf(stderr, "error: %s\n", f.what());
    return exit_code_for(f.status);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kUsage;
  }
  return kUsage;
}
