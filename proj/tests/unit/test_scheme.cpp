#include <gtest/gtest.h>

#include "support.hpp"
#include "tcss/analysis.hpp"
#include "tcss/error.hpp"

namespace tcss {
namespace {

using test::elements;
using test::hand_dealing;
using test::small_params;
using test::values_of;

Errc code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return Errc::InvalidArgument;
}

std::vector<unsigned long> share_values(const Dealing& d) {
  std::vector<unsigned long> out;
  for (const auto& s : d.shares) out.push_back(s.value.value().get_ui());
  return out;
}

Component component_with_mask(const Dealing& d, unsigned index, const SchemeParams& params,
                              const SessionBinding& session, unsigned long mask) {
  const CoefficientSet coeffs = canonical_coefficients(params.generator(), session.participants);
  return construct_component(d.shares[index - 1], params, session, coeffs, BigInt(mask));
}

TEST(SchemeParams, EnforcesCorrectnessMargin) {
  EXPECT_EQ(code_of([] { SchemeParams::with_default_identities(PrimePair{73, 5, 3}, 2, 3); }), Errc::Infeasible);
  EXPECT_EQ(code_of([] { SchemeParams::with_default_identities(validate_prime_pair(3, 79, 5), 4, 3); }),
            Errc::BadDimensions);
  EXPECT_EQ(small_params().digest().size(), 64u);
}

TEST(SchemeParams, DigestDependsOnEveryField) {
  const auto a = small_params(2);
  const auto b = small_params(3);
  const BigInt ids[] = {1, 2, 3, 5};
  const auto c = SchemeParams::with_identities(validate_prime_pair(3, 79, 5), 2, ids);
  EXPECT_NE(a.digest(), b.digest());
  EXPECT_NE(a.digest(), c.digest());
  EXPECT_EQ(a.digest(), small_params(2).digest());
}

TEST(ShareGeneration, HandTraceShares) {
  const auto params = small_params();
  const Dealing d = hand_dealing(params);
  EXPECT_EQ(d.secret.s, 3);
  EXPECT_EQ(share_values(d), (std::vector<unsigned long>{4, 5, 6}));
}

TEST(ShareGeneration, RejectsZeroVectorAndOutOfRangeSecrets) {
  const auto params = small_params();
  EXPECT_EQ(code_of([&] { deal_from_vector(params, elements({0, 0}, params.p_ptr())); }), Errc::InvalidArgument);
  EXPECT_EQ(code_of([&] { deal_from_vector(params, elements({5, 1}, params.p_ptr())); }), Errc::SecretOutOfRange);
  SeededRandom rng("range");
  EXPECT_EQ(code_of([&] { share_generation(5, params, rng); }), Errc::SecretOutOfRange);
}

TEST(ShareGeneration, DealerVectorEncodesTheSecret) {
  const auto params = small_params(3);
  SeededRandom rng("dealer");
  for (int trial = 0; trial < 200; ++trial) {
    const BigInt s = trial % 5;
    const Dealing d = share_generation(s, params, rng);
    EXPECT_EQ(d.secret.s, s);
    FieldElement acc(0, params.p_ptr());
    for (unsigned k = 0; k < params.t(); ++k) acc += d.secret.v[k] * params.generator().column(0)[k];
    EXPECT_EQ(acc.value(), s);
    EXPECT_TRUE(std::any_of(d.secret.v.begin(), d.secret.v.end(), [](auto& x) { return !x.is_zero(); }));
  }
}

TEST(Components, HandTraceAtTwoParticipants) {
  const auto params = small_params();
  const Dealing d = hand_dealing(params);
  const unsigned pair[] = {1, 2};
  const SessionBinding session = bind_session(params, pair);
  const Component c1 = component_with_mask(d, 1, params, session, 2);
  const Component c2 = component_with_mask(d, 2, params, session, 4);
  EXPECT_EQ(c1.value.value(), 18);
  EXPECT_EQ(c2.value.value(), 15);
  EXPECT_EQ(component_with_mask(d, 2, params, session, 0).value.value(), 74);
  const std::vector<Component> both{c1, c2};
  EXPECT_EQ(combine_components(both, params).value(), 33);
  EXPECT_EQ(reconstruct(both, params), 3);
}

TEST(Components, HandTraceAtThreeParticipants) {
  const auto params = small_params();
  const Dealing d = hand_dealing(params);
  const unsigned all[] = {1, 2, 3};
  const SessionBinding session = bind_session(params, all);
  std::vector<Component> comps;
  for (unsigned i = 1; i <= 3; ++i) comps.push_back(component_with_mask(d, i, params, session, 0));
  EXPECT_EQ(values_of({comps[0].value, comps[1].value, comps[2].value}), (std::vector<unsigned long>{12, 64, 6}));
  EXPECT_EQ(combine_components(comps, params).value(), 3);
  EXPECT_EQ(reconstruct(comps, params), 3);
}

TEST(Components, ConstructionErrors) {
  const auto params = small_params();
  const Dealing d = hand_dealing(params);
  SeededRandom rng("errors");
  const unsigned pair[] = {1, 2};
  const SessionBinding session = bind_session(params, pair);
  EXPECT_EQ(code_of([&] { construct_component(d.shares[2], params, session, rng); }), Errc::NotAParticipant);

  const unsigned one[] = {1};
  EXPECT_EQ(code_of([&] { bind_session(params, one); }), Errc::BadSetSize);

  SessionBinding forged = session;
  forged.participants = {1, 3};
  EXPECT_EQ(code_of([&] { construct_component(d.shares[0], params, forged, rng); }), Errc::SessionMismatch);

  const CoefficientSet coeffs = canonical_coefficients(params.generator(), session.participants);
  EXPECT_EQ(code_of([&] { construct_component(d.shares[0], params, session, coeffs, BigInt(5)); }),
            Errc::InvalidArgument);
  EXPECT_EQ(code_of([&] { bind_session(params, pair, "ABCD"); }), Errc::InvalidArgument);
}

TEST(Reconstruct, RefusesIncompleteMixedOrDuplicateSets) {
  const auto params = small_params();
  const Dealing d = hand_dealing(params);
  const unsigned pair[] = {1, 2};
  const SessionBinding session = bind_session(params, pair, "aa");
  const SessionBinding other = bind_session(params, pair, "bb");
  const Component c1 = component_with_mask(d, 1, params, session, 2);
  const Component c2 = component_with_mask(d, 2, params, session, 4);
  const Component c2_other = component_with_mask(d, 2, params, other, 4);

  const std::vector<Component> lone{c1};
  EXPECT_EQ(code_of([&] { reconstruct(lone, params); }), Errc::MissingComponent);
  EXPECT_EQ(code_of([&] { reconstruct(std::vector<Component>{}, params); }), Errc::MissingComponent);
  const std::vector<Component> mixed{c1, c2_other};
  EXPECT_EQ(code_of([&] { reconstruct(mixed, params); }), Errc::SessionMismatch);
  const std::vector<Component> dup{c1, c1};
  EXPECT_EQ(code_of([&] { reconstruct(dup, params); }), Errc::DuplicateIndex);
  Component stranger = c2;
  stranger.index = 3;
  const std::vector<Component> foreign{c1, stranger};
  EXPECT_EQ(code_of([&] { reconstruct(foreign, params); }), Errc::NotAParticipant);

  const auto wider = small_params(3);
  const std::vector<Component> ok{c1, c2};
  EXPECT_EQ(code_of([&] { reconstruct(ok, wider); }), Errc::SessionMismatch);
}

// Every subset of size >= t recovers the secret, across matrices and seeds.
TEST(Property, RoundTripOverAllParticipantSets) {
  SeededRandom rng("round-trip");
  for (unsigned q_bits : {8u, 24u, 64u}) {
    for (auto [t, n] : {std::pair{2u, 3u}, {3u, 5u}, {4u, 6u}}) {
      const auto params = SchemeParams::with_default_identities(generate_prime_pair(n, q_bits, rng), t, n);
      for (int trial = 0; trial < 4; ++trial) {
        const BigInt s = random_below(params.q(), rng);
        const Dealing d = share_generation(s, params, rng);
        for (unsigned mask = 0; mask < (1u << n); ++mask) {
          std::vector<unsigned> set;
          for (unsigned i = 0; i < n; ++i)
            if (mask & (1u << i)) set.push_back(i + 1);
          if (set.size() < t) continue;
          const SessionBinding session = bind_session(params, set, fresh_nonce(rng));
          std::vector<Component> comps;
          for (unsigned i : set) comps.push_back(construct_component(d.shares[i - 1], params, session, rng));
          ASSERT_EQ(reconstruct(comps, params), s);
        }
      }
    }
  }
}

TEST(Property, RoundTripWithGeneralGeneratorMatrix) {
  SeededRandom rng("general");
  const PrimePair primes = prime_pair_for_q(3, 11);  // p = 367
  auto p = std::make_shared<const BigInt>(primes.p);
  GeneratorMatrix g(2, {elements({1, 1}, p), elements({1, 0}, p), elements({0, 1}, p), elements({1, 2}, p)});
  const SchemeParams params(primes, g);
  for (int trial = 0; trial < 50; ++trial) {
    const BigInt s = random_below(params.q(), rng);
    const Dealing d = share_generation(s, params, rng);
    const unsigned all[] = {1, 2, 3};
    const SessionBinding session = bind_session(params, all);
    std::vector<Component> comps;
    for (unsigned i : all) comps.push_back(construct_component(d.shares[i - 1], params, session, rng));
    ASSERT_EQ(reconstruct(comps, params), s);
  }
}

TEST(Property, ComponentsLookUniformAtP367) {
  const auto params = SchemeParams::with_default_identities(prime_pair_for_q(3, 11), 2, 3);
  SeededRandom rng("uniform-components");
  analysis::Distribution counts(367);
  const unsigned all[] = {1, 2, 3};
  const SessionBinding session = bind_session(params, all);
  for (int i = 0; i < 100000; ++i) {
    const Dealing d = share_generation(random_below(params.q(), rng), params, rng);
    counts.add(construct_component(d.shares[0], params, session, rng).value.value().get_ui());
  }
  EXPECT_TRUE(analysis::chi_square_uniformity(counts, 0.001).pass);
}

TEST(Property, SameSeedSameDealing) {
  const auto params = small_params();
  SeededRandom a("repeat"), b("repeat");
  const Dealing x = share_generation(2, params, a);
  const Dealing y = share_generation(2, params, b);
  EXPECT_EQ(share_values(x), share_values(y));
}

}  // namespace
}  // namespace tcss
