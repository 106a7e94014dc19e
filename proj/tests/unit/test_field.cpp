#include <gtest/gtest.h>

#include <map>

#include "support.hpp"
#include "tcss/error.hpp"

namespace tcss {
namespace {

using test::modulus;

TEST(Decimal, RoundTripsAndRejectsMalformedInput) {
  EXPECT_EQ(parse_decimal("0"), 0);
  EXPECT_EQ(to_decimal(parse_decimal("340282366920938463463374607431768211457")),
            "340282366920938463463374607431768211457");
  for (const char* bad : {"", "-1", "+3", "007", "12a", " 1", "1e3"}) {
    SCOPED_TRACE(bad);
    try {
      parse_decimal(bad);
      FAIL() << "accepted malformed integer";
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), Errc::ParseError);
    }
  }
}

TEST(Primality, SmallNumbersAgreeWithTrialDivision) {
  auto naive = [](unsigned long n) {
    if (n < 2) return false;
    for (unsigned long d = 2; d * d <= n; ++d)
      if (n % d == 0) return false;
    return true;
  };
  for (unsigned long n = 0; n < 5000; ++n) EXPECT_EQ(is_probable_prime(n), naive(n)) << n;
}

TEST(Primality, LargeKnownValues) {
  const BigInt mersenne127 = (BigInt(1) << 127) - 1;
  EXPECT_TRUE(is_probable_prime(mersenne127));
  EXPECT_FALSE(is_probable_prime(mersenne127 * 3));
  EXPECT_FALSE(is_probable_prime(BigInt("3215031751")));  // strong pseudoprime to bases 2, 3, 5, 7
  EXPECT_EQ(next_prime_above(363), 367);
  EXPECT_EQ(next_prime_above(18), 19);
}

TEST(FieldElement, ArithmeticModSeven) {
  auto p = modulus(7);
  FieldElement a(BigInt(3), p), b(BigInt(6), p);
  EXPECT_EQ((a + b).value(), 2);
  EXPECT_EQ((a - b).value(), 4);
  EXPECT_EQ((a * b).value(), 4);
  EXPECT_EQ((-a).value(), 4);
  EXPECT_EQ(a.pow(6).value(), 1);
  EXPECT_EQ(FieldElement(BigInt(-1), p).value(), 6);
  EXPECT_EQ(FieldElement(BigInt(15), p).value(), 1);
}

TEST(FieldElement, MixingFieldsIsRejected) {
  FieldElement a(BigInt(1), modulus(7)), b(BigInt(1), modulus(11));
  EXPECT_THROW(a + b, Error);
  EXPECT_FALSE(a == b);
  // Equal moduli held in different allocations count as the same field.
  FieldElement c(BigInt(1), modulus(7));
  EXPECT_EQ(a, c);
}

TEST(ModInverse, HandValues) {
  auto p = modulus(7);
  EXPECT_EQ(mod_inverse(FieldElement(BigInt(1), p)).value(), 1);
  EXPECT_EQ(mod_inverse(FieldElement(BigInt(3), p)).value(), 5);
  try {
    mod_inverse(FieldElement(BigInt(0), p));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::ZeroInverse);
  }
  for (unsigned long v = 1; v < 7; ++v) {
    FieldElement x(BigInt(v), p);
    EXPECT_EQ((x * x.inverse()).value(), 1);
  }
}

TEST(RandomFieldElement, TwoOutcomeFrequencies) {
  SeededRandom rng("field-binary");
  std::map<unsigned long, int> counts;
  for (int i = 0; i < 10000; ++i) ++counts[random_field_element(BigInt(2), rng).value().get_ui()];
  ASSERT_EQ(counts.size(), 2u);
  EXPECT_NEAR(counts[0] / 10000.0, 0.5, 0.05);
  EXPECT_NEAR(counts[1] / 10000.0, 0.5, 0.05);
}

TEST(RandomFieldElement, DegenerateModulusRejected) {
  SeededRandom rng("x");
  EXPECT_THROW(random_field_element(BigInt(1), rng), Error);
}

TEST(RandomBelow, StaysInRangeForLargeBounds) {
  SeededRandom rng("bounds");
  const BigInt bound = (BigInt(1) << 200) + 12345;
  for (int i = 0; i < 200; ++i) {
    BigInt x = random_below(bound, rng);
    EXPECT_GE(x, 0);
    EXPECT_LT(x, bound);
  }
}

TEST(PrimePair, ForcedQHandValues) {
  EXPECT_EQ(prime_pair_for_q(3, 11).p, 367);
  EXPECT_EQ(prime_pair_for_q(2, 3).p, 19);
  try {
    prime_pair_for_q(3, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::Infeasible);
  }
}

TEST(PrimePair, ValidationRules) {
  EXPECT_NO_THROW(validate_prime_pair(3, 79, 5));
  EXPECT_THROW(validate_prime_pair(3, 100, 11), Error);  // not prime
  EXPECT_THROW(validate_prime_pair(3, 73, 5), Error);    // 73 <= 75
  const PrimePair oversized = validate_prime_pair(5, 127, 5);
  EXPECT_FALSE(oversized.in_share_size_regime());
}

TEST(PrimePair, GeneratedPairsRespectBothInequalities) {
  SeededRandom rng("pairs");
  for (unsigned q_bits : {8u, 16u, 32u, 64u}) {
    for (unsigned n : {2u, 5u, 40u}) {
      PrimePair pair = generate_prime_pair(n, q_bits, rng);
      EXPECT_EQ(bit_length(pair.q), q_bits);
      EXPECT_TRUE(is_probable_prime(pair.q));
      EXPECT_TRUE(is_probable_prime(pair.p));
      EXPECT_GT(pair.p, n * pair.q * pair.q);
      EXPECT_LT(pair.p, pair.q * pair.q * pair.q);
      EXPECT_EQ(pair.p, next_prime_above(n * pair.q * pair.q));
      EXPECT_GT(bit_length(pair.p), 2 * q_bits);
    }
  }
}

TEST(PrimePair, InfeasibleWhenSecretSpaceTooSmall) {
  SeededRandom rng("tiny");
  EXPECT_THROW(generate_prime_pair(300, 8, rng), Error);
  EXPECT_THROW(generate_prime_pair(3, 4, rng), Error);
}

TEST(SeededRandom, ReproducibleAndSeedSensitive) {
  SeededRandom a("seed"), b("seed"), c("seeds");
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next_u64();
    EXPECT_EQ(x, b.next_u64());
    EXPECT_NE(x, c.next_u64());
  }
}

}  // namespace
}  // namespace tcss
