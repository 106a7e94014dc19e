#include <gtest/gtest.h>

#include "support.hpp"
#include "tcss/error.hpp"

namespace tcss {
namespace {

using test::elements;
using test::modulus;
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

GeneratorMatrix vandermonde(std::initializer_list<unsigned long> ids, unsigned long p, unsigned t) {
  return build_vandermonde(elements(ids, modulus(p)), t);
}

TEST(Vandermonde, ColumnsAreIdentityPowers) {
  const GeneratorMatrix g = vandermonde({1, 2, 3, 4}, 79, 2);
  ASSERT_EQ(g.n(), 3u);
  ASSERT_EQ(g.t(), 2u);
  const std::vector<std::vector<unsigned long>> expected{{1, 1}, {1, 2}, {1, 3}, {1, 4}};
  for (unsigned i = 0; i <= 3; ++i) EXPECT_EQ(values_of(g.column(i)), expected[i]);
  EXPECT_TRUE(g.is_vandermonde());
}

TEST(Vandermonde, RejectsBadIdentities) {
  EXPECT_EQ(code_of([] { vandermonde({1, 2, 2}, 7, 2); }), Errc::DuplicateIdentity);
  EXPECT_EQ(code_of([] { vandermonde({1, 0, 2}, 7, 2); }), Errc::ZeroIdentity);
  EXPECT_EQ(code_of([] { vandermonde({1, 2, 3}, 7, 3); }), Errc::BadDimensions);
  // 9 and 2 collide mod 7.
  EXPECT_EQ(code_of([] { vandermonde({1, 9, 2}, 7, 2); }), Errc::DuplicateIdentity);
}

TEST(Vandermonde, EveryPairOfColumnsIndependentModSeven) {
  const GeneratorMatrix g = vandermonde({1, 2, 3}, 7, 2);
  for (unsigned i = 0; i <= 2; ++i)
    for (unsigned j = i + 1; j <= 2; ++j) EXPECT_FALSE(determinant({g.column(i), g.column(j)}).is_zero());
  EXPECT_TRUE(verify_rank(g));
}

TEST(VerifyRank, DetectsRepeatedColumn) {
  auto p = modulus(79);
  EXPECT_TRUE(verify_rank(vandermonde({1, 2, 3, 4}, 79, 2)));
  GeneratorMatrix g(2, {elements({1, 1}, p), elements({1, 2}, p), elements({1, 2}, p)});
  EXPECT_FALSE(verify_rank(g));
}

TEST(GeneratorMatrix, ShapeChecks) {
  auto p = modulus(7);
  EXPECT_THROW(GeneratorMatrix(2, {elements({1, 1}, p), elements({0, 0}, p)}), Error);
  EXPECT_THROW(GeneratorMatrix(2, {elements({1, 1}, p), elements({1}, p)}), Error);
}

TEST(Determinant, HandValue) {
  auto p = modulus(7);
  // det [[1,1],[2,3]] = 1
  EXPECT_EQ(determinant({elements({1, 2}, p), elements({1, 3}, p)}).value(), 1);
  EXPECT_TRUE(determinant({elements({1, 2}, p), elements({2, 4}, p)}).is_zero());
}

TEST(SolveLinearSystem, SolvesAndFlagsSingular) {
  auto p = modulus(79);
  const auto x = solve_linear_system({elements({1, 3}, p), elements({1, 4}, p)}, elements({0, 78}, p));
  EXPECT_EQ(values_of(x), (std::vector<unsigned long>{1, 78}));
  EXPECT_EQ(code_of([&] { solve_linear_system({elements({1, 2}, p), elements({2, 4}, p)}, elements({1, 1}, p)); }),
            Errc::Singular);
}

TEST(Lagrange, HandValuesModSevenAndSeventyNine) {
  const GeneratorMatrix g7 = vandermonde({1, 2, 3}, 7, 2);
  const unsigned pair[] = {1, 2};
  const CoefficientSet c7 = lagrange_coefficients(g7, pair);
  EXPECT_EQ(values_of(c7.coefficients), (std::vector<unsigned long>{2, 6}));
  EXPECT_TRUE(combines_to_secret_column(g7, c7));

  const GeneratorMatrix g79 = vandermonde({1, 2, 3, 4}, 79, 2);
  const unsigned triple[] = {3, 1, 2};
  const CoefficientSet c79 = lagrange_coefficients(g79, triple);
  EXPECT_EQ(c79.participants, (std::vector<unsigned>{1, 2, 3}));
  EXPECT_EQ(values_of(c79.coefficients), (std::vector<unsigned long>{3, 76, 1}));
  EXPECT_EQ(c79.at(2).value(), 76);
  EXPECT_EQ(code_of([&] { c79.at(4); }), Errc::NotAParticipant);
  EXPECT_EQ(values_of(lagrange_coefficients(g79, pair).coefficients), (std::vector<unsigned long>{2, 78}));
}

TEST(Lagrange, Errors) {
  auto p = modulus(7);
  GeneratorMatrix plain(2, {elements({1, 1}, p), elements({1, 0}, p), elements({0, 1}, p)});
  const unsigned pair[] = {1, 2};
  const unsigned single[] = {1};
  const unsigned repeated[] = {1, 1};
  const unsigned outside[] = {1, 4};
  EXPECT_EQ(code_of([&] { lagrange_coefficients(plain, pair); }), Errc::NotVandermonde);
  const GeneratorMatrix g = vandermonde({1, 2, 3}, 7, 2);
  EXPECT_EQ(code_of([&] { lagrange_coefficients(g, single); }), Errc::TooFew);
  EXPECT_EQ(code_of([&] { lagrange_coefficients(g, repeated); }), Errc::DuplicateIndex);
  EXPECT_EQ(code_of([&] { lagrange_coefficients(g, outside); }), Errc::InvalidArgument);
}

TEST(GeneralRule, FixesOnesThenSolves) {
  const GeneratorMatrix g = vandermonde({1, 2, 3, 4}, 79, 2);
  const unsigned triple[] = {1, 2, 3};
  const CoefficientSet c = solve_coefficients_general(g, triple);
  EXPECT_EQ(values_of(c.coefficients), (std::vector<unsigned long>{1, 1, 78}));
  EXPECT_EQ(c.rule, CoefficientRule::FixOnes);
  EXPECT_TRUE(combines_to_secret_column(g, c));
}

TEST(GeneralRule, AgreesWithLagrangeAtThreshold) {
  const GeneratorMatrix g = vandermonde({1, 2, 3, 4, 5, 6}, 101, 3);
  const unsigned set[] = {2, 4, 5};
  EXPECT_EQ(values_of(solve_coefficients_general(g, set).coefficients),
            values_of(lagrange_coefficients(g, set).coefficients));
}

TEST(GeneralRule, RetriesWhenASolvedCoefficientVanishes) {
  auto p = modulus(7);
  GeneratorMatrix g(2, {elements({1, 1}, p), elements({1, 0}, p), elements({0, 1}, p), elements({1, 2}, p)});
  const unsigned triple[] = {1, 2, 3};
  const CoefficientSet c = solve_coefficients_general(g, triple);
  EXPECT_EQ(values_of(c.coefficients), (std::vector<unsigned long>{2, 3, 6}));
  EXPECT_TRUE(combines_to_secret_column(g, c));
  // Non-Vandermonde input goes through the general rule.
  EXPECT_EQ(canonical_coefficients(g, triple), c);
}

TEST(Canonical, UsesLagrangeForVandermonde) {
  const GeneratorMatrix g = vandermonde({1, 2, 3, 4}, 79, 2);
  const unsigned triple[] = {1, 2, 3};
  EXPECT_EQ(canonical_coefficients(g, triple).rule, CoefficientRule::Lagrange);
}

}  // namespace
}  // namespace tcss
