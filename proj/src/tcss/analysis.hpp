#pragma once

// Exact (enumerative) and statistical checks of the scheme's
// information-theoretic behaviour at parameter sizes small enough to
// enumerate every dealer vector and every mask.

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tcss/random.hpp"

namespace tcss::analysis {

using Rational = mpq_class;

// Tuples evaluated before an exact enumeration gives up with TooLarge.
inline constexpr std::uint64_t kDefaultBudget = 100'000'000;

class Distribution {
 public:
  explicit Distribution(std::size_t support);

  void add(std::uint64_t value, std::uint64_t weight = 1);
  // Count-wise sum; associative and order independent.
  void merge(const Distribution& other);

  std::size_t support() const noexcept { return counts_.size(); }
  std::uint64_t total() const noexcept { return total_; }
  std::uint64_t count(std::size_t value) const { return counts_.at(value); }
  const std::vector<std::uint64_t>& counts() const noexcept { return counts_; }

  // Shannon entropy in bits over the nonzero cells.
  double entropy() const;
  // Every cell holds the same count (zero tolerance).
  bool exactly_uniform() const;

 private:
  std::vector<std::uint64_t> counts_;
  std::uint64_t total_ = 0;
};

// Exact distribution of sum_i coeffs_i x_i mod p over all x in F_p^k.
Distribution enumerate_linear_combination(std::span<const std::uint64_t> coeffs, std::uint64_t p,
                                          std::uint64_t budget = kDefaultBudget);

// Exact distribution of (sum a_i x_i + sum b_j y_j) mod p with x_i over F_p
// and y_j over F_q.
Distribution enumerate_mixed_combination(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b,
                                         std::uint64_t p, std::uint64_t q, std::uint64_t budget = kDefaultBudget);

// Preconditions under which the mixed combination is uniform: at least one x
// term, every coefficient nonzero mod p, q <= p.
bool mixed_combination_hypothesis(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b,
                                  std::uint64_t p, std::uint64_t q);

// Monte Carlo counterparts used once exact enumeration exceeds the budget.
Distribution sample_linear_combination(std::span<const std::uint64_t> coeffs, std::uint64_t p,
                                       std::uint64_t draws, RandomSource& rng);
Distribution sample_mixed_combination(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b,
                                      std::uint64_t p, std::uint64_t q, std::uint64_t draws, RandomSource& rng);

struct ChiSquareResult {
  double statistic = 0;
  double critical = 0;
  unsigned dof = 0;
  double alpha = 0;
  bool pass = false;
};

// Pearson chi-square against the uniform distribution. TooSparse when the
// expected count per cell is below 5.
ChiSquareResult chi_square_uniformity(const Distribution& samples, double alpha);

// (floor(p/q) + 1) / p
Rational probability_bound(std::uint64_t p, std::uint64_t q);
// log2(q (floor(p/q) + 1) / p)
double information_bound(std::uint64_t p, std::uint64_t q);

// Parameters small enough to enumerate; unlike SchemeParams p > n q^2 is not
// enforced, so the harness can also probe undersized fields.
struct TinyScheme {
  std::uint64_t p = 0;
  std::uint64_t q = 0;
  unsigned t = 0;
  std::vector<std::uint64_t> identities;  // U_0..U_n

  // U_i = i + 1.
  static TinyScheme with_default_identities(std::uint64_t p, std::uint64_t q, unsigned t, unsigned n);

  unsigned n() const { return static_cast<unsigned>(identities.size()) - 1; }
  // p > n q^2, the precondition for exact honest reconstruction.
  bool correctness_margin() const;
};

struct SubsetLeakage {
  std::vector<unsigned> indices;
  double mutual_information = 0;
  Rational success_probability;
};

struct LeakageReport {
  std::string claim;
  std::uint64_t p = 0;
  std::uint64_t q = 0;
  unsigned t = 0;
  unsigned m = 0;
  std::vector<unsigned> observed;  // known shares / subset size marker

  double entropy_of_secret = 0;     // H(s), bits
  double mutual_information = 0;    // bits
  double information_bound = 0;     // log2(q (floor(p/q)+1) / p)
  // Probability that the best guess (or forgery) hits s, averaged over all
  // dealer and mask randomness.
  Rational success_probability;
  // Largest P(s | observation) over individual observations.
  Rational worst_posterior;
  Rational probability_bound;
  Rational baseline;  // 1/q
  bool secret_determined = false;  // H(s | observation) == 0 exactly
  std::uint64_t evaluated = 0;

  std::optional<std::uint64_t> best_forgery;
  std::optional<Rational> adaptive_success;  // forgery chosen after seeing the honest components
  std::optional<Rational> honest_success;
  std::vector<SubsetLeakage> subsets;

  bool probability_within_bound() const { return success_probability <= probability_bound; }
  bool information_within_bound() const { return mutual_information <= information_bound; }
};

// Known shares at `known` (indices into 1..n); conditional distribution of s.
LeakageReport leakage_below_threshold(const TinyScheme& scheme, std::span<const unsigned> known,
                                      std::uint64_t budget = kDefaultBudget);

enum class ForgeStrategy { Exhaustive, Fixed, Honest };

// Participants 1..m, the adversary impersonates index m without its share.
// Exhaustive: best single forged value over F_p. Fixed: `forged_value`.
// Honest: the true component (sanity inversion).
LeakageReport ipa_success_probability(const TinyScheme& scheme, unsigned m, ForgeStrategy strategy,
                                      std::uint64_t forged_value = 0, std::uint64_t budget = kDefaultBudget);

// I(s; C_J) for every j-subset J of the m components; the headline numbers
// are the maxima over subsets.
LeakageReport subset_component_leakage(const TinyScheme& scheme, unsigned m, unsigned j,
                                       std::uint64_t budget = kDefaultBudget);

}  // namespace tcss::analysis
