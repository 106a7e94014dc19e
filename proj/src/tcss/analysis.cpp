#include "tcss/analysis.hpp"

#include <boost/math/distributions/chi_squared.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <thread>
#include <unordered_map>

#include "tcss/error.hpp"
#include "tcss/lincode.hpp"

namespace tcss::analysis {
namespace {

constexpr std::uint64_t kMaxTinyPrime = std::uint64_t{1} << 31;

// a^e with a TooLarge error instead of silent overflow.
std::uint64_t checked_pow(std::uint64_t base, std::size_t exp) {
  std::uint64_t out = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (base != 0 && out > std::numeric_limits<std::uint64_t>::max() / base)
      throw Error(Errc::TooLarge, "enumeration size overflows 64 bits");
    out *= base;
  }
  return out;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a)
    throw Error(Errc::TooLarge, "enumeration size overflows 64 bits");
  return a * b;
}

void check_budget(std::uint64_t evaluations, std::uint64_t budget) {
  if (evaluations > budget)
    throw Error(Errc::TooLarge, std::to_string(evaluations) + " tuples exceed the enumeration budget of " +
                                    std::to_string(budget));
}

void check_modulus(std::uint64_t p) {
  if (p < 2) throw Error(Errc::InvalidArgument, "modulus must be >= 2");
  if (p >= kMaxTinyPrime) throw Error(Errc::TooLarge, "exact analysis needs p < 2^31");
}

// Advances a mixed-radix counter; false once it wraps around.
bool next_tuple(std::vector<std::uint64_t>& digits, std::span<const std::uint64_t> radix) {
  for (std::size_t i = digits.size(); i-- > 0;) {
    if (++digits[i] < radix[i]) return true;
    digits[i] = 0;
  }
  return false;
}

Rational ratio(const mpz_class& num, const mpz_class& den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Rational ratio(std::uint64_t num, std::uint64_t den) { return ratio(mpz_class(num), mpz_class(den)); }

double log2_of(const mpz_class& v) {
  long exp = 0;
  const double mant = mpz_get_d_2exp(&exp, v.get_mpz_t());
  return std::log2(mant) + static_cast<double>(exp);
}

double log2_of(const Rational& r) { return log2_of(r.get_num()) - log2_of(r.get_den()); }

// Entropy of an exact distribution. Equal probabilities are grouped so that a
// uniform distribution over k outcomes yields exactly log2(k).
double exact_entropy(const std::vector<Rational>& probabilities) {
  std::map<Rational, std::uint64_t> groups;
  for (const auto& pr : probabilities)
    if (pr > 0) ++groups[pr];
  double h = 0;
  for (const auto& [pr, k] : groups) {
    const Rational mass = pr * k;
    h += mass.get_d() * -log2_of(pr);
  }
  return h;
}

// Weighted joint table of (secret, observation).
class Joint {
 public:
  explicit Joint(std::uint64_t q) : q_(q) {}

  void add(std::uint64_t observation, std::uint64_t secret, std::uint64_t weight) {
    auto& row = table_[observation];
    if (row.empty()) row.assign(q_, 0);
    row[secret] += weight;
    total_ += weight;
  }

  struct Summary {
    std::vector<Rational> prior;
    double conditional_entropy = 0;
    Rational success;
    Rational worst;
    bool determined = true;
  };

  Summary summarize() const {
    Summary out;
    std::vector<mpz_class> prior_weight(q_, 0);
    mpz_class best_sum = 0;
    out.worst = 0;
    long double cond = 0;
    const long double total = static_cast<long double>(total_);
    for (const auto& [obs, row] : table_) {
      std::uint64_t row_total = 0;
      std::uint64_t best = 0;
      unsigned support = 0;
      for (std::uint64_t s = 0; s < q_; ++s) {
        row_total += row[s];
        best = std::max(best, row[s]);
        prior_weight[s] += row[s];
        support += row[s] > 0;
      }
      best_sum += best;
      out.worst = std::max(out.worst, ratio(best, row_total));
      if (support > 1) out.determined = false;
      for (std::uint64_t s = 0; s < q_; ++s) {
        if (row[s] == 0 || row[s] == row_total) continue;
        cond += (static_cast<long double>(row[s]) / total) *
                (std::log2(static_cast<long double>(row_total)) - std::log2(static_cast<long double>(row[s])));
      }
    }
    out.conditional_entropy = static_cast<double>(cond);
    out.success = ratio(best_sum, mpz_class(total_));
    for (auto& w : prior_weight) out.prior.push_back(ratio(w, mpz_class(total_)));
    return out;
  }

 private:
  std::uint64_t q_;
  std::uint64_t total_ = 0;
  std::unordered_map<std::uint64_t, std::vector<std::uint64_t>> table_;
};

// One dealer vector v with its secret, the weight making each s equally
// likely, and all n shares.
struct DealerCase {
  std::uint64_t s = 0;
  std::uint64_t weight = 0;
  std::vector<std::uint64_t> shares;  // shares[i-1] = v . g_i
};

std::uint64_t power_mod(std::uint64_t base, unsigned exp, std::uint64_t p) {
  std::uint64_t out = 1 % p;
  for (unsigned i = 0; i < exp; ++i) out = out * base % p;
  return out;
}

void validate(const TinyScheme& scheme) {
  check_modulus(scheme.p);
  if (scheme.q < 2 || scheme.q > scheme.p) throw Error(Errc::InvalidArgument, "need 2 <= q <= p");
  if (scheme.identities.size() < 2) throw Error(Errc::BadDimensions, "need identities U_0..U_n");
  if (scheme.t < 2 || scheme.t > scheme.n()) throw Error(Errc::BadDimensions, "need 2 <= t <= n");
  std::vector<std::uint64_t> ids = scheme.identities;
  std::sort(ids.begin(), ids.end());
  if (std::adjacent_find(ids.begin(), ids.end()) != ids.end())
    throw Error(Errc::DuplicateIdentity, "identities must be distinct");
  if (ids.front() == 0 || ids.back() >= scheme.p) throw Error(Errc::ZeroIdentity, "identities must lie in F_p^*");
}

// Enumerates every nonzero v in F_p^t with v . g_0 in F_q. The dealer draws v
// uniformly among the N_s admissible vectors for its secret, so each case is
// weighted by L / N_s with L = N_0 N_{s != 0}.
void for_each_dealer(const TinyScheme& scheme, const std::function<void(const DealerCase&)>& visit) {
  const std::uint64_t p = scheme.p;
  const unsigned t = scheme.t;
  const unsigned n = scheme.n();
  std::vector<std::vector<std::uint64_t>> columns(n + 1, std::vector<std::uint64_t>(t));
  for (unsigned i = 0; i <= n; ++i)
    for (unsigned k = 0; k < t; ++k) columns[i][k] = power_mod(scheme.identities[i] % p, k, p);

  const std::uint64_t lines = checked_pow(p, t - 1);
  const std::uint64_t weight_zero = lines;        // L / N_0, N_0 = p^{t-1} - 1
  const std::uint64_t weight_nonzero = lines - 1;  // L / N_s, N_s = p^{t-1}

  std::vector<std::uint64_t> v(t, 0);
  const std::vector<std::uint64_t> radix(t, p);
  DealerCase c;
  c.shares.resize(n);
  while (next_tuple(v, radix)) {  // starts past the zero vector
    std::uint64_t s = 0;
    for (unsigned k = 0; k < t; ++k) s = (s + v[k] * columns[0][k]) % p;
    if (s >= scheme.q) continue;
    c.s = s;
    c.weight = s == 0 ? weight_zero : weight_nonzero;
    for (unsigned i = 1; i <= n; ++i) {
      std::uint64_t acc = 0;
      for (unsigned k = 0; k < t; ++k) acc = (acc + v[k] * columns[i][k]) % p;
      c.shares[i - 1] = acc;
    }
    visit(c);
  }
}

// Canonical coefficients for participants 1..m, via the lincode module.
std::vector<std::uint64_t> coefficients_for(const TinyScheme& scheme, unsigned m) {
  auto p = std::make_shared<const BigInt>(static_cast<unsigned long>(scheme.p));
  std::vector<FieldElement> ids;
  for (auto u : scheme.identities) ids.emplace_back(BigInt(static_cast<unsigned long>(u)), p);
  GeneratorMatrix g = build_vandermonde(ids, scheme.t);
  std::vector<unsigned> participants(m);
  for (unsigned i = 0; i < m; ++i) participants[i] = i + 1;
  CoefficientSet coeffs = canonical_coefficients(g, participants);
  std::vector<std::uint64_t> out;
  for (const auto& b : coeffs.coefficients) out.push_back(b.value().get_ui());
  return out;
}

std::uint64_t pack(std::span<const std::uint64_t> values, std::uint64_t radix) {
  std::uint64_t key = 0;
  for (auto v : values) key = key * radix + v;
  return key;
}

void fill_common(LeakageReport& r, const TinyScheme& scheme, const Joint::Summary& summary) {
  r.p = scheme.p;
  r.q = scheme.q;
  r.t = scheme.t;
  r.entropy_of_secret = exact_entropy(summary.prior);
  r.mutual_information = std::max(0.0, r.entropy_of_secret - summary.conditional_entropy);
  if (summary.determined) r.mutual_information = r.entropy_of_secret;
  r.information_bound = information_bound(scheme.p, scheme.q);
  r.success_probability = summary.success;
  r.worst_posterior = summary.worst;
  r.probability_bound = probability_bound(scheme.p, scheme.q);
  r.baseline = Rational(1, static_cast<unsigned long>(scheme.q));
  r.secret_determined = summary.determined;
}

void check_participants(const TinyScheme& scheme, unsigned m) {
  if (m < scheme.t || m > scheme.n()) throw Error(Errc::BadSetSize, "need t <= m <= n");
}

// Enumerates dealer vectors and masks r in F_q^m; `visit` receives the secret,
// the weight and the m honest components.
void for_each_component_tuple(const TinyScheme& scheme, unsigned m, std::uint64_t budget,
                              const std::function<void(std::uint64_t, std::uint64_t,
                                                       std::span<const std::uint64_t>)>& visit,
                              std::uint64_t& evaluated) {
  const std::uint64_t p = scheme.p;
  const std::uint64_t q = scheme.q;
  const std::uint64_t tuples = checked_mul(checked_pow(p, scheme.t), checked_pow(q, m));
  check_budget(tuples, budget);
  checked_mul(tuples, checked_pow(p, scheme.t - 1));  // total weight must fit

  const auto b = coefficients_for(scheme, m);
  const std::vector<std::uint64_t> radix(m, q);
  std::vector<std::uint64_t> masked(m);
  std::vector<std::uint64_t> comps(m);
  evaluated = 0;
  for_each_dealer(scheme, [&](const DealerCase& d) {
    for (unsigned i = 0; i < m; ++i) masked[i] = b[i] * d.shares[i] % p;
    std::vector<std::uint64_t> r(m, 0);
    do {
      for (unsigned i = 0; i < m; ++i) comps[i] = (masked[i] + r[i] * q) % p;
      visit(d.s, d.weight, comps);
      ++evaluated;
    } while (next_tuple(r, radix));
  });
}

}  // namespace

Distribution::Distribution(std::size_t support) : counts_(support, 0) {
  if (support == 0) throw Error(Errc::InvalidArgument, "empty support");
}

void Distribution::add(std::uint64_t value, std::uint64_t weight) {
  counts_.at(value) += weight;
  total_ += weight;
}

void Distribution::merge(const Distribution& other) {
  if (other.support() != support()) throw Error(Errc::InvalidArgument, "support mismatch");
  for (std::size_t i = 0; i < counts_.size(); ++i) counts_[i] += other.counts_[i];
  total_ += other.total_;
}

double Distribution::entropy() const {
  if (total_ == 0) return 0;
  double h = 0;
  for (auto c : counts_) {
    if (c == 0) continue;
    const double pr = static_cast<double>(c) / static_cast<double>(total_);
    h -= pr * std::log2(pr);
  }
  return h;
}

bool Distribution::exactly_uniform() const {
  return std::all_of(counts_.begin(), counts_.end(), [&](std::uint64_t c) { return c == counts_.front(); });
}

Distribution enumerate_mixed_combination(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b,
                                         std::uint64_t p, std::uint64_t q, std::uint64_t budget) {
  check_modulus(p);
  if (q < 1) throw Error(Errc::InvalidArgument, "q must be positive");
  if (a.empty() && b.empty()) throw Error(Errc::InvalidArgument, "no variables");
  const std::uint64_t evaluations = checked_mul(checked_pow(p, a.size()), checked_pow(q, b.size()));
  check_budget(evaluations, budget);

  std::vector<std::uint64_t> coeffs;
  std::vector<std::uint64_t> radix;
  for (auto c : a) coeffs.push_back(c % p), radix.push_back(p);
  for (auto c : b) coeffs.push_back(c % p), radix.push_back(q);

  // Split on the outermost variable; per-thread distributions are summed.
  auto run_slice = [&](std::uint64_t lo, std::uint64_t hi) {
    Distribution part(p);
    std::vector<std::uint64_t> tail(coeffs.size() - 1, 0);
    std::span<const std::uint64_t> tail_radix(radix.data() + 1, radix.size() - 1);
    for (std::uint64_t x0 = lo; x0 < hi; ++x0) {
      const std::uint64_t head = coeffs[0] * x0 % p;
      std::fill(tail.begin(), tail.end(), 0);
      do {
        std::uint64_t acc = head;
        for (std::size_t i = 0; i < tail.size(); ++i) acc = (acc + coeffs[i + 1] * tail[i]) % p;
        part.add(acc);
      } while (!tail.empty() && next_tuple(tail, tail_radix));
    }
    return part;
  };

  const std::uint64_t outer = radix[0];
  const unsigned workers = evaluations < (1u << 20)
                               ? 1u
                               : static_cast<unsigned>(std::min<std::uint64_t>(
                                     outer, std::max(1u, std::thread::hardware_concurrency())));
  if (workers == 1) return run_slice(0, outer);

  std::vector<Distribution> parts(workers, Distribution(p));
  {
    std::vector<std::jthread> threads;
    for (unsigned w = 0; w < workers; ++w) {
      const std::uint64_t lo = outer * w / workers;
      const std::uint64_t hi = outer * (w + 1) / workers;
      threads.emplace_back([&, w, lo, hi] { parts[w] = run_slice(lo, hi); });
    }
  }
  Distribution out(p);
  for (const auto& part : parts) out.merge(part);
  return out;
}

Distribution enumerate_linear_combination(std::span<const std::uint64_t> coeffs, std::uint64_t p,
                                          std::uint64_t budget) {
  return enumerate_mixed_combination(coeffs, {}, p, p, budget);
}

bool mixed_combination_hypothesis(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b,
                                  std::uint64_t p, std::uint64_t q) {
  if (a.empty() || q > p) return false;
  auto nonzero = [p](std::uint64_t c) { return c % p != 0; };
  return std::all_of(a.begin(), a.end(), nonzero) && std::all_of(b.begin(), b.end(), nonzero);
}

Distribution sample_mixed_combination(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b,
                                      std::uint64_t p, std::uint64_t q, std::uint64_t draws, RandomSource& rng) {
  check_modulus(p);
  Distribution out(p);
  for (std::uint64_t d = 0; d < draws; ++d) {
    std::uint64_t acc = 0;
    for (auto c : a) acc = (acc + (c % p) * rng.uniform_below(p)) % p;
    for (auto c : b) acc = (acc + (c % p) * rng.uniform_below(q)) % p;
    out.add(acc);
  }
  return out;
}

Distribution sample_linear_combination(std::span<const std::uint64_t> coeffs, std::uint64_t p, std::uint64_t draws,
                                       RandomSource& rng) {
  return sample_mixed_combination(coeffs, {}, p, p, draws, rng);
}

ChiSquareResult chi_square_uniformity(const Distribution& samples, double alpha) {
  if (!(alpha > 0 && alpha < 1)) throw Error(Errc::InvalidArgument, "alpha must lie in (0, 1)");
  if (samples.support() < 2) throw Error(Errc::InvalidArgument, "need at least two cells");
  const double expected = static_cast<double>(samples.total()) / static_cast<double>(samples.support());
  if (expected < 5) throw Error(Errc::TooSparse, "expected count per cell is below 5");

  ChiSquareResult out;
  for (auto c : samples.counts()) {
    const double diff = static_cast<double>(c) - expected;
    out.statistic += diff * diff / expected;
  }
  out.dof = static_cast<unsigned>(samples.support() - 1);
  out.alpha = alpha;
  boost::math::chi_squared dist(out.dof);
  out.critical = boost::math::quantile(boost::math::complement(dist, alpha));
  out.pass = out.statistic <= out.critical;
  return out;
}

Rational probability_bound(std::uint64_t p, std::uint64_t q) {
  Rational r(static_cast<unsigned long>(p / q + 1), static_cast<unsigned long>(p));
  r.canonicalize();
  return r;
}

double information_bound(std::uint64_t p, std::uint64_t q) {
  const Rational ratio = Rational(static_cast<unsigned long>(q)) * probability_bound(p, q);
  return log2_of(ratio);
}

TinyScheme TinyScheme::with_default_identities(std::uint64_t p, std::uint64_t q, unsigned t, unsigned n) {
  TinyScheme s{p, q, t, {}};
  for (unsigned i = 0; i <= n; ++i) s.identities.push_back(i + 1);
  return s;
}

bool TinyScheme::correctness_margin() const {
  return static_cast<unsigned __int128>(p) > static_cast<unsigned __int128>(n()) * q * q;
}

LeakageReport leakage_below_threshold(const TinyScheme& scheme, std::span<const unsigned> known,
                                      std::uint64_t budget) {
  validate(scheme);
  for (unsigned i : known)
    if (i < 1 || i > scheme.n()) throw Error(Errc::InvalidArgument, "known share index outside 1..n");
  std::vector<unsigned> sorted(known.begin(), known.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw Error(Errc::DuplicateIndex, "known share listed twice");
  const std::uint64_t tuples = checked_pow(scheme.p, scheme.t);
  check_budget(tuples, budget);
  checked_mul(tuples, checked_pow(scheme.p, scheme.t - 1));
  checked_pow(scheme.p, sorted.size());

  Joint joint(scheme.q);
  std::vector<std::uint64_t> view(sorted.size());
  std::uint64_t evaluated = 0;
  for_each_dealer(scheme, [&](const DealerCase& d) {
    for (std::size_t k = 0; k < sorted.size(); ++k) view[k] = d.shares[sorted[k] - 1];
    joint.add(pack(view, scheme.p), d.s, d.weight);
    ++evaluated;
  });

  LeakageReport r;
  r.claim = "shares-below-threshold";
  r.observed = sorted;
  r.m = static_cast<unsigned>(sorted.size());
  fill_common(r, scheme, joint.summarize());
  r.evaluated = evaluated;
  return r;
}

LeakageReport ipa_success_probability(const TinyScheme& scheme, unsigned m, ForgeStrategy strategy,
                                      std::uint64_t forged_value, std::uint64_t budget) {
  validate(scheme);
  check_participants(scheme, m);
  const std::uint64_t p = scheme.p;
  const std::uint64_t q = scheme.q;
  if (strategy == ForgeStrategy::Fixed && forged_value >= p)
    throw Error(Errc::InvalidArgument, "forged component must lie in F_p");
  checked_pow(p, m - 1);

  // weight[s][x]: mass of (secret s, honest partial sum x).
  std::vector<std::vector<std::uint64_t>> partial(q, std::vector<std::uint64_t>(p, 0));
  Joint adaptive(q);
  std::uint64_t honest_hits = 0;
  std::uint64_t total = 0;
  std::uint64_t evaluated = 0;
  for_each_component_tuple(
      scheme, m, budget,
      [&](std::uint64_t s, std::uint64_t w, std::span<const std::uint64_t> comps) {
        std::uint64_t honest_sum = 0;
        for (unsigned i = 0; i + 1 < m; ++i) honest_sum = (honest_sum + comps[i]) % p;
        partial[s][honest_sum] += w;
        adaptive.add(pack(comps.first(m - 1), p), s, w);
        if ((honest_sum + comps[m - 1]) % p % q == s) honest_hits += w;
        total += w;
      },
      evaluated);

  auto success_of = [&](std::uint64_t forged) {
    std::uint64_t hits = 0;
    for (std::uint64_t s = 0; s < q; ++s)
      for (std::uint64_t x = 0; x < p; ++x)
        if ((x + forged) % p % q == s) hits += partial[s][x];
    return hits;
  };

  LeakageReport r;
  r.claim = "illegal-participant";
  r.m = m;
  const Joint::Summary view = adaptive.summarize();
  fill_common(r, scheme, view);
  r.adaptive_success = view.success;
  r.honest_success = ratio(honest_hits, total);

  std::uint64_t hits = 0;
  switch (strategy) {
    case ForgeStrategy::Exhaustive: {
      std::uint64_t best = 0;
      for (std::uint64_t c = 0; c < p; ++c) {
        const std::uint64_t h = success_of(c);
        if (h > hits || c == 0) hits = h, best = c;
      }
      r.best_forgery = best;
      break;
    }
    case ForgeStrategy::Fixed:
      hits = success_of(forged_value);
      r.best_forgery = forged_value;
      break;
    case ForgeStrategy::Honest:
      hits = honest_hits;
      break;
  }
  r.success_probability = ratio(hits, total);
  r.evaluated = evaluated;
  return r;
}

LeakageReport subset_component_leakage(const TinyScheme& scheme, unsigned m, unsigned j, std::uint64_t budget) {
  validate(scheme);
  check_participants(scheme, m);
  if (j > m) throw Error(Errc::InvalidArgument, "subset larger than the component set");
  checked_pow(scheme.p, j);

  std::vector<std::vector<unsigned>> subsets;
  std::vector<unsigned> pick(j);
  for (unsigned i = 0; i < j; ++i) pick[i] = i;
  for (;;) {
    subsets.push_back(pick);
    int k = static_cast<int>(j) - 1;
    while (k >= 0 && pick[k] == m - j + k) --k;
    if (k < 0) break;
    ++pick[k];
    for (unsigned i = k + 1; i < j; ++i) pick[i] = pick[i - 1] + 1;
  }

  std::vector<Joint> joints(subsets.size(), Joint(scheme.q));
  std::vector<std::uint64_t> view(j);
  std::uint64_t evaluated = 0;
  for_each_component_tuple(
      scheme, m, budget,
      [&](std::uint64_t s, std::uint64_t w, std::span<const std::uint64_t> comps) {
        for (std::size_t k = 0; k < subsets.size(); ++k) {
          for (unsigned i = 0; i < j; ++i) view[i] = comps[subsets[k][i]];
          joints[k].add(pack(view, scheme.p), s, w);
        }
      },
      evaluated);

  LeakageReport r;
  r.claim = "component-subset";
  r.m = m;
  r.observed = {j};
  bool first = true;
  for (std::size_t k = 0; k < subsets.size(); ++k) {
    const Joint::Summary summary = joints[k].summarize();
    LeakageReport one;
    fill_common(one, scheme, summary);
    SubsetLeakage entry;
    for (unsigned i : subsets[k]) entry.indices.push_back(i + 1);
    entry.mutual_information = one.mutual_information;
    entry.success_probability = one.success_probability;
    r.subsets.push_back(std::move(entry));
    if (first || one.mutual_information > r.mutual_information) {
      const auto keep_success = first ? one.success_probability : std::max(r.success_probability, one.success_probability);
      const auto keep_worst = first ? one.worst_posterior : std::max(r.worst_posterior, one.worst_posterior);
      const bool keep_determined = first ? one.secret_determined : r.secret_determined && one.secret_determined;
      fill_common(r, scheme, summary);
      r.success_probability = keep_success;
      r.worst_posterior = keep_worst;
      r.secret_determined = keep_determined;
    } else {
      r.success_probability = std::max(r.success_probability, one.success_probability);
      r.worst_posterior = std::max(r.worst_posterior, one.worst_posterior);
      r.secret_determined = r.secret_determined && one.secret_determined;
    }
    first = false;
  }
  r.evaluated = evaluated;
  return r;
}

}  // namespace tcss::analysis
