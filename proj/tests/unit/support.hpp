#pragma once

#include <memory>
#include <vector>

#include "tcss/scheme.hpp"

namespace tcss::test {

inline std::shared_ptr<const BigInt> modulus(unsigned long p) { return std::make_shared<const BigInt>(p); }

inline std::vector<FieldElement> elements(std::initializer_list<unsigned long> values,
                                          const std::shared_ptr<const BigInt>& p) {
  std::vector<FieldElement> out;
  for (auto v : values) out.emplace_back(BigInt(v), p);
  return out;
}

inline std::vector<unsigned long> values_of(const std::vector<FieldElement>& xs) {
  std::vector<unsigned long> out;
  for (const auto& x : xs) out.push_back(x.value().get_ui());
  return out;
}

// p = 79, q = 5, n = 3, t = 2 with U = (1, 2, 3, 4).
inline SchemeParams small_params(unsigned t = 2) {
  return SchemeParams::with_default_identities(validate_prime_pair(3, 79, 5), t, 3);
}

// The v = (2, 1), s = 3 dealing over small_params().
inline Dealing hand_dealing(const SchemeParams& params) {
  return deal_from_vector(params, elements({2, 1}, params.p_ptr()));
}

}  // namespace tcss::test
