#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <string>

#include "tcss/random.hpp"

namespace tcss {

using BigInt = mpz_class;

BigInt parse_decimal(const std::string& text);
// No sign, no leading zeros.
std::string to_decimal(const BigInt& value);
std::size_t bit_length(const BigInt& value);

// Trial division below 2^20, otherwise small-prime sieve plus 40 rounds of
// GMP's probabilistic test (error well below 2^-80).
bool is_probable_prime(const BigInt& n);
BigInt next_prime_above(const BigInt& n);

// Element of Z/modulus. The modulus is shared between copies; all arithmetic
// requires both operands to live in the same field.
class FieldElement {
 public:
  FieldElement(BigInt value, std::shared_ptr<const BigInt> modulus);
  FieldElement(const BigInt& value, const BigInt& modulus);

  const BigInt& value() const noexcept { return value_; }
  const BigInt& modulus() const noexcept { return *modulus_; }
  const std::shared_ptr<const BigInt>& modulus_ptr() const noexcept { return modulus_; }

  bool is_zero() const noexcept { return value_ == 0; }
  bool same_field(const FieldElement& other) const noexcept;

  FieldElement operator+(const FieldElement& rhs) const;
  FieldElement operator-(const FieldElement& rhs) const;
  FieldElement operator*(const FieldElement& rhs) const;
  FieldElement operator-() const;
  FieldElement& operator+=(const FieldElement& rhs);
  FieldElement& operator-=(const FieldElement& rhs);
  FieldElement& operator*=(const FieldElement& rhs);

  FieldElement pow(const BigInt& exponent) const;
  FieldElement inverse() const;  // throws ZeroInverse

  bool operator==(const FieldElement& rhs) const noexcept {
    return same_field(rhs) && value_ == rhs.value_;
  }

 private:
  void check_field(const FieldElement& rhs) const;

  BigInt value_;
  std::shared_ptr<const BigInt> modulus_;
};

FieldElement mod_inverse(const FieldElement& a);

// Uniform in {0, ..., modulus-1} by rejection sampling (no modulo bias).
FieldElement random_field_element(const std::shared_ptr<const BigInt>& modulus, RandomSource& rng);
FieldElement random_field_element(const BigInt& modulus, RandomSource& rng);
BigInt random_below(const BigInt& bound, RandomSource& rng);

struct PrimePair {
  BigInt p;  // share-space modulus
  BigInt q;  // secret-space modulus
  unsigned n_max = 0;

  // q^3 > p, i.e. shares are between two and three times the secret size.
  bool in_share_size_regime() const { return p < q * q * q; }
};

// Random q of exactly q_bits bits and the smallest prime p > n*q^2, redrawing
// q until p < q^3 and p has more than 2*q_bits bits. Requires q_bits >= 8 and n >= 2.
PrimePair generate_prime_pair(unsigned n, unsigned q_bits, RandomSource& rng);

// Smallest prime p > n*q^2 for a given prime q; Infeasible when p >= q^3.
PrimePair prime_pair_for_q(unsigned n, const BigInt& q);

// Operator-supplied primes. Both must be prime and p > n*q^2; p >= q^3 is
// accepted, callers can query in_share_size_regime() to warn.
PrimePair validate_prime_pair(unsigned n, const BigInt& p, const BigInt& q);

}  // namespace tcss
