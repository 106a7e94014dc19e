#include "tcss/field.hpp"

#include <array>
#include <vector>

#include "tcss/error.hpp"

namespace tcss {
namespace {

constexpr unsigned kMillerRabinRounds = 40;
constexpr unsigned long kTrialDivisionLimit = 1UL << 20;

const std::vector<unsigned long>& small_primes() {
  // Primes below 2^10 cover trial division for every n < 2^20.
  static const std::vector<unsigned long> primes = [] {
    std::vector<unsigned long> out;
    std::array<bool, 1024> composite{};
    for (unsigned long i = 2; i < composite.size(); ++i) {
      if (composite[i]) continue;
      out.push_back(i);
      for (unsigned long j = i * i; j < composite.size(); j += i) composite[j] = true;
    }
    return out;
  }();
  return primes;
}

}  // namespace

BigInt parse_decimal(const std::string& text) {
  if (text.empty() || (text.size() > 1 && text[0] == '0'))
    throw Error(Errc::ParseError, "bad decimal integer '" + text + "'");
  for (char c : text)
    if (c < '0' || c > '9') throw Error(Errc::ParseError, "bad decimal integer '" + text + "'");
  return BigInt(text, 10);
}

std::string to_decimal(const BigInt& value) {
  if (value < 0) throw Error(Errc::InvalidArgument, "negative integers have no encoding");
  return value.get_str(10);
}

std::size_t bit_length(const BigInt& value) {
  if (value == 0) return 0;
  return mpz_sizeinbase(value.get_mpz_t(), 2);
}

bool is_probable_prime(const BigInt& n) {
  if (n < 2) return false;
  if (n < kTrialDivisionLimit) {
    const unsigned long v = n.get_ui();
    for (unsigned long d : small_primes()) {
      if (d * d > v) break;
      if (v % d == 0) return false;
    }
    return true;
  }
  for (unsigned long d : small_primes())
    if (mpz_divisible_ui_p(n.get_mpz_t(), d)) return false;
  return mpz_probab_prime_p(n.get_mpz_t(), kMillerRabinRounds) > 0;
}

BigInt next_prime_above(const BigInt& n) {
  BigInt c = n + 1;
  if (c <= 2) return 2;
  if (mpz_even_p(c.get_mpz_t())) ++c;
  while (!is_probable_prime(c)) c += 2;
  return c;
}

FieldElement::FieldElement(BigInt value, std::shared_ptr<const BigInt> modulus)
    : value_(std::move(value)), modulus_(std::move(modulus)) {
  if (!modulus_ || *modulus_ < 2) throw Error(Errc::InvalidArgument, "modulus must be >= 2");
  mpz_mod(value_.get_mpz_t(), value_.get_mpz_t(), modulus_->get_mpz_t());
}

FieldElement::FieldElement(const BigInt& value, const BigInt& modulus)
    : FieldElement(value, std::make_shared<const BigInt>(modulus)) {}

bool FieldElement::same_field(const FieldElement& other) const noexcept {
  return modulus_ == other.modulus_ || *modulus_ == *other.modulus_;
}

void FieldElement::check_field(const FieldElement& rhs) const {
  if (!same_field(rhs)) throw Error(Errc::InvalidArgument, "operands from different fields");
}

FieldElement FieldElement::operator+(const FieldElement& rhs) const {
  FieldElement out(*this);
  out += rhs;
  return out;
}

FieldElement FieldElement::operator-(const FieldElement& rhs) const {
  FieldElement out(*this);
  out -= rhs;
  return out;
}

FieldElement FieldElement::operator*(const FieldElement& rhs) const {
  FieldElement out(*this);
  out *= rhs;
  return out;
}

FieldElement FieldElement::operator-() const {
  if (value_ == 0) return *this;
  return FieldElement(*modulus_ - value_, modulus_);
}

FieldElement& FieldElement::operator+=(const FieldElement& rhs) {
  check_field(rhs);
  value_ += rhs.value_;
  if (value_ >= *modulus_) value_ -= *modulus_;
  return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& rhs) {
  check_field(rhs);
  value_ -= rhs.value_;
  if (value_ < 0) value_ += *modulus_;
  return *this;
}

FieldElement& FieldElement::operator*=(const FieldElement& rhs) {
  check_field(rhs);
  value_ *= rhs.value_;
  mpz_mod(value_.get_mpz_t(), value_.get_mpz_t(), modulus_->get_mpz_t());
  return *this;
}

FieldElement FieldElement::pow(const BigInt& exponent) const {
  if (exponent < 0) return inverse().pow(-exponent);
  BigInt out;
  mpz_powm(out.get_mpz_t(), value_.get_mpz_t(), exponent.get_mpz_t(), modulus_->get_mpz_t());
  return FieldElement(std::move(out), modulus_);
}

FieldElement FieldElement::inverse() const {
  if (value_ == 0) throw Error(Errc::ZeroInverse, "zero has no multiplicative inverse");
  BigInt out;
  if (mpz_invert(out.get_mpz_t(), value_.get_mpz_t(), modulus_->get_mpz_t()) == 0)
    throw Error(Errc::ZeroInverse, "element not invertible modulo " + to_decimal(*modulus_));
  return FieldElement(std::move(out), modulus_);
}

FieldElement mod_inverse(const FieldElement& a) { return a.inverse(); }

BigInt random_below(const BigInt& bound, RandomSource& rng) {
  if (bound < 1) throw Error(Errc::InvalidArgument, "random_below needs bound >= 1");
  if (bound == 1) return 0;
  const BigInt top = bound - 1;
  const std::size_t bits = bit_length(top);
  const std::size_t bytes = (bits + 7) / 8;
  const unsigned excess = static_cast<unsigned>(bytes * 8 - bits);
  std::vector<std::uint8_t> buf(bytes);
  BigInt candidate;
  for (;;) {
    rng.fill(buf);
    buf[0] &= static_cast<std::uint8_t>(0xFFu >> excess);
    mpz_import(candidate.get_mpz_t(), buf.size(), 1, 1, 1, 0, buf.data());
    if (candidate < bound) return candidate;
  }
}

FieldElement random_field_element(const std::shared_ptr<const BigInt>& modulus, RandomSource& rng) {
  if (!modulus || *modulus < 2) throw Error(Errc::InvalidArgument, "modulus must be >= 2");
  return FieldElement(random_below(*modulus, rng), modulus);
}

FieldElement random_field_element(const BigInt& modulus, RandomSource& rng) {
  return random_field_element(std::make_shared<const BigInt>(modulus), rng);
}

PrimePair prime_pair_for_q(unsigned n, const BigInt& q) {
  if (n < 1) throw Error(Errc::InvalidArgument, "n must be positive");
  if (!is_probable_prime(q)) throw Error(Errc::InvalidArgument, "q = " + to_decimal(q) + " is not prime");
  const BigInt floor = n * q * q;
  const BigInt ceiling = q * q * q;
  if (floor + 1 >= ceiling)
    throw Error(Errc::Infeasible, "empty interval (n*q^2, q^3) for q = " + to_decimal(q));
  BigInt p = next_prime_above(floor);
  if (p >= ceiling)
    throw Error(Errc::Infeasible, "no prime in (n*q^2, q^3) for q = " + to_decimal(q));
  return PrimePair{std::move(p), q, n};
}

PrimePair generate_prime_pair(unsigned n, unsigned q_bits, RandomSource& rng) {
  if (n < 2) throw Error(Errc::InvalidArgument, "n must be >= 2");
  if (q_bits < 8) throw Error(Errc::InvalidArgument, "q_bits must be >= 8");
  const BigInt low = BigInt(1) << (q_bits - 1);
  const BigInt high = BigInt(1) << q_bits;
  // q > n is necessary for (n*q^2, q^3) to be non-empty.
  if (high - 1 <= n)
    throw Error(Errc::Infeasible, "q_bits = " + std::to_string(q_bits) + " too small for n = " + std::to_string(n));

  constexpr int kAttempts = 256;
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    BigInt q = next_prime_above(low + random_below(low, rng) - 1);
    if (q >= high || q <= n) continue;
    try {
      PrimePair pair = prime_pair_for_q(n, q);
      // Keep p strictly longer than two q's so share size sits in (2, 3] q-lengths.
      if (bit_length(pair.p) > 2 * static_cast<std::size_t>(q_bits)) return pair;
    } catch (const Error& e) {
      if (e.code() != Errc::Infeasible) throw;
    }
  }
  throw Error(Errc::Infeasible, "no feasible prime pair found for q_bits = " + std::to_string(q_bits));
}

PrimePair validate_prime_pair(unsigned n, const BigInt& p, const BigInt& q) {
  if (n < 1) throw Error(Errc::InvalidArgument, "n must be positive");
  if (!is_probable_prime(q)) throw Error(Errc::Infeasible, "q = " + to_decimal(q) + " is not prime");
  if (!is_probable_prime(p)) throw Error(Errc::Infeasible, "p = " + to_decimal(p) + " is not prime");
  if (p <= n * q * q) throw Error(Errc::Infeasible, "p must exceed n*q^2");
  return PrimePair{p, q, n};
}

}  // namespace tcss
