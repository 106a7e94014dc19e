#pragma once

#include <span>
#include <string>
#include <vector>

#include "tcss/field.hpp"
#include "tcss/lincode.hpp"
#include "tcss/random.hpp"

namespace tcss {

// Public parameters: primes p > n*q^2, threshold t and the generator matrix.
class SchemeParams {
 public:
  SchemeParams(PrimePair primes, GeneratorMatrix generator);

  // Vandermonde matrix over U_i = i + 1 (so U_0 = 1).
  static SchemeParams with_default_identities(PrimePair primes, unsigned t, unsigned n);
  static SchemeParams with_identities(PrimePair primes, unsigned t, std::span<const BigInt> identities);

  const BigInt& p() const noexcept { return generator_.p(); }
  const BigInt& q() const noexcept { return primes_.q; }
  const std::shared_ptr<const BigInt>& p_ptr() const noexcept { return generator_.p_ptr(); }
  unsigned t() const noexcept { return generator_.t(); }
  unsigned n() const noexcept { return generator_.n(); }
  const PrimePair& primes() const noexcept { return primes_; }
  const GeneratorMatrix& generator() const noexcept { return generator_; }
  bool in_share_size_regime() const { return primes_.in_share_size_regime(); }

  // Hex SHA-256 of the canonical JSON encoding.
  const std::string& digest() const noexcept { return digest_; }

 private:
  PrimePair primes_;
  GeneratorMatrix generator_;
  std::string digest_;
};

struct DealerSecret {
  std::vector<FieldElement> v;  // private row vector, never all zero
  BigInt s;                     // s = v . g_0 mod p, s < q
};

struct Share {
  unsigned index = 0;
  FieldElement value;
};

struct Dealing {
  DealerSecret secret;
  std::vector<Share> shares;  // indices 1..n
};

// Picks v uniformly among the nonzero vectors with v . g_0 = s and hands out
// s_i = v . g_i for i = 1..n.
Dealing share_generation(const BigInt& s, const SchemeParams& params, RandomSource& rng);

// Dealing for a caller-chosen v. Rejects v = 0 and v with v . g_0 >= q.
Dealing deal_from_vector(const SchemeParams& params, std::vector<FieldElement> v);

// Identifies one reconstruction run: the participant set I_m, an optional
// nonce, and a digest binding both to the parameters.
struct SessionBinding {
  std::vector<unsigned> participants;  // ascending
  std::string nonce;                   // lowercase hex, may be empty
  std::string digest;

  bool operator==(const SessionBinding&) const = default;
};

SessionBinding bind_session(const SchemeParams& params, std::span<const unsigned> participants,
                            std::string nonce = {});
std::string fresh_nonce(RandomSource& rng);
// Recomputes the digest; false when the binding belongs to other parameters
// or was altered.
bool binding_matches(const SchemeParams& params, const SessionBinding& session);

struct Component {
  unsigned index = 0;
  FieldElement value;
  SessionBinding session;
};

// c_i = (b_i s_i + r_i q) mod p with r_i uniform in F_q.
Component construct_component(const Share& share, const SchemeParams& params, const SessionBinding& session,
                              RandomSource& rng);
// Same with precomputed coefficients and an explicit mask r_i in [0, q).
Component construct_component(const Share& share, const SchemeParams& params, const SessionBinding& session,
                              const CoefficientSet& coeffs, const BigInt& mask);

// sum_j c_j mod p after checking that the components form exactly one
// complete session.
FieldElement combine_components(std::span<const Component> components, const SchemeParams& params);

// (sum_j c_j mod p) mod q.
BigInt reconstruct(std::span<const Component> components, const SchemeParams& params);

}  // namespace tcss
