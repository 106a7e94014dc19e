#pragma once

#include <optional>
#include <span>
#include <vector>

#include "tcss/field.hpp"

namespace tcss {

using Column = std::vector<FieldElement>;

// Public t x (n+1) generator matrix of an [n+1, t] code over F_p. Column 0
// defines the secret, columns 1..n the shares.
class GeneratorMatrix {
 public:
  // Arbitrary matrix; checks shape and that every column is nonzero.
  GeneratorMatrix(unsigned t, std::vector<Column> columns);

  unsigned t() const noexcept { return t_; }
  unsigned n() const noexcept { return static_cast<unsigned>(columns_.size()) - 1; }
  const BigInt& p() const noexcept { return *p_; }
  const std::shared_ptr<const BigInt>& p_ptr() const noexcept { return p_; }

  const Column& column(unsigned i) const { return columns_.at(i); }
  const std::vector<Column>& columns() const noexcept { return columns_; }

  // U_0..U_n when built by build_vandermonde.
  const std::optional<std::vector<FieldElement>>& identities() const noexcept { return identities_; }
  bool is_vandermonde() const noexcept { return identities_.has_value(); }

 private:
  friend GeneratorMatrix build_vandermonde(std::span<const FieldElement>, unsigned);
  GeneratorMatrix() = default;

  unsigned t_ = 0;
  std::shared_ptr<const BigInt> p_;
  std::vector<Column> columns_;
  std::optional<std::vector<FieldElement>> identities_;
};

// Column i = (1, U_i, ..., U_i^{t-1}). Needs n+1 distinct nonzero identities
// and 2 <= t <= n.
GeneratorMatrix build_vandermonde(std::span<const FieldElement> identities, unsigned t);

// True iff every t-subset of columns is linearly independent. Exponential in
// n; refuses n > 16 with TooLarge.
bool verify_rank(const GeneratorMatrix& g);

// Determinant of a square matrix given as columns.
FieldElement determinant(std::vector<Column> columns);

// Solves sum_j x_j * columns[j] = rhs for a square, nonsingular system.
std::vector<FieldElement> solve_linear_system(std::vector<Column> columns, Column rhs);

enum class CoefficientRule { Lagrange, FixOnes };

// Public weights {b_i} with sum_{i in I_m} b_i g_i = g_0 (mod p).
struct CoefficientSet {
  std::vector<unsigned> participants;  // ascending
  std::vector<FieldElement> coefficients;  // parallel to participants
  CoefficientRule rule = CoefficientRule::Lagrange;

  const FieldElement& at(unsigned index) const;
  bool operator==(const CoefficientSet&) const = default;
};

// Sorted copy of I_m after checking range 1..n and uniqueness.
std::vector<unsigned> normalize_participants(std::span<const unsigned> indices, unsigned n);

// b_i = prod_{j != i} (U_0 - U_j) / (U_i - U_j).
CoefficientSet lagrange_coefficients(const GeneratorMatrix& g, std::span<const unsigned> indices);

// First m-t coefficients (ascending index order) fixed to a constant, the
// last t solved by Gaussian elimination. The constant starts at 1 and is
// bumped while any solved coefficient is zero.
CoefficientSet solve_coefficients_general(const GeneratorMatrix& g, std::span<const unsigned> indices);

// Lagrange for Vandermonde matrices, the general rule otherwise.
CoefficientSet canonical_coefficients(const GeneratorMatrix& g, std::span<const unsigned> indices);

bool combines_to_secret_column(const GeneratorMatrix& g, const CoefficientSet& coeffs);

}  // namespace tcss
