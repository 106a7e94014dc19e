#include "tcss/lincode.hpp"

#include <algorithm>
#include <set>

#include "tcss/error.hpp"

namespace tcss {
namespace {

using Row = std::vector<FieldElement>;

// Row-major copy of a column list, optionally with an augmented column.
std::vector<Row> to_rows(const std::vector<Column>& columns, const Column* rhs) {
  const std::size_t height = columns.front().size();
  std::vector<Row> rows;
  rows.reserve(height);
  for (std::size_t r = 0; r < height; ++r) {
    Row row;
    row.reserve(columns.size() + (rhs ? 1 : 0));
    for (const auto& c : columns) row.push_back(c.at(r));
    if (rhs) row.push_back(rhs->at(r));
    rows.push_back(std::move(row));
  }
  return rows;
}

// Forward elimination over the first `width` columns. Returns false if a
// pivot is missing; `sign_flips` counts row swaps.
bool eliminate(std::vector<Row>& rows, std::size_t width, int& sign_flips) {
  const std::size_t height = rows.size();
  for (std::size_t col = 0; col < width; ++col) {
    std::size_t pivot = col;
    while (pivot < height && rows[pivot][col].is_zero()) ++pivot;
    if (pivot == height) return false;
    if (pivot != col) {
      std::swap(rows[pivot], rows[col]);
      ++sign_flips;
    }
    const FieldElement inv = rows[col][col].inverse();
    for (std::size_t r = col + 1; r < height; ++r) {
      if (rows[r][col].is_zero()) continue;
      const FieldElement factor = rows[r][col] * inv;
      for (std::size_t k = col; k < rows[r].size(); ++k) rows[r][k] -= factor * rows[col][k];
    }
  }
  return true;
}

void check_square(const std::vector<Column>& columns) {
  if (columns.empty()) throw Error(Errc::BadDimensions, "empty matrix");
  for (const auto& c : columns)
    if (c.size() != columns.size()) throw Error(Errc::BadDimensions, "matrix is not square");
}

}  // namespace

GeneratorMatrix::GeneratorMatrix(unsigned t, std::vector<Column> columns) : t_(t), columns_(std::move(columns)) {
  if (columns_.size() < 2) throw Error(Errc::BadDimensions, "need at least g_0 and g_1");
  if (t_ < 1 || t_ > n()) throw Error(Errc::BadDimensions, "need 1 <= t <= n");
  p_ = columns_.front().empty() ? nullptr : columns_.front().front().modulus_ptr();
  if (!p_) throw Error(Errc::BadDimensions, "empty column");
  for (auto& col : columns_) {
    if (col.size() != t_) throw Error(Errc::BadDimensions, "every column needs t entries");
    bool nonzero = false;
    for (auto& e : col) {
      if (!e.same_field(col.front()) || *e.modulus_ptr() != *p_)
        throw Error(Errc::InvalidArgument, "mixed moduli in generator matrix");
      e = FieldElement(e.value(), p_);
      nonzero = nonzero || !e.is_zero();
    }
    if (!nonzero) throw Error(Errc::InvalidArgument, "generator matrix has a zero column");
  }
}

GeneratorMatrix build_vandermonde(std::span<const FieldElement> identities, unsigned t) {
  if (identities.size() < 2) throw Error(Errc::BadDimensions, "need identities U_0..U_n with n >= 1");
  const unsigned n = static_cast<unsigned>(identities.size()) - 1;
  if (t < 2 || t > n) throw Error(Errc::BadDimensions, "need 2 <= t <= n, got t=" + std::to_string(t) + " n=" + std::to_string(n));

  auto p = identities.front().modulus_ptr();
  std::set<BigInt> seen;
  std::vector<FieldElement> ids;
  ids.reserve(identities.size());
  for (const auto& u : identities) {
    if (*u.modulus_ptr() != *p) throw Error(Errc::InvalidArgument, "identities from different fields");
    if (u.is_zero()) throw Error(Errc::ZeroIdentity, "identities must lie in F_p^*");
    if (!seen.insert(u.value()).second)
      throw Error(Errc::DuplicateIdentity, "identity " + to_decimal(u.value()) + " repeated");
    ids.emplace_back(u.value(), p);
  }

  GeneratorMatrix g;
  g.t_ = t;
  g.p_ = p;
  g.columns_.reserve(ids.size());
  for (const auto& u : ids) {
    Column col;
    col.reserve(t);
    FieldElement power(1, p);
    for (unsigned k = 0; k < t; ++k) {
      col.push_back(power);
      power *= u;
    }
    g.columns_.push_back(std::move(col));
  }
  g.identities_ = std::move(ids);
  return g;
}

FieldElement determinant(std::vector<Column> columns) {
  check_square(columns);
  auto rows = to_rows(columns, nullptr);
  int flips = 0;
  const auto& p = columns.front().front().modulus_ptr();
  if (!eliminate(rows, rows.size(), flips)) return FieldElement(0, p);
  FieldElement det(1, p);
  for (std::size_t i = 0; i < rows.size(); ++i) det *= rows[i][i];
  return flips % 2 ? -det : det;
}

std::vector<FieldElement> solve_linear_system(std::vector<Column> columns, Column rhs) {
  check_square(columns);
  if (rhs.size() != columns.size()) throw Error(Errc::BadDimensions, "rhs height mismatch");
  auto rows = to_rows(columns, &rhs);
  const std::size_t size = rows.size();
  int flips = 0;
  if (!eliminate(rows, size, flips)) throw Error(Errc::Singular, "coefficient system is singular");

  const auto& p = rhs.front().modulus_ptr();
  std::vector<FieldElement> x(size, FieldElement(0, p));
  for (std::size_t i = size; i-- > 0;) {
    FieldElement acc = rows[i][size];
    for (std::size_t k = i + 1; k < size; ++k) acc -= rows[i][k] * x[k];
    x[i] = acc * rows[i][i].inverse();
  }
  return x;
}

bool verify_rank(const GeneratorMatrix& g) {
  constexpr unsigned kMaxColumns = 16;
  if (g.n() > kMaxColumns) throw Error(Errc::TooLarge, "verify_rank is limited to n <= 16");
  const unsigned total = g.n() + 1;
  const unsigned t = g.t();
  // Walk every t-subset of {0..n} in lexicographic order.
  std::vector<unsigned> pick(t);
  for (unsigned i = 0; i < t; ++i) pick[i] = i;
  for (;;) {
    std::vector<Column> cols;
    cols.reserve(t);
    for (unsigned i : pick) cols.push_back(g.column(i));
    if (determinant(std::move(cols)).is_zero()) return false;

    int k = static_cast<int>(t) - 1;
    while (k >= 0 && pick[k] == total - t + k) --k;
    if (k < 0) return true;
    ++pick[k];
    for (unsigned j = k + 1; j < t; ++j) pick[j] = pick[j - 1] + 1;
  }
}

const FieldElement& CoefficientSet::at(unsigned index) const {
  auto it = std::lower_bound(participants.begin(), participants.end(), index);
  if (it == participants.end() || *it != index)
    throw Error(Errc::NotAParticipant, "index " + std::to_string(index) + " not in coefficient set");
  return coefficients[static_cast<std::size_t>(it - participants.begin())];
}

std::vector<unsigned> normalize_participants(std::span<const unsigned> indices, unsigned n) {
  std::vector<unsigned> sorted(indices.begin(), indices.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw Error(Errc::DuplicateIndex, "participant index repeated");
  for (unsigned i : sorted)
    if (i < 1 || i > n) throw Error(Errc::InvalidArgument, "participant index " + std::to_string(i) + " outside 1..n");
  return sorted;
}

CoefficientSet lagrange_coefficients(const GeneratorMatrix& g, std::span<const unsigned> indices) {
  if (!g.is_vandermonde()) throw Error(Errc::NotVandermonde, "matrix carries no identities");
  auto participants = normalize_participants(indices, g.n());
  if (participants.size() < g.t()) throw Error(Errc::TooFew, "need at least t participants");

  const auto& ids = *g.identities();
  const auto& u0 = ids[0];
  CoefficientSet out;
  out.rule = CoefficientRule::Lagrange;
  out.coefficients.reserve(participants.size());
  for (unsigned i : participants) {
    FieldElement num(1, g.p_ptr());
    FieldElement den(1, g.p_ptr());
    for (unsigned j : participants) {
      if (j == i) continue;
      num *= u0 - ids[j];
      den *= ids[i] - ids[j];
    }
    out.coefficients.push_back(num * den.inverse());
  }
  out.participants = std::move(participants);
  return out;
}

CoefficientSet solve_coefficients_general(const GeneratorMatrix& g, std::span<const unsigned> indices) {
  auto participants = normalize_participants(indices, g.n());
  const std::size_t m = participants.size();
  const unsigned t = g.t();
  if (m < t) throw Error(Errc::TooFew, "need at least t participants");
  const std::size_t fixed = m - t;
  const auto& p = g.p_ptr();

  Column fixed_sum(t, FieldElement(0, p));
  for (std::size_t k = 0; k < fixed; ++k)
    for (unsigned r = 0; r < t; ++r) fixed_sum[r] += g.column(participants[k])[r];

  std::vector<Column> system;
  system.reserve(t);
  for (std::size_t k = fixed; k < m; ++k) system.push_back(g.column(participants[k]));

  // Each solved coefficient is affine in the fixed value, so it vanishes for
  // at most one choice unless it vanishes for all of them. Trying t+1 values
  // (capped at p-1) therefore decides the same as trying all p-1.
  const BigInt attempts = fixed == 0 ? BigInt(1) : BigInt(std::min<BigInt>(g.p() - 1, BigInt(t + 1)));
  for (BigInt f = 1; f <= attempts; ++f) {
    const FieldElement fixed_value(f, p);
    Column rhs = g.column(0);
    for (unsigned r = 0; r < t; ++r) rhs[r] -= fixed_value * fixed_sum[r];
    auto solved = solve_linear_system(system, std::move(rhs));
    if (std::any_of(solved.begin(), solved.end(), [](const FieldElement& b) { return b.is_zero(); })) continue;

    CoefficientSet out;
    out.rule = CoefficientRule::FixOnes;
    out.coefficients.assign(fixed, fixed_value);
    out.coefficients.insert(out.coefficients.end(), solved.begin(), solved.end());
    out.participants = std::move(participants);
    return out;
  }
  throw Error(Errc::ZeroCoefficient, "no choice of fixed coefficients gives all b_i in F_p^*");
}

CoefficientSet canonical_coefficients(const GeneratorMatrix& g, std::span<const unsigned> indices) {
  return g.is_vandermonde() ? lagrange_coefficients(g, indices) : solve_coefficients_general(g, indices);
}

bool combines_to_secret_column(const GeneratorMatrix& g, const CoefficientSet& coeffs) {
  Column acc(g.t(), FieldElement(0, g.p_ptr()));
  for (std::size_t k = 0; k < coeffs.participants.size(); ++k) {
    const auto& col = g.column(coeffs.participants[k]);
    for (unsigned r = 0; r < g.t(); ++r) acc[r] += coeffs.coefficients[k] * col[r];
  }
  return acc == g.column(0);
}

}  // namespace tcss
