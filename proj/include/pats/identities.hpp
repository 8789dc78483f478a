#pragma once

// Expansion of ternary monomials into the free dialgebra, expansion matrices,
// identity discovery through nullspaces, and the named identities.

#include "pats/dialgebra.hpp"
#include "pats/ternary.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pats {

/// A linear combination of straightened ternary monomials of one degree.
class TernaryPolynomial {
 public:
  using Terms = LinearCombination<TernaryMonomial, Rational>;

  explicit TernaryPolynomial(int degree) : TernaryPolynomial(degree, reduction_for_degree(degree)) {}
  TernaryPolynomial(int degree, Reduction level) : degree_(degree), level_(level) {}

  /// Adds c * straighten(m).
  void add(const TernaryMonomial& m, const Rational& c);
  /// Adds c * sum over sigma of sign(sigma) * pattern^sigma. Upper-case letters
  /// in the pattern are the permuted slots: X stands for sigma(x), and sigma
  /// runs over the permutations of the lower-case versions of those letters.
  void add_alternating_sum(std::string_view pattern, const Rational& c);

  int degree() const noexcept { return degree_; }
  Reduction level() const noexcept { return level_; }
  const Terms& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool empty() const noexcept { return terms_.empty(); }

  /// Variables renamed letterwise: letter c becomes to[from.find(c)].
  TernaryPolynomial renamed(std::string_view from, std::string_view to) const;
  /// Multilinear action: variable i (letter 'a'+i) becomes variable sigma(i).
  TernaryPolynomial permuted(const Permutation& sigma) const;
  /// Sorted distinct variables occurring, with multiplicity: "aaabcde".
  std::string variables() const;

  TernaryPolynomial& operator+=(const TernaryPolynomial& other);
  TernaryPolynomial& operator*=(const Rational& c);
  friend bool operator==(const TernaryPolynomial&, const TernaryPolynomial&) = default;

  std::string to_string() const;

 private:
  int degree_;
  Reduction level_;
  Terms terms_;
};

/// The signed dialgebra words of a monomial's expansion (before collecting).
std::vector<std::pair<DialgebraWord, int>> expand_terms(const TernaryMonomial& m,
                                                         const TernaryOperation& op = TernaryOperation::pats());

DialgebraPolynomial expand_pats(const TernaryMonomial& m);
DialgebraPolynomial expand(const TernaryMonomial& m, const TernaryOperation& op);
DialgebraPolynomial expand(const TernaryPolynomial& p, const TernaryOperation& op = TernaryOperation::pats());

/// Columns are the inequivalent monomials, rows the dialgebra words (center, then letters).
struct ExpansionMatrix {
  MonomialBasis basis;
  std::vector<DialgebraWord> rows;
  SparseIntMatrix matrix;

  Index row_count() const { return matrix.rows(); }
  Index col_count() const { return matrix.cols(); }
};

ExpansionMatrix build_expansion_matrix(int n, std::string vars, const TernaryOperation& op = TernaryOperation::pats());
ExpansionMatrix build_expansion_matrix(int n, std::string vars, Reduction level,
                                       const TernaryOperation& op = TernaryOperation::pats());

struct IdentityRecord {
  TernaryPolynomial polynomial;
  IntVector coefficients;  // in the basis's column order

  std::size_t term_count() const { return polynomial.size(); }
  /// Distinct absolute values of the coefficients, ascending.
  std::vector<std::int64_t> coefficient_magnitudes() const;
  /// 1-based type indices touched, ascending.
  std::vector<int> types(const MonomialBasis& basis) const;
};

struct IdentitySearch {
  ExpansionMatrix expansion;
  std::string field;  // "Q" or "F_p"
  Index rank = 0;
  std::vector<IdentityRecord> identities;  // by term count, then free column

  Index nullity() const { return static_cast<Index>(identities.size()); }
};

/// Nullspace of the expansion matrix. No modulus means exact rational arithmetic.
IdentitySearch find_identities(int n, std::string vars, std::optional<std::uint32_t> modulus,
                               const TernaryOperation& op = TernaryOperation::pats());
IdentitySearch find_identities(ExpansionMatrix expansion, std::optional<std::uint32_t> modulus);

/// Rank of an expansion matrix, over Q or F_p.
Index expansion_rank(const ExpansionMatrix& e, std::optional<std::uint32_t> modulus);

/// "P", "Q", "R" or "S"; throws std::invalid_argument otherwise.
TernaryPolynomial builtin_identity(std::string_view name);
/// The printed nonlinear identities: "I31111", "I22111.1", "I22111.2", "I211111.1" ... "I211111.5".
TernaryPolynomial nonlinear_identity(std::string_view name);
std::vector<std::string> nonlinear_identity_names();

/// The expansion vanishes.
bool is_identity(const TernaryPolynomial& p, const TernaryOperation& op = TernaryOperation::pats());

/// Coordinates of p in the basis's columns; throws if a term is not a column.
template <ExactField F>
RowVector<typename F::Scalar> coordinates(const TernaryPolynomial& p, const MonomialBasis& basis, const F& field) {
  RowVector<typename F::Scalar> v = RowVector<typename F::Scalar>::Constant(static_cast<Index>(basis.size()), field.zero());
  for (const auto& [m, c] : p.terms()) {
    const long j = basis.index_of(m);
    if (j < 0) throw std::invalid_argument(m.to_string() + " is not an inequivalent monomial");
    v(j) = field.add(v(j), field.from_rational(c));
  }
  return v;
}

/// Dimension of the span of all variable permutations of a multilinear p.
/// Computed mod p, or over Q when no modulus is given.
Index orbit_dimension(const TernaryPolynomial& p, std::optional<std::uint32_t> modulus = 101);

/// Rank of the union of the orbits of several multilinear polynomials of one degree,
/// together with extra vectors (e.g. a nullspace basis).
Index orbit_span_rank(const std::vector<TernaryPolynomial>& generators, const std::vector<TernaryPolynomial>& extra,
                      std::optional<std::uint32_t> modulus = 101);

/// The ten degree-9 consequences of a multilinear degree-7 identity: the
/// seven substitutions x -> (x,h,i) followed by (T,h,i), (h,T,i), (h,i,T).
std::vector<TernaryPolynomial> lift_to_degree9(const TernaryPolynomial& t);

}  // namespace pats
