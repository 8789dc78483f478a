#pragma once

// Permutations, partitions and standard tableaux, and Clifton's construction
// of the irreducible representation matrices of S_n.

#include "pats/exactla.hpp"
#include "pats/linear_combination.hpp"

#include <compare>
#include <cstdint>
#include <deque>
#include <memory>
#include <shared_mutex>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace pats {

/// A permutation of {0, ..., n-1}; printed and parsed 1-based in one-line notation.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<int> images);

  static Permutation identity(int n);
  /// One-line notation, 1-based: "213" (n <= 9) or "2,1,3".
  static Permutation parse(std::string_view text);

  int degree() const noexcept { return static_cast<int>(images_.size()); }
  int operator()(int i) const { return images_[static_cast<std::size_t>(i)]; }
  std::span<const int> images() const noexcept { return images_; }

  int sign() const;
  Permutation inverse() const;
  bool is_identity() const;
  std::string to_string() const;

  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> images_;
};

/// (p o q)(i) = p(q(i)). Throws std::invalid_argument on a degree mismatch.
Permutation compose(const Permutation& p, const Permutation& q);
inline Permutation operator*(const Permutation& p, const Permutation& q) { return compose(p, q); }

/// All permutations of degree n in lexicographic order of their images.
std::vector<Permutation> all_permutations(int n);

class Partition {
 public:
  Partition() = default;
  explicit Partition(std::vector<int> parts);

  /// "421" or "4,2,1".
  static Partition parse(std::string_view text);

  int size() const noexcept { return size_; }
  int length() const noexcept { return static_cast<int>(parts_.size()); }
  const std::vector<int>& parts() const noexcept { return parts_; }
  int operator[](int i) const { return parts_[static_cast<std::size_t>(i)]; }
  std::string to_string() const;

  friend auto operator<=>(const Partition&, const Partition&) = default;

 private:
  std::vector<int> parts_;
  int size_ = 0;
};

/// Partitions of n, lexicographically decreasing by parts.
std::vector<Partition> partitions_of(int n);

class StandardTableau {
 public:
  StandardTableau(Partition shape, std::vector<std::vector<int>> rows);

  const Partition& shape() const noexcept { return shape_; }
  const std::vector<std::vector<int>>& rows() const noexcept { return rows_; }
  int row_of(int entry) const { return row_of_[static_cast<std::size_t>(entry)]; }
  int column_of(int entry) const { return column_of_[static_cast<std::size_t>(entry)]; }
  std::vector<int> reading_word() const;
  /// Rows separated by '/', entries 1-based.
  std::string to_string() const;

 private:
  Partition shape_;
  std::vector<std::vector<int>> rows_;  // 0-based entries
  std::vector<int> row_of_;
  std::vector<int> column_of_;
};

enum class TableauOrder { RowReadingLex, ReverseRowReadingLex };

/// Standard tableaux of the given shape, sorted by their row-reading words.
std::vector<StandardTableau> standard_tableaux(const Partition& shape,
                                               TableauOrder order = TableauOrder::RowReadingLex);

/// An element of the group algebra Q S_n.
class GroupAlgebraElement {
 public:
  explicit GroupAlgebraElement(int degree) : degree_(degree) {}

  void add(const Permutation& p, const Rational& c);
  int degree() const noexcept { return degree_; }
  const LinearCombination<Permutation, Rational>& terms() const noexcept { return terms_; }

  /// Left action of S_n: every term p becomes s o p.
  GroupAlgebraElement acted_on_by(const Permutation& s) const;

  friend bool operator==(const GroupAlgebraElement&, const GroupAlgebraElement&) = default;

 private:
  int degree_;
  LinearCombination<Permutation, Rational> terms_;
};

/// Entries of the Clifton matrices R_pi for one partition, memoized by tabloid.
///
/// Column j of R_pi depends on pi only through the row assignment of the
/// tableau pi T_j, so columns are cached per row assignment and shared
/// across all permutations.
class CliftonTable {
 public:
  explicit CliftonTable(Partition shape, TableauOrder order = TableauOrder::RowReadingLex);

  /// Process-wide table for (shape, order); safe to call from several threads.
  static std::shared_ptr<const CliftonTable> shared(const Partition& shape,
                                                    TableauOrder order = TableauOrder::RowReadingLex);

  const Partition& shape() const noexcept { return shape_; }
  int degree() const noexcept { return shape_.size(); }
  Index dimension() const noexcept { return static_cast<Index>(tableaux_.size()); }
  const std::vector<StandardTableau>& tableaux() const noexcept { return tableaux_; }

  /// Columns 0..d-1 of R_pi.
  std::vector<std::span<const std::int8_t>> raw_columns(const Permutation& pi) const;
  IntMatrix raw(const Permutation& pi) const;

  /// acc += c * R_pi
  template <ExactField F>
  void accumulate_raw(Matrix<typename F::Scalar>& acc, const typename F::Scalar& c, const Permutation& pi,
                      const F& field) const {
    const auto cols = raw_columns(pi);
    const auto minus_c = field.neg(c);
    for (Index j = 0; j < dimension(); ++j) {
      const auto& col = cols[static_cast<std::size_t>(j)];
      for (Index i = 0; i < dimension(); ++i) {
        const std::int8_t e = col[static_cast<std::size_t>(i)];
        if (e > 0)
          acc(i, j) = field.add(acc(i, j), c);
        else if (e < 0)
          acc(i, j) = field.add(acc(i, j), minus_c);
      }
    }
  }

 private:
  std::span<const std::int8_t> column_for(std::uint64_t key, std::span<const int> target_rows) const;
  int entry(const StandardTableau& t, std::span<const int> target_rows) const;

  Partition shape_;
  std::vector<StandardTableau> tableaux_;

  mutable std::shared_mutex mutex_;
  mutable std::unordered_map<std::uint64_t, std::size_t> index_;
  mutable std::deque<std::vector<std::int8_t>> columns_;
};

/// R^lambda_pi: entries 0, +1, -1 from the column/row clash rule.
IntMatrix clifton_raw(const Partition& shape, const Permutation& pi);

/// The irreducible representation rho_lambda over a field.
template <ExactField F>
class Representation {
 public:
  using Scalar = typename F::Scalar;

  Representation(const Partition& shape, F field, TableauOrder order = TableauOrder::RowReadingLex);

  const Partition& shape() const noexcept { return table_->shape(); }
  Index dimension() const noexcept { return table_->dimension(); }
  const F& field() const noexcept { return field_; }
  const CliftonTable& table() const noexcept { return *table_; }

  Matrix<Scalar> raw(const Permutation& pi) const;
  /// rho(pi) = (R_id)^-1 R_pi
  Matrix<Scalar> operator()(const Permutation& pi) const;
  Matrix<Scalar> of(const GroupAlgebraElement& g) const;

  void accumulate_raw(Matrix<Scalar>& acc, const Scalar& c, const Permutation& pi) const {
    table_->accumulate_raw(acc, c, pi, field_);
  }
  /// Turns a sum of raw Clifton matrices into the corresponding sum of rho's.
  Matrix<Scalar> normalize(const Matrix<Scalar>& raw_sum) const { return multiply(identity_inverse_, raw_sum, field_); }
  const Matrix<Scalar>& identity_inverse() const noexcept { return identity_inverse_; }
  Matrix<Scalar> zero() const { return Matrix<Scalar>::Constant(dimension(), dimension(), field_.zero()); }

 private:
  std::shared_ptr<const CliftonTable> table_;
  F field_;
  Matrix<Scalar> identity_inverse_;
};

template <ExactField F>
Matrix<typename F::Scalar> rep_matrix(const Partition& shape, const Permutation& pi, const F& field) {
  return Representation<F>(shape, field)(pi);
}

template <ExactField F>
Matrix<typename F::Scalar> rep_of_element(const Partition& shape, const GroupAlgebraElement& g, const F& field) {
  return Representation<F>(shape, field).of(g);
}

extern template class Representation<Rationals>;
extern template class Representation<PrimeField>;

}  // namespace pats
