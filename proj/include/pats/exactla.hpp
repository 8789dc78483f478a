#pragma once

// Dense exact linear algebra over the rationals and over prime fields.
//
// Matrices are plain Eigen row-major matrices whose scalar is the field's
// element type. All algorithms take the field as a policy object so the same
// elimination code serves both Q and F_p.

#include <Eigen/Core>
#include <Eigen/SparseCore>
#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>

#include <concepts>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace pats {

using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using BigInt = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                             boost::multiprecision::et_off>;

using Index = Eigen::Index;

template <class Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
template <class Scalar>
using RowVector = Eigen::Matrix<Scalar, 1, Eigen::Dynamic>;

using IntMatrix = Matrix<std::int64_t>;
using IntVector = RowVector<std::int64_t>;
using SparseIntMatrix = Eigen::SparseMatrix<std::int32_t, Eigen::RowMajor>;

std::string to_string(const Rational& q);
Rational parse_rational(const std::string& text);

/// The field of rational numbers.
class Rationals {
 public:
  using Scalar = Rational;

  static Scalar zero() { return Scalar(0); }
  static Scalar one() { return Scalar(1); }
  static Scalar from_int(long long v) { return Scalar(v); }
  static Scalar from_rational(const Rational& q) { return q; }
  static bool is_zero(const Scalar& a) { return a == 0; }
  static Scalar add(const Scalar& a, const Scalar& b) { return a + b; }
  static Scalar sub(const Scalar& a, const Scalar& b) { return a - b; }
  static Scalar mul(const Scalar& a, const Scalar& b) { return a * b; }
  static Scalar neg(const Scalar& a) { return -a; }
  static Scalar inv(const Scalar& a);
  static Scalar reduce(const Scalar& a) { return a; }

  // dst[i] += factor * src[i]
  static void axpy(Scalar* dst, const Scalar& factor, const Scalar* src, Index n);
  static void scale(Scalar* row, const Scalar& factor, Index n);

  // Clears denominators, divides by the content and makes the first nonzero
  // entry positive.
  static IntVector integral(std::span<const Scalar> v);

  static std::string name() { return "Q"; }
};

/// The prime field F_p for 2 < p < 2^16, with canonical residues in [0, p).
class PrimeField {
 public:
  using Scalar = std::int64_t;

  explicit PrimeField(std::uint32_t p);
  // Rejects p <= degree: the group algebra of S_degree must be semisimple.
  static PrimeField for_degree(std::uint32_t p, int degree);

  std::uint32_t modulus() const noexcept { return p_; }

  Scalar zero() const { return 0; }
  Scalar one() const { return 1; }
  Scalar from_int(long long v) const { return reduce(v); }
  Scalar from_rational(const Rational& q) const;
  static bool is_zero(Scalar a) { return a == 0; }
  Scalar add(Scalar a, Scalar b) const { return reduce(a + b); }
  Scalar sub(Scalar a, Scalar b) const { return reduce(a - b); }
  Scalar mul(Scalar a, Scalar b) const { return reduce(a * b); }
  Scalar neg(Scalar a) const { return a == 0 ? 0 : p_ - a; }
  Scalar inv(Scalar a) const;
  Scalar reduce(std::int64_t a) const {
    a %= static_cast<std::int64_t>(p_);
    return a < 0 ? a + p_ : a;
  }
  // Residue in (-p/2, p/2].
  std::int64_t lift(Scalar a) const { return a > p_ / 2 ? a - p_ : a; }

  // Both operands must be canonical residues.
  void axpy(Scalar* dst, Scalar factor, const Scalar* src, Index n) const;
  void scale(Scalar* row, Scalar factor, Index n) const;

  // Symmetric lift followed by sign normalization (first nonzero positive).
  IntVector integral(std::span<const Scalar> v) const;

  std::string name() const { return "F_" + std::to_string(p_); }

  std::uint32_t fastmod(std::uint32_t a) const {
    const std::uint64_t low = magic_ * a;
    return static_cast<std::uint32_t>((static_cast<__uint128_t>(low) * p_) >> 64);
  }

 private:
  std::uint32_t p_;
  std::uint64_t magic_;
};

template <class F>
concept ExactField = requires(const F& f, typename F::Scalar a) {
  { f.zero() } -> std::convertible_to<typename F::Scalar>;
  { f.is_zero(a) } -> std::convertible_to<bool>;
  { f.inv(a) } -> std::convertible_to<typename F::Scalar>;
  { f.integral(std::span<const typename F::Scalar>{}) } -> std::same_as<IntVector>;
};

template <class Scalar>
struct RowEchelon {
  Matrix<Scalar> form;         // reduced row echelon form, zero rows last
  Index rank = 0;
  std::vector<Index> pivots;   // pivot column of row r, r < rank
};

template <ExactField F, class Derived>
Matrix<typename F::Scalar> to_field(const F& field, const Eigen::MatrixBase<Derived>& m) {
  Matrix<typename F::Scalar> out(m.rows(), m.cols());
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) out(i, j) = field.from_int(static_cast<long long>(m(i, j)));
  return out;
}

template <ExactField F>
Matrix<typename F::Scalar> to_field(const F& field, const SparseIntMatrix& m) {
  Matrix<typename F::Scalar> out = Matrix<typename F::Scalar>::Constant(m.rows(), m.cols(), field.zero());
  for (Index i = 0; i < m.outerSize(); ++i)
    for (SparseIntMatrix::InnerIterator it(m, i); it; ++it) out(it.row(), it.col()) = field.from_int(it.value());
  return out;
}

template <ExactField F>
RowEchelon<typename F::Scalar> rref(Matrix<typename F::Scalar> m, const F& field);

template <ExactField F>
Index rank(Matrix<typename F::Scalar> m, const F& field) {
  return rref(std::move(m), field).rank;
}

inline Index rank_mod_p(const IntMatrix& m, const PrimeField& field) {
  return rank(to_field(field, m), field);
}

/// Canonical nullspace basis, one row per free column in increasing order.
/// The vector for free column f has its last nonzero entry at f.
template <ExactField F>
IntMatrix nullspace_basis(const RowEchelon<typename F::Scalar>& echelon, const F& field);

template <ExactField F>
IntMatrix nullspace_basis(Matrix<typename F::Scalar> m, const F& field) {
  return nullspace_basis(rref(std::move(m), field), field);
}

/// Product with entries reduced into the field.
template <ExactField F>
Matrix<typename F::Scalar> multiply(const Matrix<typename F::Scalar>& a, const Matrix<typename F::Scalar>& b,
                                    const F& field);

/// Throws std::domain_error when the matrix is singular.
template <ExactField F>
Matrix<typename F::Scalar> inverse(const Matrix<typename F::Scalar>& a, const F& field);

/// Row space maintained in echelon form, grown one vector at a time.
template <ExactField F>
class IncrementalEchelon {
 public:
  using Scalar = typename F::Scalar;

  IncrementalEchelon(Index cols, F field) : cols_(cols), field_(std::move(field)) {}

  // Returns true when v was independent of the rows inserted so far.
  bool insert(RowVector<Scalar> v);
  bool contains(RowVector<Scalar> v) const;

  Index rank() const { return static_cast<Index>(rows_.size()); }
  Index cols() const { return cols_; }
  const F& field() const { return field_; }

 private:
  // Reduces v in place; returns the first column left nonzero, or cols_.
  Index reduce(RowVector<Scalar>& v) const;

  Index cols_;
  F field_;
  std::map<Index, RowVector<Scalar>> rows_;  // pivot column -> row with leading one
};

/// Rank and canonical nullspace of a sparse integer matrix over F_p.
struct SparseNullspace {
  Index rank = 0;
  IntMatrix basis;  // same normalization as nullspace_basis
};

/// Streams the rows of m once, shrinking a basis of {x : m x = 0} as it goes.
/// Suited to tall matrices with few nonzeros per row.
SparseNullspace nullspace_mod_p(const SparseIntMatrix& m, const PrimeField& field);

extern template RowEchelon<Rational> rref(Matrix<Rational>, const Rationals&);
extern template RowEchelon<std::int64_t> rref(Matrix<std::int64_t>, const PrimeField&);
extern template IntMatrix nullspace_basis(const RowEchelon<Rational>&, const Rationals&);
extern template IntMatrix nullspace_basis(const RowEchelon<std::int64_t>&, const PrimeField&);
extern template Matrix<Rational> multiply(const Matrix<Rational>&, const Matrix<Rational>&, const Rationals&);
extern template Matrix<std::int64_t> multiply(const Matrix<std::int64_t>&, const Matrix<std::int64_t>&,
                                              const PrimeField&);
extern template Matrix<Rational> inverse(const Matrix<Rational>&, const Rationals&);
extern template Matrix<std::int64_t> inverse(const Matrix<std::int64_t>&, const PrimeField&);
extern template class IncrementalEchelon<Rationals>;
extern template class IncrementalEchelon<PrimeField>;

}  // namespace pats
