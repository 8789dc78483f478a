#pragma once

// Rank computations in each irreducible representation of S_n: the
// skew-symmetries of the association types (symrank), all identities of the
// expansion (exprank), and for degree 9 the consequences of R and S (symlifrank).

#include "pats/identities.hpp"
#include "pats/symgroup.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace pats {

struct RankRow {
  Partition partition;
  Index dimension = 0;
  Index symrank = 0;
  Index exprank = 0;
  std::optional<Index> symlifrank;

  Index newrank() const { return exprank - symrank; }
};

struct RankTable {
  int degree = 0;
  std::string field;
  std::vector<RankRow> rows;  // in partitions_of(degree) order

  /// Sum of newrank * dimension: the nullity of the multilinear expansion matrix.
  Index weighted_newrank() const;
};

/// Column blocks of identity matrices: the PA types of degree n, in type order.
/// Returns the type of a straightened monomial and its labels read as a permutation.
struct TypeCoordinate {
  int type = -1;
  Permutation labels;
};
TypeCoordinate type_coordinate(const TernaryMonomial& m);

/// The d x (t d) block row of a multilinear identity: block k is rho of the
/// group algebra element formed by the identity's terms of type k.
template <ExactField F>
Matrix<typename F::Scalar> identity_block_row(const Representation<F>& rho, const TernaryPolynomial& identity);

/// M_lambda: the stacked block rows of the skew-symmetries (rows id + pi in one type).
template <ExactField F>
Matrix<typename F::Scalar> skew_matrix(const Representation<F>& rho);

/// rho(E^i_j) for j = 0..n-1: the expansion of type i with identity labels,
/// split by center position, each word's letters read as a permutation.
template <ExactField F>
std::vector<Matrix<typename F::Scalar>> expansion_blocks(const Representation<F>& rho, int type);

/// X_lambda = [ rho(E^i_j) | -I ], t d rows and (n + t) d columns.
template <ExactField F>
Matrix<typename F::Scalar> build_X_lambda(const Representation<F>& rho);

/// Rows of rref(X) whose leading one lies right of column n d.
template <ExactField F>
Index lower_right_rank(const Matrix<typename F::Scalar>& x, int n, const F& field);

/// The per-partition computation. Holds the skew-symmetry echelon forms, which
/// the faster routes use to discard redundant rows and columns.
template <ExactField F>
class PartitionRanks {
 public:
  using Scalar = typename F::Scalar;

  PartitionRanks(const Partition& shape, F field, TableauOrder order = TableauOrder::RowReadingLex);

  const Representation<F>& representation() const noexcept { return rho_; }
  Index dimension() const noexcept { return rho_.dimension(); }
  int type_count() const noexcept { return static_cast<int>(skew_.size()); }

  Index symrank() const;
  /// Via the rows of the expansion blocks not eliminated by the skew-symmetries.
  Index exprank() const;
  /// Literally from rref(X_lambda).
  Index exprank_full() const;
  /// symrank plus the rank of the identities modulo the skew-symmetries.
  Index rank_with(const std::vector<TernaryPolynomial>& identities) const;
  /// True when every block row of the identities is annihilated by the expansion.
  bool annihilated(const std::vector<TernaryPolynomial>& identities) const;

 private:
  struct TypeSkew {
    RowEchelon<Scalar> echelon;  // of the type's skew rows, d columns
    std::vector<Index> free;      // non-pivot columns
  };
  // d x |free| coordinates of a block's rows modulo the type's skew rows
  Matrix<Scalar> quotient(int type, const Matrix<Scalar>& block) const;
  // Rows of the expansion blocks at the free indices of each type
  Matrix<Scalar> reduced_expansion() const;
  Matrix<Scalar> reduced_identities(const std::vector<TernaryPolynomial>& identities) const;

  Representation<F> rho_;
  int n_;
  std::vector<TypeSkew> skew_;
};

struct RankOptions {
  std::optional<std::uint32_t> modulus = 101;  // none: over Q
  TableauOrder order = TableauOrder::RowReadingLex;
  bool lifted = false;                         // compute symlifrank (degree 9)
  bool full_exprank = false;                   // use rref(X_lambda) directly
  unsigned jobs = 1;
};

/// symrank in partition lambda of n = |lambda|.
Index symrank(const Partition& shape, std::optional<std::uint32_t> modulus = 101);
Index exprank(const Partition& shape, std::optional<std::uint32_t> modulus = 101);
/// Degree 9 only.
Index symlifrank(const Partition& shape, std::optional<std::uint32_t> modulus = 101);

/// The identities lift_to_degree9(R) and lift_to_degree9(S).
const std::vector<TernaryPolynomial>& lifted_identities();

RankRow rank_row(const Partition& shape, const RankOptions& options = {});
/// Rows for the given partitions (all of n when empty), in partitions_of order.
RankTable rank_table(int n, const RankOptions& options = {}, const std::vector<Partition>& only = {});

extern template class PartitionRanks<Rationals>;
extern template class PartitionRanks<PrimeField>;

}  // namespace pats
