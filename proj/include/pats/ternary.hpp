#pragma once

// Ternary monomials, association types for partially alternating products,
// straightening and enumeration of inequivalent monomials.

#include "pats/symgroup.hpp"

#include <array>
#include <compare>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace pats {

/// A ternary monomial stored as its bracket code: "((abc)de)" for ((a,b,c),d,e).
/// Leaves are single letters; repeated letters are allowed.
class TernaryMonomial {
 public:
  TernaryMonomial() = default;

  static TernaryMonomial leaf(char symbol);
  static TernaryMonomial node(const TernaryMonomial& x, const TernaryMonomial& y, const TernaryMonomial& z);
  /// Accepts "((a,b,c),d,e)", "((abc)de)" and whitespace.
  static TernaryMonomial parse(std::string_view text);
  /// No validation: `code` must already be a well-formed bracket code.
  static TernaryMonomial from_code(std::string code);

  const std::string& code() const noexcept { return code_; }
  /// "((a,b,c),d,e)"
  std::string to_string() const;
  int degree() const;
  bool is_leaf() const noexcept { return code_.size() == 1; }
  /// Leaf letters from left to right.
  std::string labels() const;
  /// The code with every leaf replaced by '.'.
  std::string shape() const;
  /// Same shape with the given leaf letters.
  TernaryMonomial relabeled(std::string_view labels) const;
  /// The three arguments of a non-leaf.
  std::array<TernaryMonomial, 3> children() const;

  friend auto operator<=>(const TernaryMonomial&, const TernaryMonomial&) = default;

 private:
  explicit TernaryMonomial(std::string code) : code_(std::move(code)) {}
  std::string code_;
};

struct SignedMonomial {
  int sign = 0;  // 0 means the monomial vanishes
  TernaryMonomial monomial;

  friend bool operator==(const SignedMonomial&, const SignedMonomial&) = default;
};

/// Which skew-symmetries straightening may use.
///   None: no rewriting (degree 3, where P is still unknown)
///   P:    only P, i.e. every node alternates in its last two arguments (degree 5)
///   PQ:   P and Q, the partially alternating case (degree 7 and up)
enum class Reduction { None, P, PQ };

/// The identities of lower degree available when studying degree n.
Reduction reduction_for_degree(int n);
std::string to_string(Reduction r);

enum class TypeKind { CA, PA };

struct AssocType {
  TernaryMonomial pattern;  // leaves labeled a, b, c, ... in order
  TypeKind kind = TypeKind::PA;

  int degree() const { return pattern.degree(); }
  std::string to_string() const { return pattern.to_string(); }
};

struct TypeLists {
  std::vector<AssocType> ca;
  std::vector<AssocType> pa;
};

/// CA and PA association types of odd degree n.
TypeLists generate_types(int n);

/// The monomial shapes that span degree n under the given reduction
/// (the PA types for PQ).
std::vector<AssocType> reduced_types(int n, Reduction level);

/// Order of the skew-symmetry group of a CA or PA type.
long countsymmetry(const AssocType& t);

/// Degree first (smaller precedes), then the first differing argument; leaves alphabetically.
bool strictly_precedes(const TernaryMonomial& x, const TernaryMonomial& y);

/// Order of alternating siblings in a straightened monomial: larger degree
/// first, then strictly_precedes.
bool sibling_precedes(const TernaryMonomial& x, const TernaryMonomial& y);

SignedMonomial straighten(const TernaryMonomial& x, Reduction level = Reduction::PQ);

/// Inequivalent monomials of degree n over a multiset of letters.
class MonomialBasis {
 public:
  MonomialBasis(int n, std::string vars, Reduction level);

  int degree() const noexcept { return degree_; }
  const std::string& vars() const noexcept { return vars_; }
  Reduction level() const noexcept { return level_; }
  const std::vector<AssocType>& types() const noexcept { return types_; }
  const std::vector<TernaryMonomial>& monomials() const noexcept { return monomials_; }
  std::size_t size() const noexcept { return monomials_.size(); }
  const TernaryMonomial& operator[](std::size_t i) const { return monomials_[i]; }
  int type_of(std::size_t i) const { return type_of_[i]; }
  /// Monomial count per type.
  std::vector<std::size_t> type_counts() const;
  /// Type index of a straightened monomial's shape, or -1.
  int type_index(const TernaryMonomial& m) const;
  /// Column of a straightened monomial, or -1.
  long index_of(const TernaryMonomial& m) const;

 private:
  int degree_;
  std::string vars_;
  Reduction level_;
  std::vector<AssocType> types_;
  std::vector<TernaryMonomial> monomials_;
  std::vector<int> type_of_;
  std::unordered_map<std::string, long> index_;
  std::unordered_map<std::string, int> type_by_shape_;
};

/// Monomials equal to their own straightened forms, by type then label sequence.
std::vector<TernaryMonomial> enumerate_monomials(int n, std::string_view vars);

/// m + m^perm = 0 where m is the PA type `type` with identity labels and
/// perm is the label sequence of the second term.
struct SkewIdentity {
  int type;
  Permutation perm;
};

std::vector<SkewIdentity> skew_identities(int n);

/// "abc...": the first n letters.
std::string first_letters(int n);

}  // namespace pats
