#pragma once

// The free associative dialgebra in normal form, and the
// Kolesnikov-Pozhidaev passage from algebra monomials to dialgebra monomials.

#include "pats/exactla.hpp"
#include "pats/linear_combination.hpp"

#include <array>
#include <compare>
#include <string>
#include <string_view>
#include <vector>

namespace pats {

/// Letters a_1 ... a_n with a distinguished center a_i, e.g. "bc^ade".
class DialgebraWord {
 public:
  DialgebraWord() = default;
  DialgebraWord(std::string letters, int center);  // center is 0-based

  static DialgebraWord parse(std::string_view text);
  std::string to_string() const;

  const std::string& letters() const noexcept { return letters_; }
  int center() const noexcept { return center_; }
  int length() const noexcept { return static_cast<int>(letters_.size()); }

  // Ordered by center position, then lexicographically by letters.
  friend std::strong_ordering operator<=>(const DialgebraWord& x, const DialgebraWord& y) {
    if (auto c = x.center_ <=> y.center_; c != 0) return c;
    return x.letters_.compare(y.letters_) <=> 0;
  }
  friend bool operator==(const DialgebraWord&, const DialgebraWord&) = default;

 private:
  std::string letters_;
  int center_ = 0;
};

/// x -| y
DialgebraWord left_product(const DialgebraWord& x, const DialgebraWord& y);
/// x |- y
DialgebraWord right_product(const DialgebraWord& x, const DialgebraWord& y);

using DialgebraPolynomial = LinearCombination<DialgebraWord, Rational>;

std::string to_string(const DialgebraPolynomial& p);

/// Every word on the given letters (all distinct arrangements, every center), in word order.
std::vector<DialgebraWord> all_words(std::string letters);

/// A product tree over an associative algebra: leaves are letters,
/// internal nodes multiply two or three factors.
class OpTree {
 public:
  static OpTree leaf(char symbol);
  static OpTree node(std::vector<OpTree> children);
  /// "((a,b),c)", "(a,b,c)" or a bare letter.
  static OpTree parse(std::string_view text);

  bool is_leaf() const noexcept { return children_.empty(); }
  char symbol() const noexcept { return symbol_; }
  const std::vector<OpTree>& children() const noexcept { return children_; }
  int leaf_count() const;
  std::string leaves() const;
  std::string to_string() const;

  friend bool operator==(const OpTree& x, const OpTree& y) { return x.to_string() == y.to_string(); }
  friend bool operator<(const OpTree& x, const OpTree& y) { return x.to_string() < y.to_string(); }

 private:
  char symbol_ = 0;
  std::vector<OpTree> children_;
};

using OpPolynomial = LinearCombination<OpTree, Rational>;

/// The dialgebra monomial of m whose center is leaf number center_leaf (0-based).
/// Throws std::out_of_range when m has no such leaf.
DialgebraWord kp_transform(const OpTree& m, int center_leaf);
/// Each term centered at the leaf carrying the letter `center`.
DialgebraPolynomial kp_transform(const OpPolynomial& p, char center);
/// m with every product written as -| or |- according to where the center lies.
std::string kp_render(const OpTree& m, int center_leaf);

/// A multilinear ternary dialgebra operation [x,y,z] given by signed argument
/// orders, each term taking its center from one argument.
class TernaryOperation {
 public:
  struct Term {
    int sign;
    std::array<int, 3> order;  // argument indices in concatenation order
    int center_argument;
  };

  explicit TernaryOperation(std::vector<Term> terms);

  /// The partially alternating ternary sum.
  static TernaryOperation pats();
  /// Reads a polynomial in the letters a, b, c (e.g. a kp_transform result).
  static TernaryOperation from_polynomial(const DialgebraPolynomial& p);

  const std::vector<Term>& terms() const noexcept { return terms_; }

 private:
  std::vector<Term> terms_;
};

/// ATS as an OpPolynomial: abc - acb - bac + bca + cab - cba.
OpPolynomial alternating_ternary_sum();

}  // namespace pats
