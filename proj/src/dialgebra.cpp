#include "pats/dialgebra.hpp"

#include <algorithm>
#include <stdexcept>

namespace pats {

namespace {

bool is_letter(char c) { return c >= 'a' && c <= 'z'; }

}  // namespace

DialgebraWord::DialgebraWord(std::string letters, int center) : letters_(std::move(letters)), center_(center) {
  if (letters_.empty()) throw std::invalid_argument("dialgebra word must be nonempty");
  if (center_ < 0 || center_ >= length()) throw std::invalid_argument("dialgebra word center out of range");
}

DialgebraWord DialgebraWord::parse(std::string_view text) {
  std::string letters;
  int center = -1;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c == '^') {
      if (center >= 0 || i + 1 >= text.size() || !is_letter(text[i + 1]))
        throw std::invalid_argument("malformed dialgebra word '" + std::string(text) + "'");
      center = static_cast<int>(letters.size());
    } else if (is_letter(c)) {
      letters.push_back(c);
    } else {
      throw std::invalid_argument("malformed dialgebra word '" + std::string(text) + "'");
    }
  }
  if (center < 0) throw std::invalid_argument("dialgebra word has no center: '" + std::string(text) + "'");
  return DialgebraWord(std::move(letters), center);
}

std::string DialgebraWord::to_string() const {
  std::string s;
  s.reserve(letters_.size() + 1);
  for (int i = 0; i < length(); ++i) {
    if (i == center_) s.push_back('^');
    s.push_back(letters_[static_cast<std::size_t>(i)]);
  }
  return s;
}

DialgebraWord left_product(const DialgebraWord& x, const DialgebraWord& y) {
  return DialgebraWord(x.letters() + y.letters(), x.center());
}

DialgebraWord right_product(const DialgebraWord& x, const DialgebraWord& y) {
  return DialgebraWord(x.letters() + y.letters(), x.length() + y.center());
}

std::string to_string(const DialgebraPolynomial& p) {
  if (p.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [w, c] : p) {
    if (c < 0)
      s += first ? "-" : " - ";
    else if (!first)
      s += " + ";
    const Rational a = abs(c);
    if (a != 1) s += pats::to_string(a) + " ";
    s += w.to_string();
    first = false;
  }
  return s;
}

std::vector<DialgebraWord> all_words(std::string letters) {
  std::sort(letters.begin(), letters.end());
  std::vector<std::string> arrangements;
  do {
    arrangements.push_back(letters);
  } while (std::next_permutation(letters.begin(), letters.end()));
  std::vector<DialgebraWord> out;
  out.reserve(arrangements.size() * letters.size());
  for (int c = 0; c < static_cast<int>(letters.size()); ++c)
    for (const auto& a : arrangements) out.emplace_back(a, c);
  return out;
}

// ---- OpTree ----

OpTree OpTree::leaf(char symbol) {
  if (!is_letter(symbol)) throw std::invalid_argument("leaf symbols are letters a..z");
  OpTree t;
  t.symbol_ = symbol;
  return t;
}

OpTree OpTree::node(std::vector<OpTree> children) {
  if (children.size() != 2 && children.size() != 3) throw std::invalid_argument("products take 2 or 3 factors");
  OpTree t;
  t.children_ = std::move(children);
  return t;
}

OpTree OpTree::parse(std::string_view text) {
  std::size_t pos = 0;
  auto fail = [&] { throw std::invalid_argument("malformed product '" + std::string(text) + "'"); };
  auto rec = [&](auto&& self) -> OpTree {
    if (pos >= text.size()) fail();
    if (is_letter(text[pos])) return leaf(text[pos++]);
    if (text[pos] != '(') fail();
    ++pos;
    std::vector<OpTree> kids;
    while (true) {
      kids.push_back(self(self));
      if (pos >= text.size()) fail();
      if (text[pos] == ',') {
        ++pos;
      } else if (text[pos] == ')') {
        ++pos;
        break;
      } else {
        fail();
      }
    }
    if (kids.size() != 2 && kids.size() != 3) fail();
    return node(std::move(kids));
  };
  OpTree t = rec(rec);
  if (pos != text.size()) fail();
  return t;
}

int OpTree::leaf_count() const {
  if (is_leaf()) return 1;
  int n = 0;
  for (const auto& c : children_) n += c.leaf_count();
  return n;
}

std::string OpTree::leaves() const {
  if (is_leaf()) return std::string(1, symbol_);
  std::string s;
  for (const auto& c : children_) s += c.leaves();
  return s;
}

std::string OpTree::to_string() const {
  if (is_leaf()) return std::string(1, symbol_);
  std::string s = "(";
  for (std::size_t i = 0; i < children_.size(); ++i) {
    if (i > 0) s += ',';
    s += children_[i].to_string();
  }
  return s + ")";
}

DialgebraWord kp_transform(const OpTree& m, int center_leaf) {
  std::string letters = m.leaves();
  if (center_leaf < 0 || center_leaf >= static_cast<int>(letters.size()))
    throw std::out_of_range("center leaf " + std::to_string(center_leaf) + " is not a leaf of " + m.to_string());
  return DialgebraWord(std::move(letters), center_leaf);
}

DialgebraPolynomial kp_transform(const OpPolynomial& p, char center) {
  DialgebraPolynomial out;
  for (const auto& [tree, c] : p) {
    const std::string letters = tree.leaves();
    const auto at = letters.find(center);
    if (at == std::string::npos)
      throw std::out_of_range(std::string("letter ") + center + " does not occur in " + tree.to_string());
    out.add(kp_transform(tree, static_cast<int>(at)), c);
  }
  return out;
}

std::string kp_render(const OpTree& m, int center_leaf) {
  if (center_leaf < 0 || center_leaf >= m.leaf_count())
    throw std::out_of_range("center leaf " + std::to_string(center_leaf) + " is not a leaf of " + m.to_string());
  // `center` is relative to this subtree and may lie outside it
  auto rec = [](auto&& self, const OpTree& t, int center) -> std::string {
    if (t.is_leaf()) return std::string(1, t.symbol());
    std::string s = "(";
    int offset = 0;
    for (std::size_t i = 0; i < t.children().size(); ++i) {
      const OpTree& child = t.children()[i];
      if (i > 0) s += (center >= 0 && center < offset) ? " -| " : " |- ";
      s += self(self, child, center - offset);
      offset += child.leaf_count();
    }
    return s + ")";
  };
  return rec(rec, m, center_leaf);
}

// ---- TernaryOperation ----

TernaryOperation::TernaryOperation(std::vector<Term> terms) : terms_(std::move(terms)) {
  for (const auto& t : terms_) {
    auto o = t.order;
    std::sort(o.begin(), o.end());
    if (o != std::array<int, 3>{0, 1, 2} || t.center_argument < 0 || t.center_argument > 2 ||
        (t.sign != 1 && t.sign != -1))
      throw std::invalid_argument("malformed ternary operation term");
  }
}

TernaryOperation TernaryOperation::pats() {
  return TernaryOperation({{1, {0, 1, 2}, 0},
                           {-1, {0, 2, 1}, 0},
                           {-1, {1, 0, 2}, 0},
                           {1, {2, 0, 1}, 0},
                           {1, {1, 2, 0}, 0},
                           {-1, {2, 1, 0}, 0}});
}

TernaryOperation TernaryOperation::from_polynomial(const DialgebraPolynomial& p) {
  std::vector<Term> terms;
  for (const auto& [w, c] : p) {
    if (w.length() != 3 || (c != 1 && c != -1)) throw std::invalid_argument("expected a +-1 combination of words in a, b, c");
    Term t{c > 0 ? 1 : -1, {}, w.letters()[static_cast<std::size_t>(w.center())] - 'a'};
    for (int i = 0; i < 3; ++i) t.order[static_cast<std::size_t>(i)] = w.letters()[static_cast<std::size_t>(i)] - 'a';
    terms.push_back(t);
  }
  return TernaryOperation(std::move(terms));
}

OpPolynomial alternating_ternary_sum() {
  OpPolynomial p;
  const std::pair<const char*, int> terms[] = {{"abc", 1}, {"acb", -1}, {"bac", -1},
                                               {"bca", 1}, {"cab", 1},  {"cba", -1}};
  for (const auto& [w, s] : terms)
    p.add(OpTree::node({OpTree::leaf(w[0]), OpTree::leaf(w[1]), OpTree::leaf(w[2])}), Rational(s));
  return p;
}

}  // namespace pats
