#include "pats/ternary.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>
#include <stdexcept>

namespace pats {

namespace {

bool is_letter(char c) { return c >= 'a' && c <= 'z'; }

// Leaves are letters, or '.' in bare shapes.
int count_letters(std::string_view code) {
  return static_cast<int>(std::count_if(code.begin(), code.end(), [](char c) { return c != '(' && c != ')'; }));
}

// The three argument codes of a bracketed code.
std::array<std::string_view, 3> split(std::string_view code) {
  std::array<std::string_view, 3> out;
  std::size_t pos = 1;
  for (auto& part : out) {
    const std::size_t start = pos;
    int depth = 0;
    do {
      if (code[pos] == '(') ++depth;
      if (code[pos] == ')') --depth;
      ++pos;
    } while (depth > 0);
    part = code.substr(start, pos - start);
  }
  return out;
}

std::string join(std::string_view x, std::string_view y, std::string_view z) {
  std::string s;
  s.reserve(x.size() + y.size() + z.size() + 2);
  s += '(';
  s += x;
  s += y;
  s += z;
  s += ')';
  return s;
}

bool precedes_codes(std::string_view x, std::string_view y) {
  const int dx = count_letters(x), dy = count_letters(y);
  if (dx != dy) return dx < dy;
  if (dx == 1) return x[0] < y[0];
  const auto xs = split(x), ys = split(y);
  for (int i = 0; i < 3; ++i)
    if (xs[static_cast<std::size_t>(i)] != ys[static_cast<std::size_t>(i)])
      return precedes_codes(xs[static_cast<std::size_t>(i)], ys[static_cast<std::size_t>(i)]);
  return false;
}

bool sibling_precedes_codes(std::string_view x, std::string_view y) {
  const int dx = count_letters(x), dy = count_letters(y);
  if (dx != dy) return dx > dy;
  return precedes_codes(x, y);
}

struct Straightened {
  int sign;
  std::string code;
};

// Orders the two codes; returns the sign of the transposition, or 0 if equal.
int order_pair(std::string& a, std::string& b) {
  if (a == b) return 0;
  if (sibling_precedes_codes(b, a)) {
    std::swap(a, b);
    return -1;
  }
  return 1;
}

Straightened straighten_p(std::string_view x) {
  if (x.size() == 1) return {1, std::string(x)};
  const auto parts = split(x);
  auto a = straighten_p(parts[0]);
  auto b = straighten_p(parts[1]);
  auto c = straighten_p(parts[2]);
  int sign = a.sign * b.sign * c.sign;
  if (sign == 0) return {0, {}};
  sign *= order_pair(b.code, c.code);
  if (sign == 0) return {0, {}};
  return {sign, join(a.code, b.code, c.code)};
}

Straightened complete_straighten(std::string_view x) {
  if (x.size() == 1) return {1, std::string(x)};
  const auto parts = split(x);
  std::array<Straightened, 3> k = {complete_straighten(parts[0]), complete_straighten(parts[1]),
                                   complete_straighten(parts[2])};
  int sign = k[0].sign * k[1].sign * k[2].sign;
  if (sign == 0) return {0, {}};
  // three-element sort, tracking the parity
  sign *= order_pair(k[0].code, k[1].code);
  if (sign == 0) return {0, {}};
  sign *= order_pair(k[1].code, k[2].code);
  if (sign == 0) return {0, {}};
  sign *= order_pair(k[0].code, k[1].code);
  if (sign == 0) return {0, {}};
  return {sign, join(k[0].code, k[1].code, k[2].code)};
}

Straightened partial_straighten(std::string_view x) {
  if (x.size() == 1) return {1, std::string(x)};
  const auto parts = split(x);
  auto a = partial_straighten(parts[0]);
  auto b = complete_straighten(parts[1]);
  auto c = complete_straighten(parts[2]);
  int sign = a.sign * b.sign * c.sign;
  if (sign == 0) return {0, {}};
  sign *= order_pair(b.code, c.code);
  if (sign == 0) return {0, {}};
  return {sign, join(a.code, b.code, c.code)};
}

std::string relabel(std::string_view code, std::string_view labels) {
  std::string s(code);
  std::size_t k = 0;
  for (char& c : s)
    if (is_letter(c) || c == '.') c = labels[k++];
  return s;
}

// ---- type generation ----

// Shapes use '.' for leaves.
using ShapeList = std::vector<std::string>;

struct Generated {
  ShapeList ca, pa;
};

Generated generate_shapes_pq(int n) {
  static std::mutex mutex;
  static std::map<int, Generated> memo;
  {
    std::lock_guard lock(mutex);
    if (auto it = memo.find(n); it != memo.end()) return it->second;
  }
  Generated g;
  if (n == 1) {
    g.ca = {"."};
    g.pa = {"."};
  } else {
    for (int i = n - 2; i >= 1; i -= 2) {
      for (int j = n - i - 1; j >= 1; j -= 2) {
        const int k = n - i - j;
        if (k < 1 || k % 2 == 0) continue;
        const Generated gi = generate_shapes_pq(i), gj = generate_shapes_pq(j), gk = generate_shapes_pq(k);
        // CA: i >= j >= k, weak precedence among equal degrees
        if (i >= j && j >= k) {
          for (std::size_t t = 0; t < gi.ca.size(); ++t)
            for (std::size_t u = (i == j ? t : 0); u < gj.ca.size(); ++u)
              for (std::size_t v = (j == k ? u : 0); v < gk.ca.size(); ++v)
                g.ca.push_back(join(gi.ca[t], gj.ca[u], gk.ca[v]));
        }
        // PA: any first argument, j >= k
        if (j >= k) {
          for (const auto& t : gi.pa)
            for (std::size_t u = 0; u < gj.ca.size(); ++u)
              for (std::size_t v = (j == k ? u : 0); v < gk.ca.size(); ++v) g.pa.push_back(join(t, gj.ca[u], gk.ca[v]));
        }
      }
    }
  }
  std::lock_guard lock(mutex);
  memo.emplace(n, g);
  return g;
}

// All shapes (level None) or those with the last two arguments ordered (level P).
ShapeList generate_shapes(int n, Reduction level) {
  if (n == 1) return {"."};
  ShapeList out;
  for (int i = n - 2; i >= 1; i -= 2) {
    for (int j = n - i - 1; j >= 1; j -= 2) {
      const int k = n - i - j;
      if (k < 1 || k % 2 == 0) continue;
      if (level == Reduction::P && j < k) continue;
      const ShapeList si = generate_shapes(i, level), sj = generate_shapes(j, level), sk = generate_shapes(k, level);
      for (const auto& t : si)
        for (std::size_t u = 0; u < sj.size(); ++u)
          for (std::size_t v = (level == Reduction::P && j == k ? u : 0); v < sk.size(); ++v)
            out.push_back(join(t, sj[u], sk[v]));
    }
  }
  return out;
}

void check_degree(int n) {
  if (n < 1 || n % 2 == 0) throw std::invalid_argument("ternary degrees are odd and positive, got " + std::to_string(n));
  if (n > 26) throw std::invalid_argument("degree too large for single-letter variables");
}

long count_symmetry(std::string_view x, bool flag) {
  if (x.size() == 1) return 1;
  const auto p = split(x);
  long d = count_symmetry(p[0], flag) * count_symmetry(p[1], true) * count_symmetry(p[2], true);
  if (flag) {
    const int equal = (p[0] == p[1]) + (p[1] == p[2]) + (p[0] == p[2]);
    if (equal == 3) d *= 6;
    if (equal == 1) d *= 2;
  } else if (p[1] == p[2]) {
    d *= 2;
  }
  return d;
}

std::string shape_of(std::string_view code) {
  std::string s(code);
  for (char& c : s)
    if (is_letter(c)) c = '.';
  return s;
}

}  // namespace

// ---- TernaryMonomial ----

TernaryMonomial TernaryMonomial::leaf(char symbol) {
  if (!is_letter(symbol)) throw std::invalid_argument("variables are letters a..z");
  return TernaryMonomial(std::string(1, symbol));
}

TernaryMonomial TernaryMonomial::node(const TernaryMonomial& x, const TernaryMonomial& y, const TernaryMonomial& z) {
  return TernaryMonomial(join(x.code_, y.code_, z.code_));
}

TernaryMonomial TernaryMonomial::from_code(std::string code) { return TernaryMonomial(std::move(code)); }

TernaryMonomial TernaryMonomial::parse(std::string_view text) {
  std::string code;
  for (char c : text) {
    if (c == ',' || c == ' ' || c == '\t') continue;
    if (c == '[') c = '(';
    if (c == ']') c = ')';
    if (!is_letter(c) && c != '(' && c != ')')
      throw std::invalid_argument("malformed ternary monomial '" + std::string(text) + "'");
    code.push_back(c);
  }
  // validate: every bracket holds exactly three arguments
  std::size_t pos = 0;
  auto fail = [&] { throw std::invalid_argument("malformed ternary monomial '" + std::string(text) + "'"); };
  auto rec = [&](auto&& self) -> void {
    if (pos >= code.size()) fail();
    if (is_letter(code[pos])) {
      ++pos;
      return;
    }
    if (code[pos] != '(') fail();
    ++pos;
    for (int i = 0; i < 3; ++i) self(self);
    if (pos >= code.size() || code[pos] != ')') fail();
    ++pos;
  };
  rec(rec);
  if (pos != code.size()) fail();
  return TernaryMonomial(std::move(code));
}

std::string TernaryMonomial::to_string() const {
  std::string s;
  s.reserve(code_.size() * 2);
  for (std::size_t i = 0; i < code_.size(); ++i) {
    const char c = code_[i];
    if (i > 0 && c != ')' && code_[i - 1] != '(') s += ',';
    s += c;
  }
  return s;
}

int TernaryMonomial::degree() const { return count_letters(code_); }

std::string TernaryMonomial::labels() const {
  std::string s;
  for (char c : code_)
    if (is_letter(c)) s += c;
  return s;
}

std::string TernaryMonomial::shape() const { return shape_of(code_); }

TernaryMonomial TernaryMonomial::relabeled(std::string_view labels) const {
  if (static_cast<int>(labels.size()) != degree()) throw std::invalid_argument("relabel: wrong number of labels");
  return TernaryMonomial(relabel(code_, labels));
}

std::array<TernaryMonomial, 3> TernaryMonomial::children() const {
  if (is_leaf()) throw std::logic_error("a variable has no arguments");
  const auto p = split(code_);
  return {TernaryMonomial(std::string(p[0])), TernaryMonomial(std::string(p[1])), TernaryMonomial(std::string(p[2]))};
}

// ---- reduction levels ----

Reduction reduction_for_degree(int n) {
  if (n <= 3) return Reduction::None;
  if (n == 5) return Reduction::P;
  return Reduction::PQ;
}

std::string to_string(Reduction r) {
  switch (r) {
    case Reduction::None: return "none";
    case Reduction::P: return "P";
    case Reduction::PQ: return "PQ";
  }
  return "?";
}

// ---- types ----

std::string first_letters(int n) {
  std::string s;
  for (int i = 0; i < n; ++i) s += static_cast<char>('a' + i);
  return s;
}

TypeLists generate_types(int n) {
  check_degree(n);
  const Generated g = generate_shapes_pq(n);
  const std::string letters = first_letters(n);
  TypeLists out;
  for (const auto& s : g.ca) out.ca.push_back({TernaryMonomial::parse(relabel(s, letters)), TypeKind::CA});
  for (const auto& s : g.pa) out.pa.push_back({TernaryMonomial::parse(relabel(s, letters)), TypeKind::PA});
  return out;
}

std::vector<AssocType> reduced_types(int n, Reduction level) {
  check_degree(n);
  if (level == Reduction::PQ) return generate_types(n).pa;
  const std::string letters = first_letters(n);
  std::vector<AssocType> out;
  for (const auto& s : generate_shapes(n, level)) out.push_back({TernaryMonomial::parse(relabel(s, letters)), TypeKind::PA});
  return out;
}

long countsymmetry(const AssocType& t) { return count_symmetry(t.pattern.shape(), t.kind == TypeKind::CA); }

bool strictly_precedes(const TernaryMonomial& x, const TernaryMonomial& y) { return precedes_codes(x.code(), y.code()); }

bool sibling_precedes(const TernaryMonomial& x, const TernaryMonomial& y) {
  return sibling_precedes_codes(x.code(), y.code());
}

SignedMonomial straighten(const TernaryMonomial& x, Reduction level) {
  Straightened s{0, {}};
  switch (level) {
    case Reduction::None: return {1, x};
    case Reduction::P: s = straighten_p(x.code()); break;
    case Reduction::PQ: s = partial_straighten(x.code()); break;
  }
  if (s.sign == 0) return {0, {}};
  return {s.sign, TernaryMonomial::from_code(std::move(s.code))};
}

// ---- enumeration ----

MonomialBasis::MonomialBasis(int n, std::string vars, Reduction level)
    : degree_(n), vars_(std::move(vars)), level_(level), types_(reduced_types(n, level)) {
  if (static_cast<int>(vars_.size()) != n) throw std::invalid_argument("need exactly one variable per leaf");
  for (char c : vars_)
    if (!is_letter(c)) throw std::invalid_argument("variables are letters a..z");
  std::sort(vars_.begin(), vars_.end());
  std::vector<std::string> labelings;
  std::string v = vars_;
  do {
    labelings.push_back(v);
  } while (std::next_permutation(v.begin(), v.end()));

  for (std::size_t t = 0; t < types_.size(); ++t) {
    const std::string shape = types_[t].pattern.shape();
    type_by_shape_.emplace(shape, static_cast<int>(t));
    for (const auto& l : labelings) {
      std::string code = relabel(shape, l);
      const SignedMonomial s = straighten(TernaryMonomial::from_code(code), level_);
      if (s.sign == 0 || s.monomial.code() != code) continue;
      index_.emplace(code, static_cast<long>(monomials_.size()));
      monomials_.push_back(s.monomial);
      type_of_.push_back(static_cast<int>(t));
    }
  }
}

std::vector<std::size_t> MonomialBasis::type_counts() const {
  std::vector<std::size_t> counts(types_.size(), 0);
  for (int t : type_of_) ++counts[static_cast<std::size_t>(t)];
  return counts;
}

int MonomialBasis::type_index(const TernaryMonomial& m) const {
  auto it = type_by_shape_.find(m.shape());
  return it == type_by_shape_.end() ? -1 : it->second;
}

long MonomialBasis::index_of(const TernaryMonomial& m) const {
  auto it = index_.find(m.code());
  return it == index_.end() ? -1 : it->second;
}

std::vector<TernaryMonomial> enumerate_monomials(int n, std::string_view vars) {
  return MonomialBasis(n, std::string(vars), reduction_for_degree(n)).monomials();
}

// ---- skew-symmetries ----

std::vector<SkewIdentity> skew_identities(int n) {
  check_degree(n);
  if (n < 3) return {};
  const auto types = generate_types(n).pa;
  std::vector<SkewIdentity> out;
  for (std::size_t t = 0; t < types.size(); ++t) {
    const std::string shape = types[t].pattern.shape();
    std::vector<int> identity(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) identity[static_cast<std::size_t>(i)] = i;

    // Swaps two adjacent equal-shape argument blocks starting at leaf `first`.
    auto emit = [&](int first, int width) {
      std::vector<int> labels = identity;
      std::rotate(labels.begin() + first, labels.begin() + first + width, labels.begin() + first + 2 * width);
      out.push_back({static_cast<int>(t), Permutation(std::move(labels))});
    };
    // Children first, then the node's own swaps. Arguments whose shape repeats
    // an earlier alternating sibling are not visited: their symmetries are
    // conjugate to the sibling's.
    auto visit = [&](auto&& self, std::string_view x, int offset, bool alternating) -> void {
      if (x.size() == 1) return;
      const auto p = split(x);
      int off[3];
      off[0] = offset;
      off[1] = off[0] + count_letters(p[0]);
      off[2] = off[1] + count_letters(p[1]);
      const int first_alt = alternating ? 0 : 1;
      self(self, p[0], off[0], alternating);
      for (int i = 1; i < 3; ++i) {
        bool repeat = false;
        for (int h = first_alt; h < i; ++h) repeat = repeat || p[static_cast<std::size_t>(h)] == p[static_cast<std::size_t>(i)];
        if (!repeat) self(self, p[static_cast<std::size_t>(i)], off[i], true);
      }
      for (int i = first_alt; i < 2; ++i)
        if (p[static_cast<std::size_t>(i)] == p[static_cast<std::size_t>(i + 1)])
          emit(off[i], count_letters(p[static_cast<std::size_t>(i)]));
    };
    visit(visit, shape, 0, false);
  }
  return out;
}

}  // namespace pats
