#include "pats/identities.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>
#include <unordered_map>

namespace pats {

namespace {

bool is_upper(char c) { return c >= 'A' && c <= 'Z'; }
bool is_lower(char c) { return c >= 'a' && c <= 'z'; }

int arrangement_sign(const std::vector<int>& v) {
  int inversions = 0;
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j)
      if (v[i] > v[j]) ++inversions;
  return inversions % 2 == 0 ? 1 : -1;
}

// Expansion of a monomial shape: term t has sign[t], leaf positions
// pos[t*n .. t*n+n) in word order, and center position center[t].
struct ShapeTerms {
  int n = 0;
  std::vector<int> sign;
  std::vector<std::uint8_t> pos;
  std::vector<std::uint8_t> center;

  std::size_t size() const { return sign.size(); }
};

std::array<std::string_view, 3> split_code(std::string_view code) {
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

ShapeTerms expand_shape(std::string_view shape, const TernaryOperation& op, int offset) {
  ShapeTerms out;
  if (shape.size() == 1) {
    out.n = 1;
    out.sign = {1};
    out.pos = {static_cast<std::uint8_t>(offset)};
    out.center = {0};
    return out;
  }
  const auto parts = split_code(shape);
  std::array<ShapeTerms, 3> arg;
  int off = offset;
  for (int i = 0; i < 3; ++i) {
    arg[static_cast<std::size_t>(i)] = expand_shape(parts[static_cast<std::size_t>(i)], op, off);
    off += arg[static_cast<std::size_t>(i)].n;
  }
  out.n = arg[0].n + arg[1].n + arg[2].n;
  const std::size_t total = arg[0].size() * arg[1].size() * arg[2].size() * op.terms().size();
  out.sign.reserve(total);
  out.center.reserve(total);
  out.pos.reserve(total * static_cast<std::size_t>(out.n));
  std::array<std::size_t, 3> t{};
  for (t[0] = 0; t[0] < arg[0].size(); ++t[0])
    for (t[1] = 0; t[1] < arg[1].size(); ++t[1])
      for (t[2] = 0; t[2] < arg[2].size(); ++t[2])
        for (const auto& term : op.terms()) {
          int sign = term.sign;
          int center = 0;
          int at = 0;
          for (int slot = 0; slot < 3; ++slot) {
            const auto k = static_cast<std::size_t>(term.order[static_cast<std::size_t>(slot)]);
            const ShapeTerms& a = arg[k];
            sign *= a.sign[t[k]];
            // only the center argument keeps its own center
            if (static_cast<int>(k) == term.center_argument) center = at + a.center[t[k]];
            const auto* p = &a.pos[t[k] * static_cast<std::size_t>(a.n)];
            out.pos.insert(out.pos.end(), p, p + a.n);
            at += a.n;
          }
          out.sign.push_back(sign);
          out.center.push_back(static_cast<std::uint8_t>(center));
        }
  return out;
}

bool same_operation(const TernaryOperation& x, const TernaryOperation& y) {
  if (x.terms().size() != y.terms().size()) return false;
  for (std::size_t i = 0; i < x.terms().size(); ++i) {
    const auto& a = x.terms()[i];
    const auto& b = y.terms()[i];
    if (a.sign != b.sign || a.order != b.order || a.center_argument != b.center_argument) return false;
  }
  return true;
}

// Shape expansions are reused across all labelings of a type.
std::shared_ptr<const ShapeTerms> shape_terms(const std::string& shape, const TernaryOperation& op) {
  static const TernaryOperation pats_op = TernaryOperation::pats();
  if (!same_operation(op, pats_op)) return std::make_shared<const ShapeTerms>(expand_shape(shape, op, 0));
  static std::mutex mutex;
  static std::map<std::string, std::shared_ptr<const ShapeTerms>> cache;
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(shape); it != cache.end()) return it->second;
  }
  auto terms = std::make_shared<const ShapeTerms>(expand_shape(shape, op, 0));
  std::lock_guard lock(mutex);
  return cache.emplace(shape, terms).first->second;
}

template <class Visit>
void for_each_word(const TernaryMonomial& m, const TernaryOperation& op, Visit&& visit) {
  const auto terms = shape_terms(m.shape(), op);
  const std::string labels = m.labels();
  const auto n = static_cast<std::size_t>(terms->n);
  std::string letters(n, ' ');
  for (std::size_t t = 0; t < terms->size(); ++t) {
    for (std::size_t s = 0; s < n; ++s) letters[s] = labels[terms->pos[t * n + s]];
    visit(letters, static_cast<int>(terms->center[t]), terms->sign[t]);
  }
}

template <ExactField F>
Index orbit_rank(const std::vector<TernaryPolynomial>& generators, const std::vector<TernaryPolynomial>& extra,
                 const F& field) {
  const TernaryPolynomial& first = generators.empty() ? extra.front() : generators.front();
  const int n = first.degree();
  const MonomialBasis basis(n, first_letters(n), first.level());
  IncrementalEchelon<F> echelon(static_cast<Index>(basis.size()), field);
  using Scalar = typename F::Scalar;

  for (const auto& g : generators) {
    if (g.degree() != n || g.variables() != first_letters(n))
      throw std::invalid_argument("orbits are taken of multilinear polynomials of one degree");
    std::vector<std::pair<std::string, Scalar>> terms;
    for (const auto& [m, c] : g.terms()) terms.emplace_back(m.code(), field.from_rational(c));
    for (const Permutation& sigma : all_permutations(n)) {
      RowVector<Scalar> v = RowVector<Scalar>::Constant(static_cast<Index>(basis.size()), field.zero());
      for (const auto& [code, c] : terms) {
        std::string moved = code;
        for (char& ch : moved)
          if (is_lower(ch)) ch = static_cast<char>('a' + sigma(ch - 'a'));
        const SignedMonomial s = straighten(TernaryMonomial::from_code(std::move(moved)), basis.level());
        if (s.sign == 0) continue;
        const long j = basis.index_of(s.monomial);
        if (j < 0) throw std::logic_error("straightened monomial outside the basis: " + s.monomial.to_string());
        v(j) = field.add(v(j), s.sign > 0 ? c : field.neg(c));
      }
      echelon.insert(std::move(v));
    }
  }
  for (const auto& e : extra) echelon.insert(coordinates(e, basis, field));
  return echelon.rank();
}

}  // namespace

// ---- TernaryPolynomial ----

void TernaryPolynomial::add(const TernaryMonomial& m, const Rational& c) {
  if (m.degree() != degree_)
    throw std::invalid_argument("degree " + std::to_string(m.degree()) + " term in a degree " + std::to_string(degree_) +
                                " polynomial");
  const SignedMonomial s = straighten(m, level_);
  if (s.sign == 0) return;
  terms_.add(s.monomial, s.sign > 0 ? c : Rational(-c));
}

void TernaryPolynomial::add_alternating_sum(std::string_view pattern, const Rational& c) {
  std::string slots;
  for (char ch : pattern)
    if (is_upper(ch) && slots.find(static_cast<char>(ch - 'A' + 'a')) == std::string::npos)
      slots += static_cast<char>(ch - 'A' + 'a');
  std::sort(slots.begin(), slots.end());
  std::vector<int> image(slots.size());
  for (std::size_t i = 0; i < image.size(); ++i) image[i] = static_cast<int>(i);
  do {
    std::string code(pattern);
    for (char& ch : code) {
      if (!is_upper(ch)) continue;
      const auto k = slots.find(static_cast<char>(ch - 'A' + 'a'));
      ch = slots[static_cast<std::size_t>(image[k])];
    }
    add(TernaryMonomial::parse(code), arrangement_sign(image) > 0 ? c : Rational(-c));
  } while (std::next_permutation(image.begin(), image.end()));
}

TernaryPolynomial TernaryPolynomial::renamed(std::string_view from, std::string_view to) const {
  if (from.size() != to.size()) throw std::invalid_argument("renamed: letter lists differ in length");
  TernaryPolynomial out(degree_, level_);
  for (const auto& [m, c] : terms_) {
    std::string labels = m.labels();
    for (char& ch : labels)
      if (auto k = from.find(ch); k != std::string_view::npos) ch = to[k];
    out.add(m.relabeled(labels), c);
  }
  return out;
}

TernaryPolynomial TernaryPolynomial::permuted(const Permutation& sigma) const {
  std::string from, to;
  for (int i = 0; i < sigma.degree(); ++i) {
    from += static_cast<char>('a' + i);
    to += static_cast<char>('a' + sigma(i));
  }
  return renamed(from, to);
}

std::string TernaryPolynomial::variables() const {
  if (terms_.empty()) return {};
  std::string v = terms_.begin()->first.labels();
  std::sort(v.begin(), v.end());
  return v;
}

TernaryPolynomial& TernaryPolynomial::operator+=(const TernaryPolynomial& other) {
  if (other.degree_ != degree_) throw std::invalid_argument("adding polynomials of different degrees");
  terms_ += other.terms_;
  return *this;
}

TernaryPolynomial& TernaryPolynomial::operator*=(const Rational& c) {
  terms_ *= c;
  return *this;
}

std::string TernaryPolynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (c < 0)
      s += first ? "-" : " - ";
    else if (!first)
      s += " + ";
    const Rational a = abs(c);
    if (a != 1) s += pats::to_string(a) + " ";
    s += m.to_string();
    first = false;
  }
  return s;
}

// ---- expansion ----

std::vector<std::pair<DialgebraWord, int>> expand_terms(const TernaryMonomial& m, const TernaryOperation& op) {
  std::vector<std::pair<DialgebraWord, int>> out;
  for_each_word(m, op, [&](const std::string& letters, int center, int sign) {
    out.emplace_back(DialgebraWord(letters, center), sign);
  });
  return out;
}

DialgebraPolynomial expand(const TernaryMonomial& m, const TernaryOperation& op) {
  DialgebraPolynomial p;
  for_each_word(m, op, [&](const std::string& letters, int center, int sign) {
    p.add(DialgebraWord(letters, center), Rational(sign));
  });
  return p;
}

DialgebraPolynomial expand_pats(const TernaryMonomial& m) { return expand(m, TernaryOperation::pats()); }

DialgebraPolynomial expand(const TernaryPolynomial& p, const TernaryOperation& op) {
  // collect integer multiples per monomial coefficient first
  std::map<DialgebraWord, Rational> acc;
  for (const auto& [m, c] : p.terms()) {
    for_each_word(m, op, [&](const std::string& letters, int center, int sign) {
      auto [it, inserted] = acc.try_emplace(DialgebraWord(letters, center), 0);
      if (sign > 0)
        it->second += c;
      else
        it->second -= c;
    });
  }
  DialgebraPolynomial out;
  for (const auto& [w, c] : acc) out.add(w, c);
  return out;
}

bool is_identity(const TernaryPolynomial& p, const TernaryOperation& op) { return expand(p, op).empty(); }

ExpansionMatrix build_expansion_matrix(int n, std::string vars, const TernaryOperation& op) {
  return build_expansion_matrix(n, std::move(vars), reduction_for_degree(n), op);
}

ExpansionMatrix build_expansion_matrix(int n, std::string vars, Reduction level, const TernaryOperation& op) {
  ExpansionMatrix e{MonomialBasis(n, vars, level), all_words(vars), {}};
  std::unordered_map<std::string, Index> row_of;
  row_of.reserve(e.rows.size() * 2);
  for (std::size_t r = 0; r < e.rows.size(); ++r) {
    std::string key = e.rows[r].letters();
    key += static_cast<char>('0' + e.rows[r].center());
    row_of.emplace(std::move(key), static_cast<Index>(r));
  }

  std::vector<Eigen::Triplet<std::int32_t>> triplets;
  std::string key;
  for (std::size_t j = 0; j < e.basis.size(); ++j) {
    std::map<Index, std::int32_t> column;
    for_each_word(e.basis[j], op, [&](const std::string& letters, int center, int sign) {
      key = letters;
      key += static_cast<char>('0' + center);
      column[row_of.at(key)] += sign;
    });
    for (const auto& [r, v] : column)
      if (v != 0) triplets.emplace_back(r, static_cast<Index>(j), v);
  }
  e.matrix = SparseIntMatrix(static_cast<Index>(e.rows.size()), static_cast<Index>(e.basis.size()));
  e.matrix.setFromTriplets(triplets.begin(), triplets.end());
  return e;
}

// ---- identities ----

std::vector<std::int64_t> IdentityRecord::coefficient_magnitudes() const {
  std::vector<std::int64_t> out;
  for (Index j = 0; j < coefficients.size(); ++j)
    if (coefficients(j) != 0) out.push_back(std::abs(coefficients(j)));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<int> IdentityRecord::types(const MonomialBasis& basis) const {
  std::vector<int> out;
  for (const auto& [m, c] : polynomial.terms()) out.push_back(basis.type_index(m) + 1);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Index expansion_rank(const ExpansionMatrix& e, std::optional<std::uint32_t> modulus) {
  if (!modulus) return rank(to_field(Rationals{}, e.matrix), Rationals{});
  const PrimeField field = PrimeField::for_degree(*modulus, e.basis.degree());
  return nullspace_mod_p(e.matrix, field).rank;
}

IdentitySearch find_identities(int n, std::string vars, std::optional<std::uint32_t> modulus,
                               const TernaryOperation& op) {
  return find_identities(build_expansion_matrix(n, std::move(vars), op), modulus);
}

namespace {
// Each canonical basis vector ends at its own free column.
Index free_column(const IntVector& v) {
  for (Index j = v.size(); j-- > 0;)
    if (v(j) != 0) return j;
  return -1;
}
}  // namespace

IdentitySearch find_identities(ExpansionMatrix expansion, std::optional<std::uint32_t> modulus) {
  IntMatrix basis;
  Index rank_value = 0;
  std::string field_name;
  if (!modulus) {
    const Rationals q;
    auto echelon = rref(to_field(q, expansion.matrix), q);
    rank_value = echelon.rank;
    basis = nullspace_basis(echelon, q);
    field_name = q.name();
  } else {
    const PrimeField f = PrimeField::for_degree(*modulus, expansion.basis.degree());
    auto kernel = nullspace_mod_p(expansion.matrix, f);
    rank_value = kernel.rank;
    basis = std::move(kernel.basis);
    field_name = f.name();
  }

  IdentitySearch out{std::move(expansion), field_name, rank_value, {}};
  const MonomialBasis& mb = out.expansion.basis;
  for (Index r = 0; r < basis.rows(); ++r) {
    TernaryPolynomial p(mb.degree(), mb.level());
    for (Index j = 0; j < basis.cols(); ++j)
      if (basis(r, j) != 0) p.add(mb[static_cast<std::size_t>(j)], Rational(basis(r, j)));
    out.identities.push_back({std::move(p), basis.row(r)});
  }
  std::stable_sort(out.identities.begin(), out.identities.end(), [](const IdentityRecord& x, const IdentityRecord& y) {
    if (x.term_count() != y.term_count()) return x.term_count() < y.term_count();
    return free_column(x.coefficients) < free_column(y.coefficients);
  });
  return out;
}

// ---- named identities ----

TernaryPolynomial builtin_identity(std::string_view name) {
  if (name == "P") {
    TernaryPolynomial p(3);
    p.add(TernaryMonomial::parse("(abc)"), 1);
    p.add(TernaryMonomial::parse("(acb)"), 1);
    return p;
  }
  if (name == "Q") {
    TernaryPolynomial p(5);
    p.add(TernaryMonomial::parse("(a(bcd)e)"), 1);
    p.add(TernaryMonomial::parse("(a(cbd)e)"), 1);
    return p;
  }
  if (name == "R") {
    TernaryPolynomial p(7);
    p.add_alternating_sum("((a(BCD)E)FG)", Rational(1, 12));
    p.add_alternating_sum("((aBC)(DEF)G)", Rational(-1, 12));
    return p;
  }
  if (name == "S") {
    TernaryPolynomial p(7);
    p.add_alternating_sum("(((aBC)Dg)EF)", Rational(1, 4));
    p.add_alternating_sum("((a(BCD)E)Fg)", Rational(-1, 6));
    p.add_alternating_sum("((a(BCg)D)EF)", Rational(1, 4));
    p.add_alternating_sum("((aBC)(DEF)g)", Rational(1, 12));
    p.add_alternating_sum("(a((BCD)Eg)F)", Rational(-1, 6));
    p.add_alternating_sum("(a(bCD)(EFG))", Rational(-1, 12));
    return p;
  }
  throw std::invalid_argument("unknown identity '" + std::string(name) + "' (expected P, Q, R or S)");
}

std::vector<std::string> nonlinear_identity_names() {
  return {"I31111",    "I22111.1",  "I22111.2",  "I211111.1",
          "I211111.2", "I211111.3", "I211111.4", "I211111.5"};
}

TernaryPolynomial nonlinear_identity(std::string_view name) {
  auto four_sums = [](const char* p1, const char* p2, const char* p3, const char* p4) {
    TernaryPolynomial p(7);
    p.add_alternating_sum(p1, Rational(1, 4));
    p.add_alternating_sum(p2, Rational(-1, 12));
    p.add_alternating_sum(p3, Rational(-1, 12));
    p.add_alternating_sum(p4, Rational(-1, 6));
    return p;
  };
  if (name == "I31111")
    return four_sums("(((aAB)aC)DE)", "((a(ABC)a)DE)", "((aAB)(CDE)a)", "(a((BCD)aE)A)");
  if (name == "I22111.1" || name == "I22111.2") {
    auto p = four_sums("(((aAB)bC)DE)", "((a(ABC)b)DE)", "((aAB)(CDE)b)", "(a((ABC)bD)E)");
    return name.back() == '1' ? p : p.renamed("ab", "ba");
  }
  if (name.substr(0, 8) == "I211111." && name.size() == 9 && name[8] >= '1' && name[8] <= '5') {
    auto p = four_sums("(((bAC)aD)EF)", "((b(ACD)a)EF)", "((bAC)(DEF)a)", "(b((ACD)aE)F)");
    if (name[8] == '1') return p;
    const char other = static_cast<char>('c' + (name[8] - '2'));
    return p.renamed(std::string{'b', other}, std::string{other, 'b'});
  }
  throw std::invalid_argument("unknown nonlinear identity '" + std::string(name) + "'");
}

// ---- orbits ----

Index orbit_span_rank(const std::vector<TernaryPolynomial>& generators, const std::vector<TernaryPolynomial>& extra,
                      std::optional<std::uint32_t> modulus) {
  if (generators.empty() && extra.empty()) return 0;
  if (!modulus) return orbit_rank(generators, extra, Rationals{});
  const int n = generators.empty() ? extra.front().degree() : generators.front().degree();
  return orbit_rank(generators, extra, PrimeField::for_degree(*modulus, n));
}

Index orbit_dimension(const TernaryPolynomial& p, std::optional<std::uint32_t> modulus) {
  return orbit_span_rank({p}, {}, modulus);
}

// ---- degree 9 ----

std::vector<TernaryPolynomial> lift_to_degree9(const TernaryPolynomial& t) {
  if (t.degree() != 7 || t.variables() != first_letters(7))
    throw std::invalid_argument("lifting needs a multilinear identity in a..g");
  std::vector<TernaryPolynomial> out;
  for (int k = 0; k < 7; ++k) {
    const char x = static_cast<char>('a' + k);
    TernaryPolynomial lifted(9);
    for (const auto& [m, c] : t.terms()) {
      std::string code;
      for (char ch : m.code()) {
        if (ch == x)
          code += std::string("(") + x + "hi)";
        else
          code += ch;
      }
      lifted.add(TernaryMonomial::from_code(std::move(code)), c);
    }
    out.push_back(std::move(lifted));
  }
  const TernaryMonomial h = TernaryMonomial::leaf('h'), i = TernaryMonomial::leaf('i');
  for (int where = 0; where < 3; ++where) {
    TernaryPolynomial lifted(9);
    for (const auto& [m, c] : t.terms()) {
      if (where == 0) lifted.add(TernaryMonomial::node(m, h, i), c);
      if (where == 1) lifted.add(TernaryMonomial::node(h, m, i), c);
      if (where == 2) lifted.add(TernaryMonomial::node(h, i, m), c);
    }
    out.push_back(std::move(lifted));
  }
  return out;
}

}  // namespace pats
