// Acceptance runner: one PASS/FAIL line per criterion.

#include "pats/repanalysis.hpp"
#include "properties.hpp"

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

using namespace pats;

namespace {

struct Report {
  std::vector<std::string> problems;
  void expect(bool ok, const std::string& what) {
    if (!ok) problems.push_back(what);
  }
  template <class A, class B>
  void equal(const A& got, const B& want, const std::string& what) {
    if (!(got == want)) {
      std::ostringstream s;
      s << what << ": got " << got << ", want " << want;
      problems.push_back(s.str());
    }
  }
};

std::map<std::string, int> signed_words(const std::string& text) {
  // "^abcde - ^abced + ..." as word -> sign
  std::map<std::string, int> out;
  std::istringstream in(text);
  std::string tok;
  int sign = 1;
  while (in >> tok) {
    if (tok == "+") sign = 1;
    else if (tok == "-") sign = -1;
    else {
      out[DialgebraWord::parse(tok).to_string()] += sign;
      sign = 1;
    }
  }
  return out;
}

std::map<std::string, int> as_signed_words(const DialgebraPolynomial& p) {
  std::map<std::string, int> out;
  for (const auto& [w, c] : p) out[w.to_string()] = static_cast<int>(numerator(c));
  return out;
}

std::vector<std::int64_t> magnitudes_of(const TernaryPolynomial& p) {
  std::set<std::int64_t> m;
  for (const auto& [mono, c] : p.terms()) {
    if (denominator(c) != 1) return {-1};
    m.insert(std::abs(static_cast<std::int64_t>(numerator(c))));
  }
  return {m.begin(), m.end()};
}

void criterion1(Report& r) {
  ExpansionMatrix e = build_expansion_matrix(3, "abc");
  r.equal(e.row_count(), 18, "rows");
  r.equal(e.col_count(), 6, "columns");
  const std::vector<std::string> words = {"^abc", "^acb", "^bac", "^bca", "^cab", "^cba", "a^bc", "a^cb", "b^ac",
                                          "b^ca", "c^ab", "c^ba", "ab^c", "ac^b", "ba^c", "bc^a", "ca^b", "cb^a"};
  const std::vector<std::string> monomials = {"(a,b,c)", "(a,c,b)", "(b,a,c)", "(b,c,a)", "(c,a,b)", "(c,b,a)"};
  const int table[6][18] = {
      {1, -1, 0, 0, 0, 0, 0, 0, -1, 0, 1, 0, 0, 0, 0, 1, 0, -1},
      {-1, 1, 0, 0, 0, 0, 0, 0, 1, 0, -1, 0, 0, 0, 0, -1, 0, 1},
      {0, 0, 1, -1, 0, 0, -1, 0, 0, 0, 0, 1, 0, 1, 0, 0, -1, 0},
      {0, 0, -1, 1, 0, 0, 1, 0, 0, 0, 0, -1, 0, -1, 0, 0, 1, 0},
      {0, 0, 0, 0, 1, -1, 0, -1, 0, 1, 0, 0, 1, 0, -1, 0, 0, 0},
      {0, 0, 0, 0, -1, 1, 0, 1, 0, -1, 0, 0, -1, 0, 1, 0, 0, 0},
  };
  for (std::size_t i = 0; i < words.size() && i < e.rows.size(); ++i) r.equal(e.rows[i].to_string(), words[i], "word order");
  for (std::size_t j = 0; j < monomials.size() && j < e.basis.size(); ++j)
    r.equal(e.basis[j].to_string(), monomials[j], "monomial order");
  const Eigen::Matrix<std::int32_t, Eigen::Dynamic, Eigen::Dynamic> dense(e.matrix);
  bool same = dense.rows() == 18 && dense.cols() == 6;
  for (int j = 0; same && j < 6; ++j)
    for (int i = 0; i < 18; ++i) same = same && dense(i, j) == table[j][i];
  r.expect(same, "matrix differs from the transposed table");
  const IdentitySearch s = find_identities(std::move(e), std::nullopt);
  r.equal(s.nullity(), 3, "nullity");
  std::set<std::string> got, want;
  for (const auto& rec : s.identities) got.insert(rec.polynomial.to_string());
  for (const char* w : {"(a,b,c) + (a,c,b)", "(b,a,c) + (b,c,a)", "(c,a,b) + (c,b,a)"}) want.insert(w);
  r.expect(got == want, "nullspace basis is not the three permutations of P");
}

void criterion2(Report& r) {
  const MonomialBasis basis(5, "abcde", Reduction::P);
  r.equal(basis.size(), 90u, "monomials");
  r.expect(basis.type_counts() == std::vector<std::size_t>{30, 60}, "type split 30 + 60");
  const ExpansionMatrix e = build_expansion_matrix(5, "abcde");
  r.equal(e.row_count(), 600, "rows");
  r.equal(e.col_count(), 90, "columns");
  r.equal(expansion_rank(e, std::nullopt), 50, "rank over Q");
  r.equal(expansion_rank(e, 101u), 50, "rank mod 101");
  r.equal(find_identities(e, std::nullopt).nullity(), 40, "nullity");

  // leading ones of the row canonical form, 1-based
  std::vector<Index> pivots;
  for (int c = 1; c <= 33; ++c) pivots.push_back(c);
  for (int start : {36, 48, 60, 72, 84}) {
    if (start > 36) {
      for (int c = start - 5; c <= start - 3; ++c) pivots.push_back(c);
    }
    pivots.push_back(start);
  }
  const auto echelon = rref(to_field(Rationals{}, e.matrix), Rationals{});
  std::vector<Index> got;
  for (Index p : echelon.pivots) got.push_back(p + 1);
  r.expect(got == pivots, "pivot columns of the row canonical form");

  const std::string first =
      "^abcde - ^abced - ^acbde + ^acbed - b^acde + b^aced + c^abde - c^abed - d^abce"
      " + d^acbe + e^abcd - e^acbd + bc^ade - bc^aed - cb^ade + cb^aed + db^ace - dc^abe"
      " + de^abc - de^acb - eb^acd + ec^abd - ed^abc + ed^acb - dbc^ae + dcb^ae - deb^ac"
      " + dec^ab + ebc^ad - ecb^ad + edb^ac - edc^ab + debc^a - decb^a - edbc^a + edcb^a";
  const std::string second =
      "^abcde - ^abdce - ^acbde + ^acdbe + ^adbce - ^adcbe - ^aebcd + ^aebdc + ^aecbd"
      " - ^aecdb - ^aedbc + ^aedcb + e^abcd - e^abdc - e^acbd + e^acdb + e^adbc - e^adcb"
      " - bcd^ae + bdc^ae + cbd^ae - cdb^ae - dbc^ae + dcb^ae + bcde^a - bdce^a - cbde^a"
      " + cdbe^a + dbce^a - dcbe^a - ebcd^a + ebdc^a + ecbd^a - ecdb^a - edbc^a + edcb^a";
  const auto e1 = expand_pats(TernaryMonomial::parse("((a,b,c),d,e)"));
  const auto e2 = expand_pats(TernaryMonomial::parse("(a,(b,c,d),e)"));
  r.equal(e1.size(), 36u, "terms of [[a,b,c],d,e]");
  r.equal(e2.size(), 36u, "terms of [a,[b,c,d],e]");
  r.expect(as_signed_words(e1) == signed_words(first), "expansion of [[a,b,c],d,e]");
  r.expect(as_signed_words(e2) == signed_words(second), "expansion of [a,[b,c,d],e]");
}

void criterion3(Report& r) {
  const IdentitySearch s = find_identities(7, "abcdefg", 101u);
  const MonomialBasis& b = s.expansion.basis;
  r.equal(b.size(), 1960u, "monomials");
  r.expect(b.type_counts() == std::vector<std::size_t>{630, 420, 420, 420, 70}, "type split");
  r.equal(s.expansion.row_count(), 35280, "rows");
  r.equal(s.expansion.col_count(), 1960, "columns");
  r.equal(s.rank, 1911, "rank");
  r.equal(s.nullity(), 49, "nullity");
  struct Group {
    int count;
    std::size_t terms;
    std::vector<std::int64_t> magnitudes;
    std::vector<int> types;
  };
  const std::vector<Group> want = {{7, 120, {1}, {2, 3}},
                                   {28, 120, {1}, {1, 2, 3, 4}},
                                   {7, 120, {1}, {1, 2, 3, 4, 5}},
                                   {7, 180, {1, 2}, {1, 2, 3, 4}}};
  std::size_t at = 0;
  for (const auto& g : want)
    for (int k = 0; k < g.count; ++k, ++at) {
      if (at >= s.identities.size()) break;
      const auto& rec = s.identities[at];
      const bool ok = rec.term_count() == g.terms && rec.coefficient_magnitudes() == g.magnitudes && rec.types(b) == g.types;
      r.expect(ok, "identity " + std::to_string(at + 1) + " out of profile");
    }
}

void criterion4(Report& r) {
  const TernaryPolynomial R = builtin_identity("R"), S = builtin_identity("S");
  r.equal(R.size(), 120u, "terms of R");
  r.equal(S.size(), 120u, "terms of S");
  r.expect(magnitudes_of(R) == std::vector<std::int64_t>{1}, "coefficients of R are +-1");
  r.expect(magnitudes_of(S) == std::vector<std::int64_t>{1}, "coefficients of S are +-1");
  r.expect(is_identity(R), "R is an identity");
  r.expect(is_identity(S), "S is an identity");
  const Index dr = orbit_dimension(R), ds = orbit_dimension(S), both = orbit_span_rank({R, S}, {});
  r.equal(dr, 7, "orbit dimension of R");
  r.equal(ds, 42, "orbit dimension of S");
  r.equal(both, 49, "orbit(R) + orbit(S)");
  r.equal(dr + ds - both, 0, "intersection");
}

void criterion5(Report& r) {
  struct Row {
    const char* partition;
    Index d, sym, exp, fresh;
  };
  const Row table[] = {{"7", 1, 5, 5, 0},         {"61", 6, 30, 30, 0},      {"52", 14, 70, 70, 0},
                       {"511", 15, 75, 75, 0},    {"43", 14, 69, 69, 0},     {"421", 35, 170, 170, 0},
                       {"4111", 20, 96, 96, 0},   {"331", 21, 99, 99, 0},    {"322", 21, 96, 96, 0},
                       {"3211", 35, 156, 156, 0}, {"31111", 15, 63, 64, 1},  {"2221", 14, 56, 56, 0},
                       {"22111", 14, 52, 53, 1},  {"211111", 6, 17, 20, 3},  {"1111111", 1, 0, 2, 2}};
  const RankTable t = rank_table(7);
  r.equal(t.rows.size(), 15u, "rows");
  for (std::size_t i = 0; i < t.rows.size() && i < 15; ++i) {
    const auto& got = t.rows[i];
    const auto& want = table[i];
    const bool ok = got.partition.to_string() == want.partition && got.dimension == want.d && got.symrank == want.sym &&
                    got.exprank == want.exp && got.newrank() == want.fresh;
    r.expect(ok, std::string("row ") + want.partition);
  }
  std::map<std::string, Index> positive;
  for (const auto& row : t.rows)
    if (row.newrank() > 0) positive[row.partition.to_string()] = row.newrank();
  r.expect(positive == std::map<std::string, Index>{{"31111", 1}, {"22111", 1}, {"211111", 3}, {"1111111", 2}},
           "partitions with new identities");
  r.equal(t.weighted_newrank(), 49, "sum of newrank * dimension");
}

void criterion6(Report& r) {
  const IdentitySearch a = find_identities(7, "aaabcde", 101u);
  r.equal(a.expansion.basis.size(), 165u, "monomials for a^3bcde");
  r.equal(a.rank, 164, "rank for a^3bcde");
  r.equal(a.nullity(), 1, "nullity for a^3bcde");
  if (a.nullity() == 1) r.equal(a.identities[0].term_count(), 60u, "terms of the a^3bcde identity");
  r.equal(find_identities(7, "aabbcde", 101u).nullity(), 2, "nullity for a^2b^2cde");
  const IdentitySearch c = find_identities(7, "aabcdef", 101u);
  r.equal(c.nullity(), 12, "nullity for a^2bcdef");
  long sixty = 0;
  for (const auto& rec : c.identities) sixty += rec.term_count() == 60;
  r.equal(sixty, 5, "60-term identities for a^2bcdef");
  for (const auto& name : nonlinear_identity_names()) r.expect(is_identity(nonlinear_identity(name)), name + " is an identity");
}

void criterion7(Report& r) {
  const auto types = generate_types(9);
  r.equal(types.ca.size(), 4u, "CA types in degree 9");
  r.equal(types.pa.size(), 12u, "PA types in degree 9");
  RankOptions o;
  o.lifted = true;
  const RankTable t = rank_table(9, o);
  r.equal(t.rows.size(), 30u, "partitions of 9");
  for (const auto& row : t.rows) {
    const std::string p = row.partition.to_string();
    r.expect(row.symrank <= *row.symlifrank && *row.symlifrank <= row.exprank, "sandwich fails in " + p);
    r.expect(*row.symlifrank == row.exprank, "symlifrank != exprank in " + p);
  }
}

void criterion8(Report& r) {
  auto check = [&](const props::Outcome& o, const std::string& what) {
    r.expect(o.ok(), what + (o.first_failure.empty() ? "" : " (" + o.first_failure + ")"));
  };
  check(props::dialgebra_axioms(1000), "dialgebra axioms");
  check(props::straightening_idempotent(10000, 9), "straightening idempotence");
  check(props::straightening_sound(7), "straightening soundness");
  check(props::representation_homomorphism(100, 7), "representation homomorphism");
  check(props::dimension_squares({3, 5, 7, 9}), "sum of squared dimensions");
  check(props::rank_agreement_low_degree(), "rank over Q versus F_p");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Report&)>>> criteria = {
      {"degree 3 expansion matrix and nullspace", criterion1},
      {"degree 5 monomials, rank and expansions", criterion2},
      {"degree 7 multilinear nullspace", criterion3},
      {"identities R and S", criterion4},
      {"degree 7 ranks by partition", criterion5},
      {"degree 7 nonlinear identities", criterion6},
      {"degree 9 symlifrank = exprank", criterion7},
      {"property suites", criterion8},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Report report;
    const auto start = std::chrono::steady_clock::now();
    try {
      criteria[i].second(report);
    } catch (const std::exception& e) {
      report.problems.push_back(std::string("exception: ") + e.what());
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool ok = report.problems.empty();
    failed += !ok;
    std::cout << (ok ? "PASS" : "FAIL") << "  criterion " << i + 1 << ": " << criteria[i].first << "  ("
              << std::fixed << std::setprecision(2) << seconds << " s)\n";
    for (const auto& p : report.problems) std::cout << "      " << p << '\n';
    std::cout.flush();
  }
  return failed == 0 ? 0 : 1;
}
