#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "pats/identities.hpp"
#include "pats/ternary.hpp"
#include "properties.hpp"

#include <set>

using namespace pats;

namespace {

long factorial(int n) {
  long f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

std::string as_letters(const Permutation& p) {
  std::string s;
  for (int i : p.images()) s += static_cast<char>('a' + i);
  return s;
}

// closure of a generating set under composition
std::size_t group_order(const std::vector<Permutation>& generators, int n) {
  std::set<Permutation> seen{Permutation::identity(n)};
  std::vector<Permutation> frontier{Permutation::identity(n)};
  while (!frontier.empty()) {
    const Permutation p = frontier.back();
    frontier.pop_back();
    for (const auto& g : generators)
      if (seen.insert(p * g).second) frontier.push_back(p * g);
  }
  return seen.size();
}

}  // namespace

TEST_CASE("monomial codes") {
  const auto m = TernaryMonomial::parse("((a,b,c),d,e)");
  CHECK(m.code() == "((abc)de)");
  CHECK(TernaryMonomial::parse("((abc)de)") == m);
  CHECK(TernaryMonomial::parse(" ( (a, b,c), d, e ) ") == m);
  CHECK(m.to_string() == "((a,b,c),d,e)");
  CHECK(m.degree() == 5);
  CHECK(m.labels() == "abcde");
  CHECK(m.shape() == "((...)..)");
  CHECK(m.relabeled("edcba").to_string() == "((e,d,c),b,a)");
  CHECK(m.children()[0].to_string() == "(a,b,c)");
  CHECK_THROWS(TernaryMonomial::parse("(a,b)"));
  CHECK_THROWS(TernaryMonomial::parse("(a,b,c"));
}

TEST_CASE("association type counts") {
  const int ca[] = {1, 1, 1, 2, 4}, pa[] = {1, 1, 2, 5, 12};
  for (int i = 0; i < 5; ++i) {
    const auto t = generate_types(2 * i + 1);
    CHECK(static_cast<int>(t.ca.size()) == ca[i]);
    CHECK(static_cast<int>(t.pa.size()) == pa[i]);
  }
  CHECK_THROWS(generate_types(4));
}

TEST_CASE("countsymmetry in degree 7") {
  const auto pa = generate_types(7).pa;
  REQUIRE(pa.size() == 5u);
  CHECK(pa[0].to_string() == "(((a,b,c),d,e),f,g)");
  CHECK(pa[1].to_string() == "((a,(b,c,d),e),f,g)");
  CHECK(pa[2].to_string() == "((a,b,c),(d,e,f),g)");
  const long expected[] = {8, 12, 12, 12, 72};
  for (std::size_t i = 0; i < 5; ++i) CHECK(countsymmetry(pa[i]) == expected[i]);
}

TEST_CASE("monomial counts agree with countsymmetry") {
  for (int n : {3, 5, 7}) {
    long total = 0;
    for (const auto& t : reduced_types(n, Reduction::PQ)) total += factorial(n) / countsymmetry(t);
    CHECK(MonomialBasis(n, first_letters(n), Reduction::PQ).size() == static_cast<std::size_t>(total));
  }
  CHECK(enumerate_monomials(7, first_letters(7)).size() == 1960u);
  // below degree 7 fewer symmetries are available
  CHECK(enumerate_monomials(3, "abc").size() == 6u);
  CHECK(enumerate_monomials(5, "abcde").size() == 90u);
}

TEST_CASE("degree 7 skew-symmetries") {
  const auto skew = skew_identities(7);
  REQUIRE(skew.size() == 15u);
  const auto pa = generate_types(7).pa;
  std::set<std::string> got;
  for (const auto& s : skew) got.insert(pa[static_cast<std::size_t>(s.type)].pattern.relabeled(as_letters(s.perm)).code());
  const std::set<std::string> expected{
      "(((acb)de)fg)", "(((abc)ed)fg)", "(((abc)de)gf)", "((a(cbd)e)fg)", "((a(bdc)e)fg)",
      "((a(bcd)e)gf)", "((acb)(def)g)", "((abc)(edf)g)", "((abc)(dfe)g)", "(a((cbd)ef)g)",
      "(a((bdc)ef)g)", "(a((bcd)fe)g)", "(a(cbd)(efg))", "(a(bdc)(efg))", "(a(efg)(bcd))"};
  CHECK(got == expected);
}

TEST_CASE("skew-symmetries generate groups of order countsymmetry") {
  for (int n : {5, 7, 9}) {
    const auto pa = generate_types(n).pa;
    const auto skew = skew_identities(n);
    for (std::size_t k = 0; k < pa.size(); ++k) {
      std::vector<Permutation> generators;
      for (const auto& s : skew)
        if (static_cast<std::size_t>(s.type) == k) generators.push_back(s.perm);
      CHECK_MESSAGE(static_cast<long>(group_order(generators, n)) == countsymmetry(pa[k]), pa[k].to_string());
    }
  }
}

TEST_CASE("straightening") {
  const auto s = straighten(TernaryMonomial::parse("(a,c,b)"));
  CHECK(s.sign == -1);
  CHECK(s.monomial.to_string() == "(a,b,c)");
  CHECK(straighten(TernaryMonomial::parse("(a,b,b)")).sign == 0);
  CHECK(straighten(TernaryMonomial::parse("(a,c,b)"), Reduction::None).sign == 1);
  // Q moves the larger sibling first
  const auto q = straighten(TernaryMonomial::parse("(a,b,(c,d,e))"));
  CHECK(q.sign == -1);
  CHECK(q.monomial.to_string() == "(a,(c,d,e),b)");

  CHECK(strictly_precedes(TernaryMonomial::parse("a"), TernaryMonomial::parse("(a,b,c)")));
  CHECK(strictly_precedes(TernaryMonomial::parse("(a,b,c)"), TernaryMonomial::parse("(a,b,d)")));
  CHECK_FALSE(strictly_precedes(TernaryMonomial::parse("b"), TernaryMonomial::parse("a")));
  CHECK(sibling_precedes(TernaryMonomial::parse("(a,b,c)"), TernaryMonomial::parse("a")));
}

TEST_CASE("straightening is idempotent") {
  const auto o = pats::props::straightening_idempotent(10000, 9);
  CHECK(o.checked == 10000);
  CHECK_MESSAGE(o.ok(), o.first_failure);
}

TEST_CASE("straightening preserves the expansion") {
  const auto o = pats::props::straightening_sound(5);
  CHECK_MESSAGE(o.ok(), o.first_failure);
}

TEST_CASE("monomial basis") {
  const MonomialBasis b(5, "abcde", Reduction::P);
  for (std::size_t i = 0; i < b.size(); ++i) {
    CHECK(straighten(b[i], Reduction::P).monomial == b[i]);
    CHECK(b.index_of(b[i]) == static_cast<long>(i));
  }
  CHECK(b.index_of(TernaryMonomial::parse("((a,c,b),d,e)")) == -1);
  const auto counts = b.type_counts();
  CHECK(std::accumulate(counts.begin(), counts.end(), std::size_t{0}) == b.size());
}

TEST_CASE("ternary polynomials") {
  TernaryPolynomial p(3, Reduction::P);
  p.add(TernaryMonomial::parse("(a,b,c)"), Rational(1));
  p.add(TernaryMonomial::parse("(a,c,b)"), Rational(1));
  CHECK(p.empty());

  TernaryPolynomial alt(3, Reduction::P);
  alt.add_alternating_sum("(a,B,C)", Rational(1));
  CHECK(alt.size() == 1u);
  CHECK(alt.terms().coefficient(TernaryMonomial::parse("(a,b,c)")) == 2);

  TernaryPolynomial r(5);
  r.add(TernaryMonomial::parse("((a,b,c),d,e)"), Rational(3));
  CHECK(r.variables() == "abcde");
  CHECK(r.permuted(Permutation::parse("21345")).terms().coefficient(TernaryMonomial::parse("((b,a,c),d,e)")) == 3);
  CHECK(r.renamed("abcde", "aabcd").variables() == "aabcd");
}
