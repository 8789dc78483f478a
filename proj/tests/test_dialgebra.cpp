#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "pats/dialgebra.hpp"
#include "pats/identities.hpp"
#include "pats/ternary.hpp"
#include "properties.hpp"

#include <set>

using namespace pats;

TEST_CASE("word parsing") {
  const DialgebraWord w = DialgebraWord::parse("bc^ade");
  CHECK(w.letters() == "bcade");
  CHECK(w.center() == 2);
  CHECK(w.to_string() == "bc^ade");
  CHECK_THROWS(DialgebraWord::parse("abc"));
  CHECK_THROWS(DialgebraWord::parse("a^b^c"));
}

TEST_CASE("products keep the center of the barred side") {
  const auto x = DialgebraWord::parse("a^b"), y = DialgebraWord::parse("c^d");
  CHECK(left_product(x, y) == DialgebraWord::parse("a^bcd"));
  CHECK(right_product(x, y) == DialgebraWord::parse("abc^d"));
}

TEST_CASE("dialgebra axioms") {
  const auto o = pats::props::dialgebra_axioms(1000);
  CHECK(o.checked == 1000);
  CHECK_MESSAGE(o.ok(), o.first_failure);
}

TEST_CASE("word counts") {
  for (int n = 1; n <= 5; ++n) {
    const auto words = all_words(first_letters(n));
    const std::set<DialgebraWord> distinct(words.begin(), words.end());
    long f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    CHECK(static_cast<long>(distinct.size()) == n * f);
    CHECK(distinct.size() == words.size());
    CHECK(std::is_sorted(words.begin(), words.end()));
  }
  CHECK(all_words("aab").size() == 9u);
}

TEST_CASE("kp transform") {
  const OpTree t = OpTree::parse("((a,b),c)");
  CHECK(t.leaf_count() == 3);
  CHECK(t.leaves() == "abc");
  CHECK(kp_transform(t, 0) == DialgebraWord::parse("^abc"));
  CHECK(kp_render(t, 0) == "((a -| b) -| c)");
  CHECK(kp_render(t, 1) == "((a |- b) -| c)");
  CHECK(kp_render(t, 2) == "((a |- b) |- c)");
  CHECK_THROWS_AS(kp_transform(t, 3), std::out_of_range);

  // the ATS with center a is the PATS
  const auto pats_op = TernaryOperation::from_polynomial(kp_transform(alternating_ternary_sum(), 'a'));
  for (const char* m : {"(a,b,c)", "((a,b,c),d,e)", "(a,(b,c,d),e)"})
    CHECK(expand(TernaryMonomial::parse(m), pats_op) == expand_pats(TernaryMonomial::parse(m)));
  CHECK(to_string(kp_transform(alternating_ternary_sum(), 'a')) == "^abc - ^acb - b^ac + c^ab + bc^a - cb^a");
}

TEST_CASE("centering the ATS at b or c gives an equivalent operation") {
  const auto stack = [](const IdentitySearch& s) {
    IntMatrix m(s.nullity(), static_cast<Index>(s.expansion.basis.size()));
    for (Index i = 0; i < m.rows(); ++i) m.row(i) = s.identities[static_cast<std::size_t>(i)].coefficients;
    return m;
  };
  const IntMatrix reference = stack(find_identities(3, "abc", std::nullopt));
  REQUIRE(reference.rows() == 3);

  for (char center : {'b', 'c'}) {
    const int slot = center - 'a';
    auto terms = TernaryOperation::from_polynomial(kp_transform(alternating_ternary_sum(), center)).terms();
    // move the center argument to the front
    for (auto& t : terms) {
      for (int& a : t.order) a = a == slot ? 0 : a == 0 ? slot : a;
      t.center_argument = t.center_argument == slot ? 0 : t.center_argument == 0 ? slot : t.center_argument;
    }
    const auto s = find_identities(3, "abc", std::nullopt, TernaryOperation(terms));
    REQUIRE(s.nullity() == 3);
    // canonical bases, so equal spans means equal matrices
    CHECK(stack(s) == reference);

    // without the relabeling it is skew in the other two arguments
    CHECK(find_identities(3, "abc", std::nullopt, TernaryOperation::from_polynomial(kp_transform(alternating_ternary_sum(), center))).nullity() == 3);
  }
}
