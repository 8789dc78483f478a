#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "pats/exactla.hpp"
#include "pats/identities.hpp"

#include <algorithm>
#include <random>

using namespace pats;

namespace {

IntMatrix small() {
  IntMatrix m(3, 3);
  m << 1, 2, 3,
       2, 4, 6,
       1, 0, 1;
  return m;
}

IntMatrix random_matrix(Index rows, Index cols, int density, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> coin(0, 99), value(-3, 3);
  IntMatrix m = IntMatrix::Zero(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j)
      if (coin(rng) < density) m(i, j) = value(rng);
  return m;
}

SparseIntMatrix to_sparse(const IntMatrix& m) {
  SparseIntMatrix s(m.rows(), m.cols());
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j)
      if (m(i, j) != 0) s.insert(i, j) = static_cast<std::int32_t>(m(i, j));
  s.makeCompressed();
  return s;
}

}  // namespace

TEST_CASE("rational parsing and printing") {
  CHECK(parse_rational("-6/4") == Rational(-3, 2));
  CHECK(to_string(Rational(-3, 2)) == "-3/2");
  CHECK(to_string(Rational(5)) == "5");
}

TEST_CASE("prime field arithmetic") {
  const PrimeField f(101);
  CHECK(f.modulus() == 101u);
  CHECK(f.from_int(-1) == 100);
  CHECK(f.mul(2, f.inv(2)) == 1);
  CHECK(f.inv(2) == 51);
  CHECK(f.from_rational(Rational(1, 2)) == 51);
  CHECK(f.lift(100) == -1);
  CHECK_THROWS(PrimeField(100));
  for (long long a = 1; a < 101; ++a) CHECK(f.mul(a, f.inv(a)) == 1);
}

TEST_CASE("rref of a small matrix") {
  const Rationals q;
  const auto e = rref(to_field(q, small()), q);
  CHECK(e.rank == 2);
  CHECK(e.pivots == std::vector<Index>{0, 1});
  CHECK(e.form(0, 2) == 1);
  CHECK(e.form(1, 2) == 1);
  CHECK(e.form.row(2).isZero());

  const IntMatrix n = nullspace_basis(to_field(q, small()), q);
  REQUIRE(n.rows() == 1);
  // primitive, first nonzero entry positive
  CHECK(n(0, 0) == 1);
  CHECK(n(0, 1) == 1);
  CHECK(n(0, 2) == -1);
}

TEST_CASE("rref is idempotent and nullspace vectors are annihilated") {
  std::mt19937_64 rng(11);
  const Rationals q;
  const PrimeField f(101);
  for (int t = 0; t < 20; ++t) {
    const IntMatrix m = random_matrix(6 + t % 5, 9, 40, rng);
    const auto once = rref(to_field(q, m), q);
    const auto twice = rref(once.form, q);
    CHECK(twice.form == once.form);
    CHECK(twice.rank == once.rank);

    const IntMatrix n = nullspace_basis(once, q);
    CHECK(n.rows() == m.cols() - once.rank);
    CHECK((m * n.transpose()).isZero());
    // canonical: one vector per free column, ending there
    for (Index r = 0; r < n.rows(); ++r) {
      Index last = n.cols() - 1;
      while (n(r, last) == 0) --last;
      CHECK(std::find(once.pivots.begin(), once.pivots.end(), last) == once.pivots.end());
    }

    const auto mod = rref(to_field(f, m), f);
    CHECK(rref(mod.form, f).form == mod.form);
  }
}

TEST_CASE("inverse") {
  const Rationals q;
  IntMatrix a(2, 2);
  a << 2, 1,
       1, 1;
  const auto inv = inverse(to_field(q, a), q);
  CHECK(inv(0, 0) == 1);
  CHECK(inv(0, 1) == -1);
  CHECK(inv(1, 0) == -1);
  CHECK(inv(1, 1) == 2);

  const PrimeField f(103);
  const auto fa = to_field(f, a);
  const auto prod = multiply(fa, inverse(fa, f), f);
  CHECK(prod == to_field(f, IntMatrix(IntMatrix::Identity(2, 2))));

  CHECK_THROWS_AS(inverse(to_field(q, small()), q), std::domain_error);
}

TEST_CASE("incremental echelon tracks the row space") {
  const Rationals q;
  const auto m = to_field(q, small());
  IncrementalEchelon<Rationals> inc(3, q);
  CHECK(inc.insert(m.row(0)));
  CHECK_FALSE(inc.insert(m.row(1)));
  CHECK(inc.insert(m.row(2)));
  CHECK(inc.rank() == 2);
  RowVector<Rational> v(3);
  v << 3, 2, 5;
  CHECK(inc.contains(v));
  v(2) = 4;
  CHECK_FALSE(inc.contains(v));
}

TEST_CASE("streaming sparse nullspace agrees with dense elimination") {
  std::mt19937_64 rng(5);
  const PrimeField f(101);
  for (int t = 0; t < 20; ++t) {
    const IntMatrix m = random_matrix(30, 12, 15, rng);
    const auto sparse = nullspace_mod_p(to_sparse(m), f);
    const auto dense = rref(to_field(f, m), f);
    CHECK(sparse.rank == dense.rank);
    CHECK(sparse.basis == nullspace_basis(dense, f));
  }
}

TEST_CASE("rank over Q equals rank mod 101 on degree-7 submatrices") {
  const ExpansionMatrix e = build_expansion_matrix(7, first_letters(7));
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<Index> col(0, e.col_count() - 1);
  const Rationals q;
  const PrimeField f(101);
  const SparseIntMatrix by_column = SparseIntMatrix(e.matrix.transpose());
  for (int t = 0; t < 5; ++t) {
    std::vector<Index> cols(30);
    for (auto& c : cols) c = col(rng);
    std::vector<Index> rows;
    for (Index c : cols)
      for (SparseIntMatrix::InnerIterator it(by_column, c); it; ++it) rows.push_back(it.col());
    std::shuffle(rows.begin(), rows.end(), rng);
    rows.resize(std::min<std::size_t>(rows.size(), 60));
    IntMatrix sub(static_cast<Index>(rows.size()), 30);
    for (Index i = 0; i < sub.rows(); ++i)
      for (Index j = 0; j < 30; ++j) sub(i, j) = e.matrix.coeff(rows[static_cast<std::size_t>(i)], cols[static_cast<std::size_t>(j)]);
    CHECK(rank(to_field(q, sub), q) > 0);
    CHECK(rank(to_field(q, sub), q) == rank_mod_p(sub, f));
  }
}
