#include "pats/exactla.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <tuple>

namespace pats {

std::string to_string(const Rational& q) { return q.str(); }

Rational parse_rational(const std::string& text) {
  try {
    return Rational(text);
  } catch (const std::runtime_error&) {
    throw std::invalid_argument("not a rational number: '" + text + "'");
  }
}

// ---------------------------------------------------------------------------
// Rationals

Rational Rationals::inv(const Rational& a) {
  if (a == 0) throw std::domain_error("division by zero in Q");
  return Rational(1) / a;
}

void Rationals::axpy(Rational* dst, const Rational& factor, const Rational* src, Index n) {
  if (factor == 0) return;
  for (Index i = 0; i < n; ++i)
    if (src[i] != 0) dst[i] += factor * src[i];
}

void Rationals::scale(Rational* row, const Rational& factor, Index n) {
  for (Index i = 0; i < n; ++i)
    if (row[i] != 0) row[i] *= factor;
}

IntVector Rationals::integral(std::span<const Rational> v) {
  BigInt lcm = 1;
  for (const auto& q : v) {
    if (q == 0) continue;
    const BigInt den = boost::multiprecision::denominator(q);
    lcm = lcm / boost::multiprecision::gcd(lcm, den) * den;
  }
  std::vector<BigInt> ints(v.size());
  BigInt content = 0;
  int first_sign = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    ints[i] = boost::multiprecision::numerator(v[i]) * (lcm / boost::multiprecision::denominator(v[i]));
    if (ints[i] != 0) {
      content = boost::multiprecision::gcd(content, ints[i]);
      if (first_sign == 0) first_sign = ints[i] > 0 ? 1 : -1;
    }
  }
  IntVector out(static_cast<Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) {
    BigInt x = content == 0 ? BigInt(0) : BigInt(ints[i] / content * first_sign);
    if (abs(x) > BigInt(std::numeric_limits<std::int64_t>::max()))
      throw std::overflow_error("nullspace entry does not fit in 64 bits");
    out(static_cast<Index>(i)) = x.convert_to<std::int64_t>();
  }
  return out;
}

// ---------------------------------------------------------------------------
// PrimeField

namespace {

bool is_prime(std::uint32_t p) {
  if (p < 2) return false;
  for (std::uint32_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

}  // namespace

PrimeField::PrimeField(std::uint32_t p) : p_(p), magic_(UINT64_C(0xFFFFFFFFFFFFFFFF) / p + 1) {
  if (p <= 2 || p >= (1u << 16) || !is_prime(p))
    throw std::invalid_argument("modulus must be an odd prime below 65536, got " + std::to_string(p));
}

PrimeField PrimeField::for_degree(std::uint32_t p, int degree) {
  if (p <= static_cast<std::uint32_t>(std::max(degree, 0)))
    throw std::invalid_argument("modulus " + std::to_string(p) + " must exceed the degree " +
                                std::to_string(degree));
  return PrimeField(p);
}

std::int64_t PrimeField::from_rational(const Rational& q) const {
  const BigInt num = boost::multiprecision::numerator(q);
  const BigInt den = boost::multiprecision::denominator(q);
  const BigInt pp = p_;
  BigInt n = num % pp;
  BigInt d = den % pp;
  if (d == 0) throw std::domain_error("denominator divisible by the modulus");
  return mul(reduce(n.convert_to<std::int64_t>()), inv(d.convert_to<std::int64_t>()));
}

std::int64_t PrimeField::inv(std::int64_t a) const {
  a = reduce(a);
  if (a == 0) throw std::domain_error("division by zero in " + name());
  std::int64_t t = 0, new_t = 1, r = p_, new_r = a;
  while (new_r != 0) {
    const std::int64_t q = r / new_r;
    std::tie(t, new_t) = std::make_pair(new_t, t - q * new_t);
    std::tie(r, new_r) = std::make_pair(new_r, r - q * new_r);
  }
  return reduce(t);
}

void PrimeField::axpy(std::int64_t* dst, std::int64_t factor, const std::int64_t* src, Index n) const {
  if (factor == 0) return;
  const auto f = static_cast<std::uint32_t>(factor);
  for (Index i = 0; i < n; ++i) {
    if (src[i] == 0) continue;
    dst[i] = fastmod(static_cast<std::uint32_t>(dst[i]) + f * static_cast<std::uint32_t>(src[i]));
  }
}

void PrimeField::scale(std::int64_t* row, std::int64_t factor, Index n) const {
  const auto f = static_cast<std::uint32_t>(factor);
  for (Index i = 0; i < n; ++i) row[i] = fastmod(f * static_cast<std::uint32_t>(row[i]));
}

IntVector PrimeField::integral(std::span<const std::int64_t> v) const {
  IntVector out(static_cast<Index>(v.size()));
  int first_sign = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out(static_cast<Index>(i)) = lift(v[i]);
    if (first_sign == 0 && out(static_cast<Index>(i)) != 0) first_sign = out(static_cast<Index>(i)) > 0 ? 1 : -1;
  }
  if (first_sign < 0) out = -out;
  return out;
}

// ---------------------------------------------------------------------------
// Elimination

template <ExactField F>
RowEchelon<typename F::Scalar> rref(Matrix<typename F::Scalar> m, const F& field) {
  using Scalar = typename F::Scalar;
  RowEchelon<Scalar> out;
  const Index rows = m.rows();
  const Index cols = m.cols();
  Index r = 0;
  for (Index c = 0; c < cols && r < rows; ++c) {
    Index pivot = -1;
    for (Index i = r; i < rows; ++i) {
      if (!field.is_zero(m(i, c))) {
        pivot = i;
        break;
      }
    }
    if (pivot < 0) continue;
    if (pivot != r) m.row(pivot).swap(m.row(r));
    Scalar* pr = m.row(r).data();
    field.scale(pr + c, field.inv(pr[c]), cols - c);
    for (Index i = 0; i < rows; ++i) {
      if (i == r) continue;
      Scalar* pi = m.row(i).data();
      if (field.is_zero(pi[c])) continue;
      const Scalar factor = field.neg(pi[c]);
      field.axpy(pi + c, factor, pr + c, cols - c);
    }
    out.pivots.push_back(c);
    ++r;
  }
  out.rank = r;
  out.form = std::move(m);
  return out;
}

template <ExactField F>
IntMatrix nullspace_basis(const RowEchelon<typename F::Scalar>& echelon, const F& field) {
  using Scalar = typename F::Scalar;
  const Index cols = echelon.form.cols();
  std::vector<bool> is_pivot(static_cast<std::size_t>(cols), false);
  for (Index c : echelon.pivots) is_pivot[static_cast<std::size_t>(c)] = true;

  IntMatrix basis(cols - echelon.rank, cols);
  Index k = 0;
  std::vector<Scalar> v(static_cast<std::size_t>(cols));
  for (Index f = 0; f < cols; ++f) {
    if (is_pivot[static_cast<std::size_t>(f)]) continue;
    std::fill(v.begin(), v.end(), field.zero());
    v[static_cast<std::size_t>(f)] = field.one();
    for (Index r = 0; r < echelon.rank; ++r)
      v[static_cast<std::size_t>(echelon.pivots[static_cast<std::size_t>(r)])] = field.neg(echelon.form(r, f));
    basis.row(k++) = field.integral(v);
  }
  return basis;
}

template <ExactField F>
Matrix<typename F::Scalar> multiply(const Matrix<typename F::Scalar>& a, const Matrix<typename F::Scalar>& b,
                                    const F& field) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix product dimension mismatch");
  Matrix<typename F::Scalar> c = a * b;
  return c.unaryExpr([&](const typename F::Scalar& x) { return field.reduce(x); });
}

template <ExactField F>
Matrix<typename F::Scalar> inverse(const Matrix<typename F::Scalar>& a, const F& field) {
  using Scalar = typename F::Scalar;
  if (a.rows() != a.cols()) throw std::invalid_argument("inverse of a non-square matrix");
  const Index n = a.rows();
  Matrix<Scalar> aug = Matrix<Scalar>::Constant(n, 2 * n, field.zero());
  aug.leftCols(n) = a;
  for (Index i = 0; i < n; ++i) aug(i, n + i) = field.one();
  auto echelon = rref(std::move(aug), field);
  if (echelon.rank < n || (n > 0 && echelon.pivots[static_cast<std::size_t>(n - 1)] != n - 1))
    throw std::domain_error("matrix is singular over " + field.name());
  return echelon.form.rightCols(n);
}

template <ExactField F>
Index IncrementalEchelon<F>::reduce(RowVector<Scalar>& v) const {
  Scalar* data = v.data();
  for (Index c = 0; c < cols_; ++c) {
    if (field_.is_zero(data[c])) continue;
    auto it = rows_.find(c);
    if (it == rows_.end()) return c;
    const Scalar factor = field_.neg(data[c]);
    field_.axpy(data + c, factor, it->second.data() + c, cols_ - c);
  }
  return cols_;
}

template <ExactField F>
bool IncrementalEchelon<F>::insert(RowVector<Scalar> v) {
  if (v.size() != cols_) throw std::invalid_argument("row length mismatch");
  const Index lead = reduce(v);
  if (lead == cols_) return false;
  field_.scale(v.data() + lead, field_.inv(v(lead)), cols_ - lead);
  rows_.emplace(lead, std::move(v));
  return true;
}

template <ExactField F>
bool IncrementalEchelon<F>::contains(RowVector<Scalar> v) const {
  if (v.size() != cols_) throw std::invalid_argument("row length mismatch");
  return reduce(v) == cols_;
}

template RowEchelon<Rational> rref(Matrix<Rational>, const Rationals&);
template RowEchelon<std::int64_t> rref(Matrix<std::int64_t>, const PrimeField&);
template IntMatrix nullspace_basis(const RowEchelon<Rational>&, const Rationals&);
template IntMatrix nullspace_basis(const RowEchelon<std::int64_t>&, const PrimeField&);
template Matrix<Rational> multiply(const Matrix<Rational>&, const Matrix<Rational>&, const Rationals&);
template Matrix<std::int64_t> multiply(const Matrix<std::int64_t>&, const Matrix<std::int64_t>&, const PrimeField&);
template Matrix<Rational> inverse(const Matrix<Rational>&, const Rationals&);
template Matrix<std::int64_t> inverse(const Matrix<std::int64_t>&, const PrimeField&);
template class IncrementalEchelon<Rationals>;
template class IncrementalEchelon<PrimeField>;

// ---------------------------------------------------------------------------
// Streaming nullspace

SparseNullspace nullspace_mod_p(const SparseIntMatrix& m, const PrimeField& field) {
  const Index n = m.cols();
  const std::uint32_t p = field.modulus();
  const auto stride = static_cast<std::size_t>(n);

  // basis[c * n + j] is component c of kernel vector j; vectors 0..k-1 are live.
  std::vector<std::uint32_t> basis(stride * stride, 0);
  for (std::size_t c = 0; c < stride; ++c) basis[c * stride + c] = 1;
  Index k = n;

  std::vector<std::uint64_t> dots(stride);
  std::vector<std::uint32_t> factors(stride);
  std::vector<Index> touched;
  touched.reserve(stride);

  for (Index i = 0; i < m.outerSize() && k > 0; ++i) {
    std::fill(dots.begin(), dots.begin() + k, 0);
    bool any = false;
    for (SparseIntMatrix::InnerIterator it(m, i); it; ++it) {
      const auto v = static_cast<std::uint64_t>(field.reduce(it.value()));
      if (v == 0) continue;
      any = true;
      const std::uint32_t* bc = &basis[static_cast<std::size_t>(it.col()) * stride];
      for (Index j = 0; j < k; ++j) dots[static_cast<std::size_t>(j)] += v * bc[j];
    }
    if (!any) continue;

    Index lead = -1;
    for (Index j = 0; j < k; ++j) {
      dots[static_cast<std::size_t>(j)] %= p;
      if (lead < 0 && dots[static_cast<std::size_t>(j)] != 0) lead = j;
    }
    if (lead < 0) continue;

    const auto inv = static_cast<std::uint64_t>(field.inv(static_cast<std::int64_t>(dots[static_cast<std::size_t>(lead)])));
    touched.clear();
    for (Index j = lead + 1; j < k; ++j) {
      const std::uint64_t d = dots[static_cast<std::size_t>(j)];
      if (d == 0) continue;
      factors[static_cast<std::size_t>(j)] = static_cast<std::uint32_t>(p - (d * inv) % p);
      touched.push_back(j);
    }
    for (std::size_t c = 0; c < stride; ++c) {
      std::uint32_t* bc = &basis[c * stride];
      const std::uint32_t a = bc[lead];
      if (a == 0) continue;
      for (Index j : touched) bc[j] = field.fastmod(bc[j] + a * factors[static_cast<std::size_t>(j)]);
    }
    // drop vector `lead`; the last live vector takes its slot
    for (std::size_t c = 0; c < stride; ++c) {
      std::uint32_t* bc = &basis[c * stride];
      bc[lead] = bc[k - 1];
      bc[k - 1] = 0;
    }
    --k;
  }

  SparseNullspace out;
  out.rank = n - k;
  if (k == 0) {
    out.basis = IntMatrix(0, n);
    return out;
  }

  // Canonical form: reduced echelon form with the column order reversed picks
  // out, for each free column f, the kernel vector whose last nonzero is at f.
  Matrix<std::int64_t> kernel(k, n);
  for (Index j = 0; j < k; ++j)
    for (Index c = 0; c < n; ++c) kernel(j, n - 1 - c) = basis[static_cast<std::size_t>(c) * stride + static_cast<std::size_t>(j)];
  auto echelon = rref(std::move(kernel), field);
  out.basis = IntMatrix(k, n);
  for (Index j = 0; j < k; ++j) {
    RowVector<std::int64_t> row = echelon.form.row(k - 1 - j).reverse();
    out.basis.row(j) = field.integral(std::span<const std::int64_t>(row.data(), static_cast<std::size_t>(n)));
  }
  return out;
}

}  // namespace pats
