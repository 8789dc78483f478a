#include "pats/repanalysis.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace pats {

namespace {

const std::map<std::string, int>& type_index_by_shape(int n) {
  static std::mutex mutex;
  static std::map<int, std::map<std::string, int>> cache;
  std::lock_guard lock(mutex);
  auto [it, inserted] = cache.try_emplace(n);
  if (inserted) {
    const auto types = generate_types(n).pa;
    for (std::size_t t = 0; t < types.size(); ++t) it->second.emplace(types[t].pattern.shape(), static_cast<int>(t));
  }
  return it->second;
}

int pa_type_count(int n) { return static_cast<int>(type_index_by_shape(n).size()); }

Permutation letters_as_permutation(const std::string& letters) {
  std::vector<int> images(letters.size());
  for (std::size_t i = 0; i < letters.size(); ++i) images[i] = letters[i] - 'a';
  return Permutation(std::move(images));
}

template <class Scalar>
void set_block(Matrix<Scalar>& m, Index row, Index col, const Matrix<Scalar>& block) {
  m.block(row, col, block.rows(), block.cols()) = block;
}

}  // namespace

Index RankTable::weighted_newrank() const {
  Index total = 0;
  for (const auto& r : rows) total += r.newrank() * r.dimension;
  return total;
}

TypeCoordinate type_coordinate(const TernaryMonomial& m) {
  const auto& index = type_index_by_shape(m.degree());
  const auto it = index.find(m.shape());
  if (it == index.end()) throw std::invalid_argument(m.to_string() + " is not in a PA association type");
  return {it->second, letters_as_permutation(m.labels())};
}

template <ExactField F>
Matrix<typename F::Scalar> identity_block_row(const Representation<F>& rho, const TernaryPolynomial& identity) {
  const int n = rho.shape().size();
  if (identity.degree() != n || identity.variables() != first_letters(n))
    throw std::invalid_argument("block rows need a multilinear identity of degree " + std::to_string(n));
  const Index d = rho.dimension();
  const int t = pa_type_count(n);
  std::vector<Matrix<typename F::Scalar>> raw(static_cast<std::size_t>(t), rho.zero());
  for (const auto& [m, c] : identity.terms()) {
    const TypeCoordinate tc = type_coordinate(m);
    rho.accumulate_raw(raw[static_cast<std::size_t>(tc.type)], rho.field().from_rational(c), tc.labels);
  }
  Matrix<typename F::Scalar> out(d, t * d);
  for (int k = 0; k < t; ++k) set_block(out, 0, k * d, rho.normalize(raw[static_cast<std::size_t>(k)]));
  return out;
}

template <ExactField F>
Matrix<typename F::Scalar> skew_matrix(const Representation<F>& rho) {
  const int n = rho.shape().size();
  const Index d = rho.dimension();
  const auto skews = skew_identities(n);
  const auto& field = rho.field();
  Matrix<typename F::Scalar> m = Matrix<typename F::Scalar>::Constant(static_cast<Index>(skews.size()) * d,
                                                                      pa_type_count(n) * d, field.zero());
  for (std::size_t s = 0; s < skews.size(); ++s) {
    Matrix<typename F::Scalar> raw = rho.zero();
    rho.accumulate_raw(raw, field.one(), Permutation::identity(n));
    rho.accumulate_raw(raw, field.one(), skews[s].perm);
    set_block(m, static_cast<Index>(s) * d, skews[s].type * d, rho.normalize(raw));
  }
  return m;
}

template <ExactField F>
std::vector<Matrix<typename F::Scalar>> expansion_blocks(const Representation<F>& rho, int type) {
  const int n = rho.shape().size();
  const auto types = generate_types(n).pa;
  if (type < 0 || type >= static_cast<int>(types.size())) throw std::out_of_range("no such association type");
  std::vector<Matrix<typename F::Scalar>> raw(static_cast<std::size_t>(n), rho.zero());
  for (const auto& [word, c] : expand_pats(types[static_cast<std::size_t>(type)].pattern))
    rho.accumulate_raw(raw[static_cast<std::size_t>(word.center())], rho.field().from_rational(c),
                       letters_as_permutation(word.letters()));
  for (auto& block : raw) block = rho.normalize(block);
  return raw;
}

template <ExactField F>
Matrix<typename F::Scalar> build_X_lambda(const Representation<F>& rho) {
  const int n = rho.shape().size();
  const int t = pa_type_count(n);
  const Index d = rho.dimension();
  const auto& field = rho.field();
  Matrix<typename F::Scalar> x = Matrix<typename F::Scalar>::Constant(t * d, (n + t) * d, field.zero());
  for (int i = 0; i < t; ++i) {
    const auto blocks = expansion_blocks(rho, i);
    for (int j = 0; j < n; ++j) set_block(x, i * d, j * d, blocks[static_cast<std::size_t>(j)]);
    for (Index r = 0; r < d; ++r) x(i * d + r, (n + i) * d + r) = field.neg(field.one());
  }
  return x;
}

template <ExactField F>
Index lower_right_rank(const Matrix<typename F::Scalar>& x, int n, const F& field) {
  const Index left = x.cols() - (x.rows());  // right side is square: t d columns
  if (left % n != 0) throw std::invalid_argument("X_lambda has the wrong shape");
  const auto e = rref(x, field);
  return static_cast<Index>(std::count_if(e.pivots.begin(), e.pivots.end(), [&](Index p) { return p >= left; }));
}

// ---- PartitionRanks ----

template <ExactField F>
PartitionRanks<F>::PartitionRanks(const Partition& shape, F field, TableauOrder order)
    : rho_(shape, std::move(field), order), n_(shape.size()) {
  const Index d = rho_.dimension();
  const int t = pa_type_count(n_);
  const auto& f = rho_.field();
  std::vector<std::vector<Matrix<Scalar>>> rows(static_cast<std::size_t>(t));
  for (const auto& s : skew_identities(n_)) {
    Matrix<Scalar> raw = rho_.zero();
    rho_.accumulate_raw(raw, f.one(), Permutation::identity(n_));
    rho_.accumulate_raw(raw, f.one(), s.perm);
    rows[static_cast<std::size_t>(s.type)].push_back(rho_.normalize(raw));
  }
  for (int k = 0; k < t; ++k) {
    const auto& blocks = rows[static_cast<std::size_t>(k)];
    Matrix<Scalar> stacked(static_cast<Index>(blocks.size()) * d, d);
    for (std::size_t b = 0; b < blocks.size(); ++b) set_block(stacked, static_cast<Index>(b) * d, 0, blocks[b]);
    TypeSkew ts{rref(std::move(stacked), f), {}};
    std::vector<bool> pivot(static_cast<std::size_t>(d), false);
    for (Index p : ts.echelon.pivots) pivot[static_cast<std::size_t>(p)] = true;
    for (Index c = 0; c < d; ++c)
      if (!pivot[static_cast<std::size_t>(c)]) ts.free.push_back(c);
    skew_.push_back(std::move(ts));
  }
}

template <ExactField F>
Index PartitionRanks<F>::symrank() const {
  Index r = 0;
  for (const auto& s : skew_) r += s.echelon.rank;
  return r;
}

template <ExactField F>
Matrix<typename F::Scalar> PartitionRanks<F>::quotient(int type, const Matrix<Scalar>& block) const {
  // v modulo the echelon rows: v_free - sum over pivots p of v_p * row_p(free)
  const auto& f = rho_.field();
  const TypeSkew& s = skew_[static_cast<std::size_t>(type)];
  Matrix<Scalar> out(block.rows(), static_cast<Index>(s.free.size()));
  for (Index i = 0; i < block.rows(); ++i)
    for (std::size_t c = 0; c < s.free.size(); ++c) {
      Scalar v = block(i, s.free[c]);
      for (Index r = 0; r < s.echelon.rank; ++r) {
        const Scalar& vp = block(i, s.echelon.pivots[static_cast<std::size_t>(r)]);
        if (!f.is_zero(vp)) v = f.sub(v, f.mul(vp, s.echelon.form(r, s.free[c])));
      }
      out(i, static_cast<Index>(c)) = v;
    }
  return out;
}

template <ExactField F>
Matrix<typename F::Scalar> PartitionRanks<F>::reduced_expansion() const {
  // A skew row e_p + sum_c s_pc e_c annihilates the expansion, so the
  // expansion rows at pivot indices are combinations of those at free indices.
  const Index d = dimension();
  const int t = type_count();
  const auto& f = rho_.field();
  Index total = 0;
  for (const auto& s : skew_) total += static_cast<Index>(s.free.size());
  Matrix<Scalar> out = Matrix<Scalar>::Constant(total, n_ * d, f.zero());
  const auto types = generate_types(n_).pa;
  Index row = 0;
  for (int k = 0; k < t; ++k) {
    const auto& free = skew_[static_cast<std::size_t>(k)].free;
    if (free.empty()) continue;
    Matrix<Scalar> inverse_rows(static_cast<Index>(free.size()), d);
    for (std::size_t c = 0; c < free.size(); ++c) inverse_rows.row(static_cast<Index>(c)) = rho_.identity_inverse().row(free[c]);
    std::vector<Matrix<Scalar>> raw(static_cast<std::size_t>(n_), rho_.zero());
    for (const auto& [word, c] : expand_pats(types[static_cast<std::size_t>(k)].pattern))
      rho_.accumulate_raw(raw[static_cast<std::size_t>(word.center())], f.from_rational(c),
                          letters_as_permutation(word.letters()));
    for (int j = 0; j < n_; ++j) set_block(out, row, j * d, multiply(inverse_rows, raw[static_cast<std::size_t>(j)], f));
    row += static_cast<Index>(free.size());
  }
  return out;
}

template <ExactField F>
Index PartitionRanks<F>::exprank() const {
  return type_count() * dimension() - rank(reduced_expansion(), rho_.field());
}

template <ExactField F>
Index PartitionRanks<F>::exprank_full() const {
  return lower_right_rank(build_X_lambda(rho_), n_, rho_.field());
}

template <ExactField F>
Matrix<typename F::Scalar> PartitionRanks<F>::reduced_identities(const std::vector<TernaryPolynomial>& identities) const {
  const Index d = dimension();
  const int t = type_count();
  const auto& f = rho_.field();
  std::vector<Index> offset(static_cast<std::size_t>(t) + 1, 0);
  for (int k = 0; k < t; ++k)
    offset[static_cast<std::size_t>(k) + 1] = offset[static_cast<std::size_t>(k)] + static_cast<Index>(skew_[static_cast<std::size_t>(k)].free.size());
  Matrix<Scalar> out = Matrix<Scalar>::Constant(static_cast<Index>(identities.size()) * d, offset.back(), f.zero());
  for (std::size_t i = 0; i < identities.size(); ++i) {
    const Matrix<Scalar> block_row = identity_block_row(rho_, identities[i]);
    for (int k = 0; k < t; ++k) {
      if (skew_[static_cast<std::size_t>(k)].free.empty()) continue;
      set_block(out, static_cast<Index>(i) * d, offset[static_cast<std::size_t>(k)],
                quotient(k, Matrix<Scalar>(block_row.block(0, k * d, d, d))));
    }
  }
  return out;
}

template <ExactField F>
Index PartitionRanks<F>::rank_with(const std::vector<TernaryPolynomial>& identities) const {
  return symrank() + rank(reduced_identities(identities), rho_.field());
}

template <ExactField F>
bool PartitionRanks<F>::annihilated(const std::vector<TernaryPolynomial>& identities) const {
  const auto& f = rho_.field();
  const Matrix<Scalar> product = multiply(reduced_identities(identities), reduced_expansion(), f);
  for (Index i = 0; i < product.rows(); ++i)
    for (Index j = 0; j < product.cols(); ++j)
      if (!f.is_zero(product(i, j))) return false;
  return true;
}

// ---- drivers ----

namespace {

template <class Body>
auto with_field(std::optional<std::uint32_t> modulus, int n, Body&& body) {
  if (modulus) return body(PrimeField::for_degree(*modulus, n));
  return body(Rationals{});
}

}  // namespace

const std::vector<TernaryPolynomial>& lifted_identities() {
  static const std::vector<TernaryPolynomial> lifted = [] {
    std::vector<TernaryPolynomial> out = lift_to_degree9(builtin_identity("R"));
    for (auto& p : lift_to_degree9(builtin_identity("S"))) out.push_back(std::move(p));
    return out;
  }();
  return lifted;
}

Index symrank(const Partition& shape, std::optional<std::uint32_t> modulus) {
  return with_field(modulus, shape.size(), [&](auto field) { return PartitionRanks(shape, field).symrank(); });
}

Index exprank(const Partition& shape, std::optional<std::uint32_t> modulus) {
  return with_field(modulus, shape.size(), [&](auto field) { return PartitionRanks(shape, field).exprank(); });
}

Index symlifrank(const Partition& shape, std::optional<std::uint32_t> modulus) {
  if (shape.size() != 9) throw std::invalid_argument("symlifrank is defined in degree 9");
  return with_field(modulus, 9, [&](auto field) { return PartitionRanks(shape, field).rank_with(lifted_identities()); });
}

RankRow rank_row(const Partition& shape, const RankOptions& options) {
  if (options.lifted && shape.size() != 9) throw std::invalid_argument("symlifrank is defined in degree 9");
  return with_field(options.modulus, shape.size(), [&](auto field) {
    const PartitionRanks ranks(shape, field, options.order);
    RankRow row{shape, ranks.dimension(), ranks.symrank(), options.full_exprank ? ranks.exprank_full() : ranks.exprank(),
                std::nullopt};
    if (options.lifted) row.symlifrank = ranks.rank_with(lifted_identities());
    return row;
  });
}

RankTable rank_table(int n, const RankOptions& options, const std::vector<Partition>& only) {
  std::vector<Partition> shapes;
  for (const auto& p : partitions_of(n))
    if (only.empty() || std::find(only.begin(), only.end(), p) != only.end()) shapes.push_back(p);
  for (const auto& p : only)
    if (p.size() != n) throw std::invalid_argument("partition " + p.to_string() + " is not of " + std::to_string(n));
  if (options.lifted) lifted_identities();  // build once before the workers start

  RankTable table;
  table.degree = n;
  table.field = options.modulus ? PrimeField::for_degree(*options.modulus, n).name() : Rationals::name();
  table.rows.resize(shapes.size());

  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr error;
  auto work = [&] {
    for (std::size_t i; (i = next++) < shapes.size();) {
      try {
        table.rows[i] = rank_row(shapes[i], options);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  const unsigned jobs = std::max(1u, std::min<unsigned>(options.jobs, static_cast<unsigned>(shapes.size())));
  std::vector<std::thread> threads;
  for (unsigned j = 1; j < jobs; ++j) threads.emplace_back(work);
  work();
  for (auto& th : threads) th.join();
  if (error) std::rethrow_exception(error);
  return table;
}

#define PATS_INSTANTIATE(F)                                                                              \
  template Matrix<F::Scalar> identity_block_row(const Representation<F>&, const TernaryPolynomial&);    \
  template Matrix<F::Scalar> skew_matrix(const Representation<F>&);                                    \
  template std::vector<Matrix<F::Scalar>> expansion_blocks(const Representation<F>&, int);             \
  template Matrix<F::Scalar> build_X_lambda(const Representation<F>&);                                 \
  template Index lower_right_rank(const Matrix<F::Scalar>&, int, const F&);                            \
  template class PartitionRanks<F>;

PATS_INSTANTIATE(Rationals)
PATS_INSTANTIATE(PrimeField)

#undef PATS_INSTANTIATE

}  // namespace pats
