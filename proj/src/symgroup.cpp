#include "pats/symgroup.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace pats {

namespace {

// "213", "2,1,3" or "2 1 3" -> {2,1,3}
std::vector<int> parse_int_list(std::string_view text) {
  std::vector<int> out;
  const bool separated = text.find_first_of(", ") != std::string_view::npos;
  if (!separated) {
    for (char ch : text) {
      if (ch < '0' || ch > '9') throw std::invalid_argument("bad digit in '" + std::string(text) + "'");
      out.push_back(ch - '0');
    }
    return out;
  }
  std::string token;
  auto flush = [&] {
    if (token.empty()) return;
    out.push_back(std::stoi(token));
    token.clear();
  };
  for (char ch : text) {
    if (ch == ',' || ch == ' ') {
      flush();
    } else if (ch >= '0' && ch <= '9') {
      token.push_back(ch);
    } else {
      throw std::invalid_argument("bad character in '" + std::string(text) + "'");
    }
  }
  flush();
  return out;
}

std::string join_one_based(const std::vector<int>& v, int n) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (n > 9 && i > 0) s += ',';
    s += std::to_string(v[i] + 1);
  }
  return s;
}

}  // namespace

// ---- Permutation ----

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  std::vector<char> seen(images_.size(), 0);
  for (int v : images_) {
    if (v < 0 || v >= degree() || seen[static_cast<std::size_t>(v)])
      throw std::invalid_argument("not a permutation");
    seen[static_cast<std::size_t>(v)] = 1;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> v(static_cast<std::size_t>(n));
  std::iota(v.begin(), v.end(), 0);
  return Permutation(std::move(v));
}

Permutation Permutation::parse(std::string_view text) {
  auto v = parse_int_list(text);
  for (int& x : v) --x;
  return Permutation(std::move(v));
}

int Permutation::sign() const {
  std::vector<char> seen(images_.size(), 0);
  int s = 1;
  for (int i = 0; i < degree(); ++i) {
    if (seen[static_cast<std::size_t>(i)]) continue;
    int len = 0;
    for (int j = i; !seen[static_cast<std::size_t>(j)]; j = images_[static_cast<std::size_t>(j)]) {
      seen[static_cast<std::size_t>(j)] = 1;
      ++len;
    }
    if (len % 2 == 0) s = -s;
  }
  return s;
}

Permutation Permutation::inverse() const {
  std::vector<int> inv(images_.size());
  for (int i = 0; i < degree(); ++i) inv[static_cast<std::size_t>(images_[static_cast<std::size_t>(i)])] = i;
  return Permutation(std::move(inv));
}

bool Permutation::is_identity() const {
  for (int i = 0; i < degree(); ++i)
    if (images_[static_cast<std::size_t>(i)] != i) return false;
  return true;
}

std::string Permutation::to_string() const { return join_one_based(images_, degree()); }

Permutation compose(const Permutation& p, const Permutation& q) {
  if (p.degree() != q.degree()) throw std::invalid_argument("compose: degree mismatch");
  std::vector<int> r(static_cast<std::size_t>(p.degree()));
  for (int i = 0; i < p.degree(); ++i) r[static_cast<std::size_t>(i)] = p(q(i));
  return Permutation(std::move(r));
}

std::vector<Permutation> all_permutations(int n) {
  std::vector<int> v(static_cast<std::size_t>(n));
  std::iota(v.begin(), v.end(), 0);
  std::vector<Permutation> out;
  do {
    out.emplace_back(v);
  } while (std::next_permutation(v.begin(), v.end()));
  return out;
}

// ---- Partition ----

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (parts_[i] < 1) throw std::invalid_argument("partition parts must be positive");
    if (i > 0 && parts_[i] > parts_[i - 1]) throw std::invalid_argument("partition parts must be weakly decreasing");
    size_ += parts_[i];
  }
}

Partition Partition::parse(std::string_view text) { return Partition(parse_int_list(text)); }

std::string Partition::to_string() const {
  std::string s;
  const bool wide = !parts_.empty() && parts_.front() > 9;
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (wide && i > 0) s += ',';
    s += std::to_string(parts_[i]);
  }
  return s;
}

std::vector<Partition> partitions_of(int n) {
  if (n < 1) throw std::invalid_argument("partitions_of: n must be positive");
  std::vector<Partition> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int remaining, int max_part) -> void {
    if (remaining == 0) {
      out.emplace_back(cur);
      return;
    }
    for (int p = std::min(remaining, max_part); p >= 1; --p) {
      cur.push_back(p);
      self(self, remaining - p, p);
      cur.pop_back();
    }
  };
  rec(rec, n, n);
  return out;
}

// ---- StandardTableau ----

StandardTableau::StandardTableau(Partition shape, std::vector<std::vector<int>> rows)
    : shape_(std::move(shape)), rows_(std::move(rows)) {
  const int n = shape_.size();
  row_of_.assign(static_cast<std::size_t>(n), -1);
  column_of_.assign(static_cast<std::size_t>(n), -1);
  if (static_cast<int>(rows_.size()) != shape_.length()) throw std::invalid_argument("tableau does not fit its shape");
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    if (static_cast<int>(rows_[r].size()) != shape_[static_cast<int>(r)])
      throw std::invalid_argument("tableau does not fit its shape");
    for (std::size_t c = 0; c < rows_[r].size(); ++c) {
      const int x = rows_[r][c];
      if (x < 0 || x >= n || row_of_[static_cast<std::size_t>(x)] >= 0)
        throw std::invalid_argument("tableau entries must be 1..n once each");
      row_of_[static_cast<std::size_t>(x)] = static_cast<int>(r);
      column_of_[static_cast<std::size_t>(x)] = static_cast<int>(c);
      if (c > 0 && rows_[r][c - 1] > x) throw std::invalid_argument("tableau rows must increase");
      if (r > 0 && rows_[r - 1][c] > x) throw std::invalid_argument("tableau columns must increase");
    }
  }
}

std::vector<int> StandardTableau::reading_word() const {
  std::vector<int> w;
  for (const auto& row : rows_) w.insert(w.end(), row.begin(), row.end());
  return w;
}

std::string StandardTableau::to_string() const {
  std::string s;
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    if (r > 0) s += '/';
    s += join_one_based(rows_[r], shape_.size());
  }
  return s;
}

std::vector<StandardTableau> standard_tableaux(const Partition& shape, TableauOrder order) {
  const int n = shape.size();
  const int len = shape.length();
  std::vector<std::vector<int>> rows(static_cast<std::size_t>(len));
  std::vector<std::vector<std::vector<int>>> fillings;
  // place 0..n-1 in order; a number may go at the end of row r when the box
  // above it is already filled
  auto rec = [&](auto&& self, int x) -> void {
    if (x == n) {
      fillings.push_back(rows);
      return;
    }
    for (int r = 0; r < len; ++r) {
      auto& row = rows[static_cast<std::size_t>(r)];
      const auto c = row.size();
      if (static_cast<int>(c) >= shape[r]) continue;
      if (r > 0 && rows[static_cast<std::size_t>(r - 1)].size() <= c) continue;
      row.push_back(x);
      self(self, x + 1);
      row.pop_back();
    }
  };
  rec(rec, 0);

  std::vector<StandardTableau> out;
  out.reserve(fillings.size());
  for (auto& f : fillings) out.emplace_back(shape, std::move(f));
  std::sort(out.begin(), out.end(), [&](const StandardTableau& a, const StandardTableau& b) {
    return order == TableauOrder::RowReadingLex ? a.reading_word() < b.reading_word()
                                                : b.reading_word() < a.reading_word();
  });
  return out;
}

// ---- GroupAlgebraElement ----

void GroupAlgebraElement::add(const Permutation& p, const Rational& c) {
  if (p.degree() != degree_) throw std::invalid_argument("group algebra element: degree mismatch");
  terms_.add(p, c);
}

GroupAlgebraElement GroupAlgebraElement::acted_on_by(const Permutation& s) const {
  GroupAlgebraElement out(degree_);
  for (const auto& [p, c] : terms_) out.add(compose(s, p), c);
  return out;
}

// ---- CliftonTable ----

CliftonTable::CliftonTable(Partition shape, TableauOrder order)
    : shape_(std::move(shape)), tableaux_(standard_tableaux(shape_, order)) {
  if (shape_.size() > 16) throw std::invalid_argument("Clifton tables are limited to n <= 16");
}

std::shared_ptr<const CliftonTable> CliftonTable::shared(const Partition& shape, TableauOrder order) {
  static std::mutex mutex;
  static std::map<std::pair<Partition, TableauOrder>, std::shared_ptr<const CliftonTable>> registry;
  std::lock_guard lock(mutex);
  auto& slot = registry[{shape, order}];
  if (!slot) slot = std::make_shared<const CliftonTable>(shape, order);
  return slot;
}

int CliftonTable::entry(const StandardTableau& t, std::span<const int> target_rows) const {
  const auto& rows = t.rows();
  int inversions = 0;
  for (int c = 0; c < shape_[0]; ++c) {
    unsigned mask = 0;
    int height = 0;
    for (const auto& row : rows) {
      if (static_cast<int>(row.size()) <= c) break;
      const int r = target_rows[static_cast<std::size_t>(row[static_cast<std::size_t>(c)])];
      if (mask & (1u << r)) return 0;
      // rows already placed in this column that are below r are inversions
      inversions += std::popcount(mask >> (r + 1));
      mask |= 1u << r;
      ++height;
    }
    if (mask != (1u << height) - 1) return 0;
  }
  return inversions % 2 == 0 ? 1 : -1;
}

std::span<const std::int8_t> CliftonTable::column_for(std::uint64_t key, std::span<const int> target_rows) const {
  {
    std::shared_lock lock(mutex_);
    auto it = index_.find(key);
    if (it != index_.end()) return columns_[it->second];
  }
  std::vector<std::int8_t> col(tableaux_.size());
  for (std::size_t i = 0; i < tableaux_.size(); ++i) col[i] = static_cast<std::int8_t>(entry(tableaux_[i], target_rows));
  std::unique_lock lock(mutex_);
  auto [it, inserted] = index_.try_emplace(key, columns_.size());
  if (inserted) columns_.push_back(std::move(col));
  return columns_[it->second];
}

std::vector<std::span<const std::int8_t>> CliftonTable::raw_columns(const Permutation& pi) const {
  if (pi.degree() != degree()) throw std::invalid_argument("Clifton matrix: degree mismatch");
  const int n = degree();
  const Permutation inv = pi.inverse();
  std::vector<std::span<const std::int8_t>> cols;
  cols.reserve(tableaux_.size());
  std::vector<int> target(static_cast<std::size_t>(n));
  for (const auto& tj : tableaux_) {
    // the row of y in pi T_j is the row of pi^-1(y) in T_j
    std::uint64_t key = 0;
    for (int y = 0; y < n; ++y) {
      const int r = tj.row_of(inv(y));
      target[static_cast<std::size_t>(y)] = r;
      key |= static_cast<std::uint64_t>(r) << (4 * y);
    }
    cols.push_back(column_for(key, target));
  }
  return cols;
}

IntMatrix CliftonTable::raw(const Permutation& pi) const {
  const auto cols = raw_columns(pi);
  const Index d = dimension();
  IntMatrix m(d, d);
  for (Index j = 0; j < d; ++j)
    for (Index i = 0; i < d; ++i) m(i, j) = cols[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
  return m;
}

IntMatrix clifton_raw(const Partition& shape, const Permutation& pi) { return CliftonTable::shared(shape)->raw(pi); }

// ---- Representation ----

template <ExactField F>
Representation<F>::Representation(const Partition& shape, F field, TableauOrder order)
    : table_(CliftonTable::shared(shape, order)), field_(std::move(field)) {
  try {
    identity_inverse_ = inverse(raw(Permutation::identity(shape.size())), field_);
  } catch (const std::domain_error&) {
    throw std::logic_error("Clifton matrix of the identity is singular for " + shape.to_string());
  }
}

template <ExactField F>
Matrix<typename F::Scalar> Representation<F>::raw(const Permutation& pi) const {
  return to_field(field_, table_->raw(pi));
}

template <ExactField F>
Matrix<typename F::Scalar> Representation<F>::operator()(const Permutation& pi) const {
  return normalize(raw(pi));
}

template <ExactField F>
Matrix<typename F::Scalar> Representation<F>::of(const GroupAlgebraElement& g) const {
  if (g.degree() != shape().size()) throw std::invalid_argument("group algebra element: degree mismatch");
  Matrix<Scalar> acc = zero();
  for (const auto& [p, c] : g.terms()) accumulate_raw(acc, field_.from_rational(c), p);
  return normalize(acc);
}

template class Representation<Rationals>;
template class Representation<PrimeField>;

}  // namespace pats
