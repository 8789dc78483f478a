#pragma once

#include <map>
#include <utility>

namespace pats {

/// Finite formal sum of keys with coefficients; zero coefficients are never stored.
template <class Key, class Coeff>
class LinearCombination {
 public:
  using container = std::map<Key, Coeff>;
  using const_iterator = typename container::const_iterator;

  LinearCombination() = default;

  void add(const Key& key, const Coeff& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(key, c);
    if (inserted) return;
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }

  Coeff coefficient(const Key& key) const {
    auto it = terms_.find(key);
    return it == terms_.end() ? Coeff(0) : it->second;
  }

  LinearCombination& operator+=(const LinearCombination& other) {
    for (const auto& [k, c] : other.terms_) add(k, c);
    return *this;
  }
  LinearCombination& operator-=(const LinearCombination& other) {
    for (const auto& [k, c] : other.terms_) add(k, -c);
    return *this;
  }
  LinearCombination& operator*=(const Coeff& s) {
    if (s == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [k, c] : terms_) c *= s;
    return *this;
  }

  std::size_t size() const noexcept { return terms_.size(); }
  bool empty() const noexcept { return terms_.empty(); }
  const_iterator begin() const { return terms_.begin(); }
  const_iterator end() const { return terms_.end(); }
  const container& terms() const noexcept { return terms_; }

  friend bool operator==(const LinearCombination&, const LinearCombination&) = default;

 private:
  container terms_;
};

}  // namespace pats
