#pragma once

#include <cstdint>
#include <initializer_list>
#include <map>
#include <string>

#include "psimplex/symbol.hpp"

namespace psimplex {

// Multiset of symbols. Entries with multiplicity zero are removed eagerly,
// so iteration only ever sees live symbols. The underlying map is ordered
// by the structural symbol order, which groups symbols by functor; pattern
// matching exploits that to scan one functor range instead of the whole set.
class Multiset {
 public:
  using Map = std::map<Symbol, std::int64_t>;
  using const_iterator = Map::const_iterator;

  Multiset() = default;
  Multiset(std::initializer_list<Symbol> symbols) {
    for (const auto& s : symbols) add(s);
  }

  std::int64_t count(const Symbol& s) const {
    auto it = counts_.find(s);
    return it == counts_.end() ? 0 : it->second;
  }
  bool contains(const Symbol& s) const { return count(s) > 0; }

  void add(const Symbol& s, std::int64_t n = 1) {
    if (n == 0) return;
    auto [it, inserted] = counts_.try_emplace(s, 0);
    it->second += n;
    if (it->second <= 0) counts_.erase(it);
  }

  // Removes up to n copies; returns the number actually removed.
  std::int64_t remove(const Symbol& s, std::int64_t n = 1) {
    auto it = counts_.find(s);
    if (it == counts_.end()) return 0;
    std::int64_t taken = n < it->second ? n : it->second;
    it->second -= taken;
    if (it->second == 0) counts_.erase(it);
    return taken;
  }

  void add_all(const Multiset& other) {
    for (const auto& [s, n] : other.counts_) add(s, n);
  }

  // True iff other fits inside this multiset with multiplicities.
  bool includes(const Multiset& other) const {
    for (const auto& [s, n] : other.counts_) {
      if (count(s) < n) return false;
    }
    return true;
  }

  void subtract_all(const Multiset& other) {
    for (const auto& [s, n] : other.counts_) remove(s, n);
  }

  bool empty() const { return counts_.empty(); }
  std::size_t distinct_size() const { return counts_.size(); }
  std::int64_t total_count() const {
    std::int64_t t = 0;
    for (const auto& [s, n] : counts_) t += n;
    return t;
  }

  const_iterator begin() const { return counts_.begin(); }
  const_iterator end() const { return counts_.end(); }

  // Iterates the contiguous range of symbols whose functor equals f.
  const_iterator functor_begin(const std::string& f) const {
    return counts_.lower_bound(Symbol(f));
  }
  bool functor_done(const const_iterator& it, const std::string& f) const {
    return it == counts_.end() || it->first.functor() != f;
  }

  bool operator==(const Multiset& other) const { return counts_ == other.counts_; }
  bool operator!=(const Multiset& other) const { return !(*this == other); }

  std::string to_string() const {
    std::string out = "{";
    bool first = true;
    for (const auto& [s, n] : counts_) {
      if (!first) out += ", ";
      first = false;
      out += s.to_string();
      if (n != 1) out += "^" + std::to_string(n);
    }
    out += "}";
    return out;
  }

 private:
  Map counts_;
};

}  // namespace psimplex
