#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace psimplex {

// Cell identifiers live in the same integer domain as symbol indices, so
// terms like a(i,j,k) can mix ids and counters freely.
using CellId = std::int64_t;

struct Argument;

// An immutable compound term: a functor plus an ordered (possibly empty)
// argument list. Elementary symbols are functors with zero arguments.
// Equality and ordering are structural.
class Symbol {
 public:
  Symbol() = default;
  explicit Symbol(std::string functor) : functor_(std::move(functor)) {}
  Symbol(std::string functor, std::vector<Argument> args);

  const std::string& functor() const { return functor_; }
  const std::vector<Argument>& args() const { return args_; }
  bool elementary() const { return args_.empty(); }

  std::string to_string() const;

 private:
  std::string functor_;
  std::vector<Argument> args_;
};

struct Argument : std::variant<std::int64_t, Symbol> {
  using std::variant<std::int64_t, Symbol>::variant;

  bool is_int() const { return index() == 0; }
  std::int64_t as_int() const { return std::get<0>(*this); }
  const Symbol& as_symbol() const { return std::get<1>(*this); }

  std::string to_string() const;
};

int compare(const Symbol& a, const Symbol& b);
int compare(const Argument& a, const Argument& b);

inline Symbol::Symbol(std::string functor, std::vector<Argument> args)
    : functor_(std::move(functor)), args_(std::move(args)) {}

// Integers order before nested symbols; everything else is lexicographic.
inline int compare(const Argument& a, const Argument& b) {
  if (a.index() != b.index()) return a.index() < b.index() ? -1 : 1;
  if (a.is_int()) {
    if (a.as_int() != b.as_int()) return a.as_int() < b.as_int() ? -1 : 1;
    return 0;
  }
  return compare(a.as_symbol(), b.as_symbol());
}

inline int compare(const Symbol& a, const Symbol& b) {
  if (int c = a.functor().compare(b.functor()); c != 0) return c < 0 ? -1 : 1;
  const auto& xs = a.args();
  const auto& ys = b.args();
  for (std::size_t i = 0; i < xs.size() && i < ys.size(); ++i) {
    if (int c = compare(xs[i], ys[i]); c != 0) return c;
  }
  if (xs.size() != ys.size()) return xs.size() < ys.size() ? -1 : 1;
  return 0;
}

inline bool operator==(const Symbol& a, const Symbol& b) { return compare(a, b) == 0; }
inline bool operator!=(const Symbol& a, const Symbol& b) { return compare(a, b) != 0; }
inline bool operator<(const Symbol& a, const Symbol& b) { return compare(a, b) < 0; }
inline bool operator==(const Argument& a, const Argument& b) { return compare(a, b) == 0; }
inline bool operator!=(const Argument& a, const Argument& b) { return compare(a, b) != 0; }
inline bool operator<(const Argument& a, const Argument& b) { return compare(a, b) < 0; }

inline std::string Symbol::to_string() const {
  if (args_.empty()) return functor_;
  std::string out = functor_;
  out += '(';
  for (std::size_t i = 0; i < args_.size(); ++i) {
    if (i) out += ',';
    out += args_[i].to_string();
  }
  out += ')';
  return out;
}

inline std::string Argument::to_string() const {
  return is_int() ? std::to_string(as_int()) : as_symbol().to_string();
}

namespace detail {
inline void push_args(std::vector<Argument>&) {}
template <class Head, class... Tail>
void push_args(std::vector<Argument>& out, Head&& head, Tail&&... tail) {
  out.emplace_back(std::forward<Head>(head));
  push_args(out, std::forward<Tail>(tail)...);
}
}  // namespace detail

// Terse constructor used all over rule programs and tests:
//   sym("a"), sym("x", 1, 2), sym("d", sym("e"), 3)
template <class... Args>
Symbol sym(std::string functor, Args&&... args) {
  std::vector<Argument> list;
  list.reserve(sizeof...(args));
  detail::push_args(list, std::forward<Args>(args)...);
  return Symbol(std::move(functor), std::move(list));
}

}  // namespace psimplex
