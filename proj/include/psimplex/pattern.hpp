#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "psimplex/symbol.hpp"

namespace psimplex {

// Variables are rule-scoped; a VarTable interns names to dense indices so
// bindings can live in a flat vector.
class VarTable {
 public:
  int intern(const std::string& name) {
    auto it = ids_.find(name);
    if (it != ids_.end()) return it->second;
    int id = static_cast<int>(names_.size());
    ids_.emplace(name, id);
    names_.push_back(name);
    return id;
  }
  int size() const { return static_cast<int>(names_.size()); }
  const std::string& name(int id) const { return names_[static_cast<std::size_t>(id)]; }

 private:
  std::map<std::string, int> ids_;
  std::vector<std::string> names_;
};

// A partial variable assignment, indexed by interned variable id.
using Bindings = std::vector<std::optional<Argument>>;

// One argument position of a pattern. The supported shapes are exactly the
// ones rule programs need: a ground literal, a free variable, an integer
// term var+delta, and var+ext where ext is a fresh variable constrained to
// ext >= min_ext (used for "some strictly larger index exists" guards).
struct PatternArg {
  enum class Kind { Literal, Variable, Offset, VarSum };

  static PatternArg literal(Argument a) {
    PatternArg p;
    p.kind = Kind::Literal;
    p.lit = std::move(a);
    return p;
  }
  static PatternArg variable(int var) {
    PatternArg p;
    p.kind = Kind::Variable;
    p.var = var;
    return p;
  }
  static PatternArg offset(int var, std::int64_t delta) {
    PatternArg p;
    p.kind = Kind::Offset;
    p.var = var;
    p.delta = delta;
    return p;
  }
  static PatternArg var_sum(int var, int ext_var, std::int64_t min_ext = 1) {
    PatternArg p;
    p.kind = Kind::VarSum;
    p.var = var;
    p.ext_var = ext_var;
    p.min_ext = min_ext;
    return p;
  }

  Kind kind = Kind::Literal;
  Argument lit = std::int64_t{0};
  int var = -1;
  std::int64_t delta = 0;
  int ext_var = -1;
  std::int64_t min_ext = 1;
};

struct Pattern {
  std::string functor;
  std::vector<PatternArg> args;

  bool is_ground() const {
    for (const auto& a : args) {
      if (a.kind != PatternArg::Kind::Literal) return false;
    }
    return true;
  }
};

namespace detail {

// Index terms range over non-negative integers: a match that would bind a
// negative value fails.
inline bool match_arg(const PatternArg& pa, const Argument& value, Bindings& b) {
  switch (pa.kind) {
    case PatternArg::Kind::Literal:
      return pa.lit == value;
    case PatternArg::Kind::Variable: {
      auto& slot = b[static_cast<std::size_t>(pa.var)];
      if (slot) return *slot == value;
      slot = value;
      return true;
    }
    case PatternArg::Kind::Offset: {
      if (!value.is_int()) return false;
      std::int64_t bound = value.as_int() - pa.delta;
      if (bound < 0) return false;
      auto& slot = b[static_cast<std::size_t>(pa.var)];
      if (slot) return slot->is_int() && slot->as_int() == bound;
      slot = Argument{bound};
      return true;
    }
    case PatternArg::Kind::VarSum: {
      if (!value.is_int()) return false;
      const auto& base = b[static_cast<std::size_t>(pa.var)];
      if (!base || !base->is_int()) return false;  // base must be bound first
      std::int64_t ext = value.as_int() - base->as_int();
      if (ext < pa.min_ext) return false;
      auto& slot = b[static_cast<std::size_t>(pa.ext_var)];
      if (slot) return slot->is_int() && slot->as_int() == ext;
      slot = Argument{ext};
      return true;
    }
  }
  return false;
}

inline std::optional<Argument> eval_arg(const PatternArg& pa, const Bindings& b) {
  switch (pa.kind) {
    case PatternArg::Kind::Literal:
      return pa.lit;
    case PatternArg::Kind::Variable: {
      const auto& slot = b[static_cast<std::size_t>(pa.var)];
      if (!slot) return std::nullopt;
      return *slot;
    }
    case PatternArg::Kind::Offset: {
      const auto& slot = b[static_cast<std::size_t>(pa.var)];
      if (!slot || !slot->is_int()) return std::nullopt;
      std::int64_t v = slot->as_int() + pa.delta;
      if (v < 0) return std::nullopt;
      return Argument{v};
    }
    case PatternArg::Kind::VarSum: {
      const auto& base = b[static_cast<std::size_t>(pa.var)];
      const auto& ext = b[static_cast<std::size_t>(pa.ext_var)];
      if (!base || !base->is_int() || !ext || !ext->is_int()) return std::nullopt;
      std::int64_t v = base->as_int() + ext->as_int();
      if (v < 0) return std::nullopt;
      return Argument{v};
    }
  }
  return std::nullopt;
}

}  // namespace detail

// Unifies pattern against symbol under the given partial assignment.
// Returns the extended assignment on success, nullopt on mismatch.
inline std::optional<Bindings> match(const Pattern& pattern, const Symbol& symbol,
                                     const Bindings& bindings) {
  if (pattern.functor != symbol.functor()) return std::nullopt;
  if (pattern.args.size() != symbol.args().size()) return std::nullopt;
  Bindings out = bindings;
  for (std::size_t i = 0; i < pattern.args.size(); ++i) {
    if (!detail::match_arg(pattern.args[i], symbol.args()[i], out)) return std::nullopt;
  }
  return out;
}

// Instantiates a pattern to a ground symbol. Fails (nullopt) when a variable
// is unbound or an arithmetic term evaluates below zero.
inline std::optional<Symbol> eval(const Pattern& pattern, const Bindings& bindings) {
  std::vector<Argument> args;
  args.reserve(pattern.args.size());
  for (const auto& pa : pattern.args) {
    auto v = detail::eval_arg(pa, bindings);
    if (!v) return std::nullopt;
    args.push_back(std::move(*v));
  }
  return Symbol(pattern.functor, std::move(args));
}

}  // namespace psimplex
