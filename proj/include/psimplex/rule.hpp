#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "psimplex/pattern.hpp"
#include "psimplex/symbol.hpp"

namespace psimplex {

// A generic rule carries two modes: how many distinct ground instantiations
// are created (once vs. all), and how many times each instantiated rule is
// applied (once vs. as many as contents allow). Classical ungrounded rules
// are the degenerate case with a single trivial instantiation.
enum class Instantiation { Once, Max };
enum class Application { Once, Max };

struct RuleMode {
  Instantiation inst = Instantiation::Once;
  Application app = Application::Once;
};

inline constexpr RuleMode kMinMin{Instantiation::Once, Application::Once};
inline constexpr RuleMode kMinMax{Instantiation::Once, Application::Max};
inline constexpr RuleMode kMaxMin{Instantiation::Max, Application::Once};
inline constexpr RuleMode kMaxMax{Instantiation::Max, Application::Max};

using StateId = int;

// One prioritized rewriting rule. Priority is positional: the owning
// program applies rules in the order they were added.
struct Rule {
  std::string name;
  StateId current_state = -1;
  StateId target_state = -1;
  std::vector<Pattern> consumed;
  std::vector<Pattern> produced;
  std::vector<Pattern> broadcast;   // replicated to all children
  std::vector<Pattern> promoters;   // enable the rule, never consumed by it
  RuleMode mode;
  VarTable vars;
};

// --- pattern-spec markers used by the builder DSL -------------------------

struct VarRef {
  std::string name;
};
struct OffsetRef {
  std::string name;
  std::int64_t delta;
};
struct SumRef {
  std::string base;
  std::string ext;
  std::int64_t min_ext;
};

inline VarRef v(std::string name) { return {std::move(name)}; }
inline OffsetRef plus(std::string name, std::int64_t delta) { return {std::move(name), delta}; }
// Matches base+ext with ext >= min_ext; reads as "some index at least
// min_ext above base".
inline SumRef above(std::string base, std::string ext, std::int64_t min_ext = 1) {
  return {std::move(base), std::move(ext), min_ext};
}

struct ArgSpec : std::variant<Argument, VarRef, OffsetRef, SumRef> {
  using variant::variant;
  ArgSpec(std::int64_t n) : variant(Argument{n}) {}
  ArgSpec(int n) : variant(Argument{std::int64_t{n}}) {}
  ArgSpec(Symbol s) : variant(Argument{std::move(s)}) {}
};

struct PatternSpec {
  std::string functor;
  std::vector<ArgSpec> args;
};

template <class... Args>
PatternSpec p(std::string functor, Args&&... args) {
  PatternSpec ps;
  ps.functor = std::move(functor);
  (ps.args.emplace_back(std::forward<Args>(args)), ...);
  return ps;
}

namespace detail {

inline Pattern resolve(const PatternSpec& spec, VarTable& vars) {
  Pattern out;
  out.functor = spec.functor;
  out.args.reserve(spec.args.size());
  for (const auto& a : spec.args) {
    if (const auto* lit = std::get_if<Argument>(&a)) {
      out.args.push_back(PatternArg::literal(*lit));
    } else if (const auto* var = std::get_if<VarRef>(&a)) {
      out.args.push_back(PatternArg::variable(vars.intern(var->name)));
    } else if (const auto* off = std::get_if<OffsetRef>(&a)) {
      out.args.push_back(PatternArg::offset(vars.intern(off->name), off->delta));
    } else {
      const auto& sum = std::get<SumRef>(a);
      out.args.push_back(
          PatternArg::var_sum(vars.intern(sum.base), vars.intern(sum.ext), sum.min_ext));
    }
  }
  return out;
}

inline void collect_binders(const std::vector<Pattern>& patterns, std::vector<bool>& bound) {
  for (const auto& pat : patterns) {
    for (const auto& arg : pat.args) {
      switch (arg.kind) {
        case PatternArg::Kind::Variable:
        case PatternArg::Kind::Offset:
          bound[static_cast<std::size_t>(arg.var)] = true;
          break;
        case PatternArg::Kind::VarSum:
          bound[static_cast<std::size_t>(arg.ext_var)] = true;
          break;
        case PatternArg::Kind::Literal:
          break;
      }
    }
  }
}

inline void check_produced_bound(const Rule& rule) {
  std::vector<bool> bound(static_cast<std::size_t>(rule.vars.size()), false);
  collect_binders(rule.consumed, bound);
  collect_binders(rule.promoters, bound);
  auto require = [&](const std::vector<Pattern>& patterns) {
    for (const auto& pat : patterns) {
      for (const auto& arg : pat.args) {
        bool ok = true;
        if (arg.kind == PatternArg::Kind::Variable || arg.kind == PatternArg::Kind::Offset) {
          ok = bound[static_cast<std::size_t>(arg.var)];
        } else if (arg.kind == PatternArg::Kind::VarSum) {
          ok = bound[static_cast<std::size_t>(arg.var)] &&
               bound[static_cast<std::size_t>(arg.ext_var)];
        }
        if (!ok) {
          throw std::logic_error("rule " + rule.name + ": unbound variable in RHS of " +
                                 pat.functor);
        }
      }
    }
  };
  require(rule.produced);
  require(rule.broadcast);
}

}  // namespace detail
}  // namespace psimplex
