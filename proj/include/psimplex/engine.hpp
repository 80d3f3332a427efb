#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "psimplex/digraph.hpp"
#include "psimplex/multiset.hpp"
#include "psimplex/pattern.hpp"
#include "psimplex/program.hpp"

namespace psimplex {

struct CellState {
  CellId id = 0;
  StateId state = -1;
  Multiset contents;
};

// The global synchronous state: per-cell (state, contents) plus the messages
// emitted last step, which become visible only when the next step merges
// them into the receiving cell's contents.
struct SystemConfiguration {
  std::map<CellId, CellState> cells;
  std::map<CellId, Multiset> in_flight;
  std::int64_t step_index = 0;
};

// A fully instantiated (ground) rule: the concrete symbols one application
// consumes, produces, broadcasts, and requires as promoters.
struct GroundInstance {
  Bindings bindings;
  std::vector<Symbol> consumed;
  std::vector<Symbol> produced;
  std::vector<Symbol> broadcast;
  std::vector<Symbol> promoters;
};

namespace detail {

inline int compare(const Bindings& a, const Bindings& b) {
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
    bool ha = a[i].has_value(), hb = b[i].has_value();
    if (ha != hb) return ha < hb ? -1 : 1;
    if (ha) {
      if (int c = psimplex::compare(*a[i], *b[i]); c != 0) return c;
    }
  }
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  return 0;
}

inline int compare(const std::vector<Symbol>& a, const std::vector<Symbol>& b) {
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
    if (int c = psimplex::compare(a[i], b[i]); c != 0) return c;
  }
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  return 0;
}

// Ground-effect key: two instantiations with the same consumed, produced,
// broadcast multisets and target are duplicates ("without superfluous
// instances"), even if they differ in an existentially bound variable.
inline std::vector<Symbol> sorted(std::vector<Symbol> v) {
  std::sort(v.begin(), v.end());
  return v;
}

struct InstanceKey {
  std::vector<Symbol> consumed, produced, broadcast;
  bool operator<(const InstanceKey& o) const {
    if (int c = compare(consumed, o.consumed); c != 0) return c < 0;
    if (int c = compare(produced, o.produced); c != 0) return c < 0;
    return compare(broadcast, o.broadcast) < 0;
  }
};

// Backtracking enumeration of ground instantiations of `rule` against the
// visible contents. Consumed patterns reserve symbols within one instance;
// promoter patterns only require presence. The visitor returns false to
// stop early (used by existence checks).
template <class Visitor>
bool enumerate_instances(const Rule& rule, const Multiset& visible, Visitor&& visit) {
  const std::size_t n_consumed = rule.consumed.size();
  const std::size_t total = n_consumed + rule.promoters.size();
  Bindings bindings(static_cast<std::size_t>(rule.vars.size()));
  std::vector<Symbol> matched(total);
  Multiset reserved;

  std::function<bool(std::size_t)> recurse = [&](std::size_t i) -> bool {
    if (i == total) {
      GroundInstance inst;
      inst.bindings = bindings;
      inst.consumed.assign(matched.begin(), matched.begin() + static_cast<long>(n_consumed));
      inst.promoters.assign(matched.begin() + static_cast<long>(n_consumed), matched.end());
      for (const auto& pat : rule.produced) {
        auto s = eval(pat, bindings);
        if (!s) return true;  // arithmetic out of domain: not a valid instance
        inst.produced.push_back(std::move(*s));
      }
      for (const auto& pat : rule.broadcast) {
        auto s = eval(pat, bindings);
        if (!s) return true;
        inst.broadcast.push_back(std::move(*s));
      }
      return visit(std::move(inst));
    }
    const bool consuming = i < n_consumed;
    const Pattern& pat = consuming ? rule.consumed[i] : rule.promoters[i - n_consumed];
    for (auto it = visible.functor_begin(pat.functor); !visible.functor_done(it, pat.functor);
         ++it) {
      const Symbol& candidate = it->first;
      if (consuming && visible.count(candidate) - reserved.count(candidate) < 1) continue;
      auto extended = match(pat, candidate, bindings);
      if (!extended) continue;
      Bindings saved = std::move(bindings);
      bindings = std::move(*extended);
      if (consuming) reserved.add(candidate);
      matched[i] = candidate;
      bool keep_going = recurse(i + 1);
      if (consuming) reserved.remove(candidate);
      bindings = std::move(saved);
      if (!keep_going) return false;
    }
    return true;
  };
  return recurse(0);
}

}  // namespace detail

// All distinct applicable ground instantiations of a rule against the given
// visible contents, deduplicated by ground effect and sorted by the total
// structural order on bindings (lowest first).
inline std::vector<GroundInstance> instantiate(const Rule& rule, const Multiset& visible) {
  std::vector<GroundInstance> out;
  std::map<detail::InstanceKey, std::size_t> seen;
  detail::enumerate_instances(rule, visible, [&](GroundInstance inst) {
    detail::InstanceKey key{detail::sorted(inst.consumed), detail::sorted(inst.produced),
                            detail::sorted(inst.broadcast)};
    auto [it, inserted] = seen.emplace(std::move(key), out.size());
    if (inserted) {
      out.push_back(std::move(inst));
    } else if (detail::compare(inst.bindings, out[it->second].bindings) < 0) {
      out[it->second] = std::move(inst);  // keep the lowest representative
    }
    return true;
  });
  std::sort(out.begin(), out.end(), [](const GroundInstance& a, const GroundInstance& b) {
    return detail::compare(a.bindings, b.bindings) < 0;
  });
  return out;
}

inline bool has_applicable_instance(const Rule& rule, const Multiset& visible) {
  bool found = false;
  detail::enumerate_instances(rule, visible, [&](GroundInstance) {
    found = true;
    return false;
  });
  return found;
}

// Selection policy for once-instantiation: seeded uniform choice, or the
// structurally lowest instance when no seed is configured.
class InstancePicker {
 public:
  InstancePicker() = default;
  explicit InstancePicker(std::optional<std::uint64_t> seed) {
    if (seed) rng_.emplace(*seed);
  }
  std::size_t pick(std::size_t n) {
    if (n <= 1 || !rng_) return 0;
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(*rng_);
  }
  bool random() const { return rng_.has_value(); }

 private:
  std::optional<std::mt19937_64> rng_;
};

struct AppliedRule {
  std::string rule_name;
  StateId target_state = -1;
  std::int64_t times = 0;
  GroundInstance instance;
};

struct CellStepResult {
  CellState cell;
  Multiset broadcast_out;
  std::vector<AppliedRule> applied;
};

namespace detail {

inline bool consumable(const std::vector<Symbol>& consumed, const Multiset& remaining) {
  Multiset need;
  for (const auto& s : consumed) need.add(s);
  return remaining.includes(need);
}

inline bool promoters_present(const std::vector<Symbol>& promoters, const Multiset& remaining) {
  for (const auto& s : promoters) {
    if (!remaining.contains(s)) return false;
  }
  return true;
}

}  // namespace detail

// Applies one cell's rules for one step, in weak priority order: the first
// rule that applies fixes the target state; later rules apply only when
// their target agrees. Instances run sequentially against the remaining
// contents; produced and broadcast symbols stay invisible until next step.
inline CellStepResult apply_cell(const CellState& cell, const Program& program,
                                 InstancePicker& picker) {
  CellStepResult result;
  Multiset remaining = cell.contents;
  Multiset produced_buffer;
  Multiset broadcast_out;
  StateId target = -1;

  for (std::size_t rule_index : program.rules_for_state(cell.state)) {
    const Rule& rule = program.rules()[rule_index];
    if (target != -1 && rule.target_state != target) continue;  // weak priority gate

    std::vector<GroundInstance> instances = instantiate(rule, remaining);
    if (instances.empty()) continue;
    if (rule.mode.inst == Instantiation::Once && instances.size() > 1) {
      std::size_t chosen = picker.pick(instances.size());
      instances = {std::move(instances[chosen])};
    }

    bool rule_applied = false;
    for (auto& inst : instances) {
      std::int64_t times = 0;
      while (detail::consumable(inst.consumed, remaining) &&
             detail::promoters_present(inst.promoters, remaining)) {
        for (const auto& s : inst.consumed) remaining.remove(s);
        for (const auto& s : inst.produced) produced_buffer.add(s);
        for (const auto& s : inst.broadcast) broadcast_out.add(s);
        ++times;
        // A rule that consumes nothing applies once per step regardless of
        // its application mode; state change then removes applicability.
        if (rule.mode.app == Application::Once || inst.consumed.empty()) break;
      }
      if (times > 0) {
        rule_applied = true;
        result.applied.push_back(AppliedRule{rule.name, rule.target_state, times, std::move(inst)});
      }
    }
    if (rule_applied && target == -1) target = rule.target_state;
  }

  result.cell = cell;
  if (target != -1) result.cell.state = target;
  remaining.add_all(produced_buffer);
  result.cell.contents = std::move(remaining);
  result.broadcast_out = std::move(broadcast_out);
  return result;
}

using StepLog = std::map<CellId, std::vector<AppliedRule>>;

// One global synchronous step: deliver last step's messages, evolve every
// cell against its merged contents, then route broadcasts to the in-flight
// buffer of every digraph child.
inline void step(SystemConfiguration& config, const Program& program, const Digraph& digraph,
                 InstancePicker& picker, StepLog* log = nullptr) {
  for (auto& [id, cell] : config.cells) {
    auto it = config.in_flight.find(id);
    if (it != config.in_flight.end() && !it->second.empty()) {
      cell.contents.add_all(it->second);
      it->second = Multiset();
    }
  }
  std::map<CellId, Multiset> outgoing;
  for (auto& [id, cell] : config.cells) {
    CellStepResult r = apply_cell(cell, program, picker);
    if (log && !r.applied.empty()) (*log)[id] = std::move(r.applied);
    if (!r.broadcast_out.empty()) outgoing[id] = std::move(r.broadcast_out);
    cell = std::move(r.cell);
  }
  for (const auto& [id, out] : outgoing) {
    for (CellId child : digraph.children(id)) {
      config.in_flight[child].add_all(out);
    }
  }
  ++config.step_index;
}

// True iff no message is pending and no cell has any applicable rule.
inline bool is_halted(const SystemConfiguration& config, const Program& program) {
  for (const auto& [id, pending] : config.in_flight) {
    if (!pending.empty()) return false;
  }
  for (const auto& [id, cell] : config.cells) {
    for (std::size_t rule_index : program.rules_for_state(cell.state)) {
      if (has_applicable_instance(program.rules()[rule_index], cell.contents)) return false;
    }
  }
  return true;
}

enum class HaltReason { Halted, BudgetExhausted };

struct TraceSnapshot {
  std::int64_t step_index = 0;
  SystemConfiguration config;
  StepLog applied;  // rules applied during the step that produced this config
};

struct RunOptions {
  std::int64_t max_steps = 0;
  // 1 keeps every configuration, k>1 keeps every k-th plus first and last,
  // 0 keeps only first and last.
  std::int64_t sample_every = 1;
  std::optional<std::uint64_t> seed;
  bool keep_applied_log = false;
};

// Per-step record of every cell's state (cheap), full configurations per
// the sampling knob, and the halt verdict.
struct Trace {
  std::vector<CellId> cell_ids;
  std::vector<std::vector<StateId>> state_history;  // [step][cell column]
  std::vector<TraceSnapshot> snapshots;
  SystemConfiguration final_config;
  HaltReason halt = HaltReason::Halted;
  std::int64_t steps = 0;

  std::size_t column(CellId id) const {
    auto it = std::lower_bound(cell_ids.begin(), cell_ids.end(), id);
    if (it == cell_ids.end() || *it != id) throw std::out_of_range("unknown cell in trace");
    return static_cast<std::size_t>(it - cell_ids.begin());
  }
  // First step index at which the cell is in `state`, if ever.
  std::optional<std::int64_t> first_step_in_state(CellId id, StateId state) const {
    std::size_t col = column(id);
    for (std::size_t s = 0; s < state_history.size(); ++s) {
      if (state_history[s][col] == state) return static_cast<std::int64_t>(s);
    }
    return std::nullopt;
  }
};

// Iterates step() until the system halts or the budget is exhausted.
inline Trace run(SystemConfiguration config, const Program& program, const Digraph& digraph,
                 const RunOptions& options) {
  if (options.max_steps <= 0) throw std::invalid_argument("run: max_steps must be positive");
  Trace trace;
  for (const auto& [id, cell] : config.cells) trace.cell_ids.push_back(id);

  auto record_states = [&]() {
    std::vector<StateId> row;
    row.reserve(config.cells.size());
    for (const auto& [id, cell] : config.cells) row.push_back(cell.state);
    trace.state_history.push_back(std::move(row));
  };
  auto want_snapshot = [&](std::int64_t index) {
    if (options.sample_every == 1) return true;
    if (options.sample_every > 1) return index % options.sample_every == 0;
    return index == 0;
  };

  InstancePicker picker(options.seed);
  record_states();
  if (want_snapshot(config.step_index)) {
    trace.snapshots.push_back(TraceSnapshot{config.step_index, config, {}});
  }

  std::int64_t executed = 0;
  trace.halt = HaltReason::BudgetExhausted;
  while (executed < options.max_steps) {
    if (is_halted(config, program)) {
      trace.halt = HaltReason::Halted;
      break;
    }
    StepLog log;
    step(config, program, digraph, picker, options.keep_applied_log ? &log : nullptr);
    ++executed;
    record_states();
    if (want_snapshot(config.step_index)) {
      trace.snapshots.push_back(TraceSnapshot{config.step_index, config, std::move(log)});
    }
  }
  if (trace.halt == HaltReason::BudgetExhausted && is_halted(config, program)) {
    trace.halt = HaltReason::Halted;
  }
  if (trace.snapshots.empty() || trace.snapshots.back().step_index != config.step_index) {
    trace.snapshots.push_back(TraceSnapshot{config.step_index, config, {}});
  }
  trace.steps = config.step_index;
  trace.final_config = std::move(config);
  return trace;
}

}  // namespace psimplex
