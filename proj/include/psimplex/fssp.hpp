#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "psimplex/digraph.hpp"
#include "psimplex/engine.hpp"
#include "psimplex/multiset.hpp"
#include "psimplex/program.hpp"

namespace psimplex::fssp {

// Symbol constructors for the synchronization program's alphabet.
namespace alphabet {
inline Symbol cell_id(CellId i) { return sym("iota", i); }            // reified cell ID
inline Symbol start() { return sym("a"); }                            // firing order
inline Symbol general_marker() { return sym("g"); }
inline Symbol wave(std::int64_t depth, CellId sender) { return sym("x", depth, sender); }
inline Symbol depth(std::int64_t k) { return sym("n", k); }
inline Symbol max_depth(std::int64_t k) { return sym("m", k); }
inline Symbol depth_aux(std::int64_t k) { return sym("l", k); }
inline Symbol parent(CellId j) { return sym("p", j); }
inline Symbol send_order(CellId to, std::int64_t payload) { return sym("y", to, payload); }
inline Symbol message(CellId to, CellId from, std::int64_t payload) {
  return sym("a", to, from, payload);
}
inline Symbol passage(CellId to, CellId from) { return sym("v", to, from); }
inline Symbol report(std::int64_t k) { return sym("s", k); }
inline Symbol pending_child() { return sym("c"); }
inline Symbol done_child() { return sym("e"); }
inline Symbol convergecast_done() { return sym("b"); }
inline Symbol countdown_trigger() { return sym("t"); }
inline Symbol countdown(std::int64_t k) { return sym("f", k); }
inline Symbol aux_marker() { return sym("w"); }

// (functor, arity) pairs every symbol in a run must come from.
inline const std::set<std::pair<std::string, std::size_t>>& signature() {
  static const std::set<std::pair<std::string, std::size_t>> kSignature = {
      {"iota", 1}, {"a", 0}, {"g", 0}, {"x", 2}, {"n", 1}, {"m", 1},
      {"l", 1},    {"p", 1}, {"y", 2}, {"a", 3}, {"v", 2}, {"s", 1},
      {"c", 0},    {"e", 0}, {"b", 0}, {"t", 0}, {"f", 1}, {"w", 0},
  };
  return kSignature;
}
inline bool in_alphabet(const Symbol& s) {
  return signature().count({s.functor(), s.args().size()}) > 0;
}
}  // namespace alphabet

struct States {
  StateId quiescent;    // S0
  StateId building;     // S1: first broadcast, virtual-dag construction
  StateId relaying;     // S2: convergecast relay
  StateId readiness;    // S3: outstanding-children check
  StateId launching;    // S4: convergecast / countdown launch
  StateId reduce_max;   // Max: dominated max-depth erasure
  StateId countdown;    // S5: countdown to firing
  StateId fired;        // S_f
};

// The full synchronization program. Rule priorities follow the listing
// order within each state block.
inline Program build_program() {
  Program prog;
  const StateId S0 = prog.state("S0");
  const StateId S1 = prog.state("S1");
  const StateId S2 = prog.state("S2");
  const StateId S3 = prog.state("S3");
  const StateId S4 = prog.state("S4");
  const StateId MAX = prog.state("Max");
  const StateId S5 = prog.state("S5");
  const StateId SF = prog.state("Sf");

  // --- S0: start of the first broadcast, depth recording ---
  prog.add_rule("0.1")
      .from(S0)
      .to(S1)
      .consume(p("a"))
      .produce(p("g"), p("n", 0), p("m", 0))
      .broadcast(p("x", 1, v("i")))
      .promoter(p("iota", v("i")))
      .mode(kMinMin);
  prog.add_rule("0.2")
      .from(S0)
      .to(S1)
      .consume(p("x", v("k"), v("j")))
      .produce(p("l", v("k")), p("p", v("j")))
      .broadcast(p("x", plus("k", 1), v("i")))
      .promoter(p("iota", v("i")))
      .mode(kMaxMin);
  prog.add_rule("0.3")
      .from(S0)
      .to(S1)
      .consume(p("x", v("k"), v("j")))
      .produce(p("p", v("j")))
      .promoter(p("iota", v("i")))
      .mode(kMaxMax);

  // --- S1: depth finalization, dag building, convergecast handling ---
  prog.add_rule("1.1")
      .from(S1)
      .to(S1)
      .consume(p("l", v("k")))
      .produce(p("n", v("k")), p("m", v("k")))
      .mode(kMaxMin);
  prog.add_rule("1.2").from(S1).to(S1).consume(p("l", v("k"))).mode(kMaxMax);
  prog.add_rule("1.3")
      .from(S1)
      .to(S1)
      .consume(p("x", v("k"), v("j")))
      .produce(p("y", v("j"), 0))
      .mode(kMaxMin);
  prog.add_rule("1.4").from(S1).to(S1).consume(p("x", v("k"), v("j"))).mode(kMaxMax);
  // Published as max.min; one report must drive exactly one readiness cycle,
  // so instantiation is held to once per step (see docs/CHANGES.md).
  prog.add_rule("1.5")
      .from(S1)
      .to(MAX)
      .consume(p("s", v("k")))
      .produce(p("w"), p("m", v("k")))
      .mode(kMinMin);
  prog.add_rule("1.6")
      .from(S1)
      .to(S1)
      .consume(p("y", v("j"), v("k")))
      .produce(p("v", v("j"), v("i")))
      .broadcast(p("a", v("j"), v("i"), v("k")))
      .promoter(p("iota", v("i")))
      .mode(kMaxMin);
  prog.add_rule("1.7")
      .from(S1)
      .to(S1)
      .consume(p("a", v("j"), v("k"), v("l")))
      .promoter(p("v", v("j"), v("k")))
      .mode(kMaxMax);
  prog.add_rule("1.8")
      .from(S1)
      .to(S1)
      .consume(p("a", v("i"), v("j"), v("k")))
      .produce(p("v", v("i"), v("j")), p("s", v("k")))
      .promoter(p("iota", v("i")))
      .mode(kMaxMin);
  prog.add_rule("1.9")
      .from(S1)
      .to(S1)
      .consume(p("a", v("j"), v("k"), v("l")))
      .produce(p("v", v("j"), v("k")))
      .broadcast(p("a", v("j"), v("k"), v("l")))
      .mode(kMaxMin);

  // --- S2: countdown hand-off plus the same convergecast machinery ---
  prog.add_rule("2.1").from(S2).to(S5).consume(p("t")).broadcast(p("t")).mode(kMinMin);
  // Same adjustment as rule 1.5.
  prog.add_rule("2.2")
      .from(S2)
      .to(MAX)
      .consume(p("s", v("k")))
      .produce(p("w"), p("m", v("k")))
      .mode(kMinMin);
  prog.add_rule("2.3")
      .from(S2)
      .to(S2)
      .consume(p("y", v("j"), v("k")))
      .produce(p("v", v("j"), v("i")))
      .broadcast(p("a", v("j"), v("i"), v("k")))
      .promoter(p("iota", v("i")))
      .mode(kMaxMin);
  prog.add_rule("2.4")
      .from(S2)
      .to(S2)
      .consume(p("a", v("j"), v("k"), v("l")))
      .promoter(p("v", v("j"), v("k")))
      .mode(kMaxMax);
  prog.add_rule("2.5")
      .from(S2)
      .to(S2)
      .consume(p("a", v("i"), v("j"), v("k")))
      .produce(p("v", v("i"), v("j")), p("s", v("k")))
      .promoter(p("iota", v("i")))
      .mode(kMaxMin);
  prog.add_rule("2.6")
      .from(S2)
      .to(S2)
      .consume(p("a", v("j"), v("k"), v("l")))
      .produce(p("v", v("j"), v("k")))
      .broadcast(p("a", v("j"), v("k"), v("l")))
      .mode(kMaxMin);

  // --- S3: one received message = one outstanding-children decrement ---
  prog.add_rule("3.1")
      .from(S3)
      .to(S1)
      .consume(p("c"), p("c"))
      .produce(p("c"), p("e"))
      .mode(kMinMin);
  prog.add_rule("3.2")
      .from(S3)
      .to(S4)
      .consume(p("c"))
      .produce(p("e"), p("b"))
      .mode(kMinMin);

  // --- S4: the general launches the countdown; others start their
  //         convergecast toward every virtual-dag parent ---
  prog.add_rule("4.1")
      .from(S4)
      .to(S2)
      .produce(p("t"), p("f", v("k")))
      .broadcast(p("t"))
      .promoter(p("g"), p("b"), p("m", v("k")))
      .mode(kMaxMin);
  prog.add_rule("4.2")
      .from(S4)
      .to(S2)
      .produce(p("y", v("j"), v("k")))
      .promoter(p("p", v("j")), p("m", v("k")))
      .mode(kMaxMin);

  // --- Max: erase every dominated max-depth, then leave in one step.
  // The unconditional exit keeps a cell whose maximum is already unique
  // from stalling here. ---
  prog.add_rule("Max.1")
      .from(MAX)
      .to(S3)
      .consume(p("m", v("k")))
      .promoter(p("m", above("k", "l")))
      .mode(kMaxMax);
  prog.add_rule("Max.2").from(MAX).to(S3).mode(kMinMin);

  // --- S5: countdown, firing, and garbage erasure ---
  prog.add_rule("5.1")
      .from(S5)
      .to(SF)
      .consume(p("v", v("k"), v("l")))
      .promoter(p("f", 0))
      .mode(kMaxMax);
  prog.add_rule("5.2").from(S5).to(SF).consume(p("p", v("k"))).promoter(p("f", 0)).mode(kMaxMax);
  prog.add_rule("5.3").from(S5).to(SF).consume(p("n", v("k"))).promoter(p("f", 0)).mode(kMaxMax);
  prog.add_rule("5.4").from(S5).to(SF).consume(p("m", v("k"))).promoter(p("f", 0)).mode(kMaxMax);
  prog.add_rule("5.5").from(S5).to(SF).consume(p("e")).promoter(p("f", 0)).mode(kMinMax);
  prog.add_rule("5.6").from(S5).to(SF).consume(p("b")).promoter(p("f", 0)).mode(kMinMax);
  prog.add_rule("5.7").from(S5).to(SF).promoter(p("f", 0)).mode(kMinMin);
  prog.add_rule("5.8")
      .from(S5)
      .to(S5)
      .consume(p("v", v("k"), v("l")))
      .promoter(p("f", v("k")))
      .mode(kMaxMax);
  prog.add_rule("5.9")
      .from(S5)
      .to(S5)
      .consume(p("p", v("k")))
      .promoter(p("f", v("k")))
      .mode(kMaxMax);
  prog.add_rule("5.10")
      .from(S5)
      .to(S5)
      .consume(p("n", v("k")))
      .promoter(p("f", v("k")))
      .mode(kMaxMax);
  prog.add_rule("5.11")
      .from(S5)
      .to(S5)
      .consume(p("m", v("k")))
      .promoter(p("f", v("k")))
      .mode(kMaxMax);
  prog.add_rule("5.12").from(S5).to(S5).consume(p("e")).promoter(p("f", v("k"))).mode(kMinMax);
  prog.add_rule("5.13").from(S5).to(S5).consume(p("b")).promoter(p("f", v("k"))).mode(kMinMax);
  prog.add_rule("5.14")
      .from(S5)
      .to(S5)
      .consume(p("f", v("k")))
      .produce(p("f", plus("k", -1)))
      .broadcast(p("f", plus("k", -1)))
      .mode(kMaxMin);
  prog.add_rule("5.15").from(S5).to(S5).consume(p("f", v("k"))).mode(kMaxMax);
  prog.add_rule("5.16").from(S5).to(S5).consume(p("t")).mode(kMinMax);

  prog.check();
  return prog;
}

// Canonical shared instance; state ids are stable across builds because the
// construction order is fixed.
inline const Program& program() {
  static const Program kProgram = build_program();
  return kProgram;
}

inline States states() {
  const Program& prog = program();
  return States{prog.find_state("S0"),  prog.find_state("S1"), prog.find_state("S2"),
                prog.find_state("S3"),  prog.find_state("S4"), prog.find_state("Max"),
                prog.find_state("S5"),  prog.find_state("Sf")};
}

// Every cell quiescent; cell i holds its reified id and one counter unit per
// outgoing arc; the general additionally holds the start order.
inline SystemConfiguration initial_configuration(const Digraph& digraph, CellId general) {
  if (!digraph.has_node(general)) {
    throw std::invalid_argument("initial_configuration: unknown general id");
  }
  const StateId s0 = states().quiescent;
  SystemConfiguration config;
  for (CellId id : digraph.nodes()) {
    CellState cell;
    cell.id = id;
    cell.state = s0;
    cell.contents.add(alphabet::cell_id(id));
    cell.contents.add(alphabet::pending_child(), digraph.outdegree(id));
    if (id == general) cell.contents.add(alphabet::start());
    config.cells.emplace(id, std::move(cell));
    config.in_flight.emplace(id, Multiset());
  }
  config.step_index = 0;
  return config;
}

inline SystemConfiguration initial_configuration(const Digraph& digraph) {
  return initial_configuration(digraph, digraph.general());
}

// Verdict on "all cells enter the firing state simultaneously and for the
// first time".
struct SyncReport {
  bool fired = false;
  std::optional<std::int64_t> firing_step;
  bool simultaneous = false;
  bool first_time = false;
  std::map<CellId, std::optional<std::int64_t>> per_cell_firing_step;
};

inline SyncReport check_synchronization(const Trace& trace) {
  if (trace.state_history.empty()) {
    throw std::invalid_argument("check_synchronization: empty trace");
  }
  const StateId fired_state = states().fired;
  SyncReport report;
  bool all_fired = true;
  std::optional<std::int64_t> common;
  bool same = true;
  std::optional<std::int64_t> earliest;
  std::optional<std::int64_t> latest;
  for (CellId id : trace.cell_ids) {
    auto first = trace.first_step_in_state(id, fired_state);
    report.per_cell_firing_step[id] = first;
    if (!first) {
      all_fired = false;
      continue;
    }
    if (!earliest || *first < *earliest) earliest = first;
    if (!latest || *first > *latest) latest = first;
    if (!common) {
      common = first;
    } else if (*common != *first) {
      same = false;
    }
  }
  report.simultaneous = all_fired && same;
  // T = first step with every cell fired (= latest first entry, since the
  // firing state has no outgoing rules); first time means nobody was there
  // earlier.
  report.first_time = all_fired && earliest == latest;
  if (all_fired && report.simultaneous) report.firing_step = latest;
  report.fired = all_fired && report.simultaneous && report.first_time &&
                 trace.halt == HaltReason::Halted;
  return report;
}

// Default step budget: comfortably above the observed quadratic step counts.
inline std::int64_t default_max_steps(std::int64_t n) { return 10 * n * n; }

// Builds the initial configuration and runs the program on the digraph.
inline Trace run_fssp(const Digraph& digraph, RunOptions options = {}) {
  if (options.max_steps <= 0) options.max_steps = default_max_steps(digraph.size());
  return run(initial_configuration(digraph), program(), digraph, options);
}

}  // namespace psimplex::fssp
