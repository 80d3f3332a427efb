#pragma once

#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "psimplex/digraph.hpp"
#include "psimplex/engine.hpp"
#include "psimplex/fssp.hpp"
#include "psimplex/program.hpp"

namespace psimplex {

// --- digraph files: {"nodes":[int], "arcs":[[int,int]], "general":int} ----

inline nlohmann::json digraph_to_json(const Digraph& d) {
  nlohmann::json j;
  j["nodes"] = d.nodes();
  auto& arcs = j["arcs"] = nlohmann::json::array();
  for (const auto& [from, to] : d.arcs()) arcs.push_back({from, to});
  j["general"] = d.general();
  return j;
}

inline Digraph digraph_from_json(const nlohmann::json& j) {
  if (!j.contains("nodes") || !j.contains("arcs") || !j.contains("general")) {
    throw std::invalid_argument("digraph json: expected nodes, arcs, general");
  }
  std::vector<CellId> nodes = j.at("nodes").get<std::vector<CellId>>();
  std::vector<std::pair<CellId, CellId>> arcs;
  for (const auto& arc : j.at("arcs")) {
    if (!arc.is_array() || arc.size() != 2) {
      throw std::invalid_argument("digraph json: arcs must be [from, to] pairs");
    }
    arcs.emplace_back(arc[0].get<CellId>(), arc[1].get<CellId>());
  }
  return Digraph(std::move(nodes), std::move(arcs), j.at("general").get<CellId>());
}

inline void save_digraph(const Digraph& d, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << digraph_to_json(d).dump(2) << "\n";
}

inline Digraph load_digraph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  nlohmann::json j;
  in >> j;
  return digraph_from_json(j);
}

// --- sync report ----------------------------------------------------------

inline nlohmann::json sync_report_to_json(const fssp::SyncReport& report) {
  nlohmann::json j;
  j["fired"] = report.fired;
  j["simultaneous"] = report.simultaneous;
  j["firstTime"] = report.first_time;
  if (report.firing_step) j["firingStep"] = *report.firing_step;
  auto& per_cell = j["perCell"] = nlohmann::json::object();
  for (const auto& [id, step] : report.per_cell_firing_step) {
    if (step) {
      per_cell[std::to_string(id)] = *step;
    } else {
      per_cell[std::to_string(id)] = nullptr;
    }
  }
  return j;
}

// --- trace files: one record per line, sorted keys ------------------------

inline nlohmann::json snapshot_to_json(const TraceSnapshot& snap, const Program& program,
                                       bool halted) {
  nlohmann::json j;
  j["step"] = snap.step_index;
  j["halted"] = halted;
  auto& cells = j["cells"] = nlohmann::json::object();
  for (const auto& [id, cell] : snap.config.cells) {
    nlohmann::json c;
    c["state"] = program.state_name(cell.state);
    auto& contents = c["contents"] = nlohmann::json::array();
    for (const auto& [symbol, count] : cell.contents) {
      contents.push_back({symbol.to_string(), count});
    }
    cells[std::to_string(id)] = std::move(c);
  }
  return j;
}

inline void write_trace(const Trace& trace, const Program& program, std::ostream& out,
                        const fssp::SyncReport* verdict = nullptr) {
  for (std::size_t i = 0; i < trace.snapshots.size(); ++i) {
    bool last = i + 1 == trace.snapshots.size();
    nlohmann::json j = snapshot_to_json(trace.snapshots[i], program,
                                        last && trace.halt == HaltReason::Halted);
    if (last && verdict) j["sync"] = sync_report_to_json(*verdict);
    out << j.dump() << "\n";
  }
}

inline void save_trace(const Trace& trace, const Program& program, const std::string& path,
                       const fssp::SyncReport* verdict = nullptr) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  write_trace(trace, program, out, verdict);
}

// Verdict recomputed from a trace file alone. A trace is complete when its
// records cover steps 0..final without gaps and the final record is halted.
struct TraceCheck {
  bool complete = false;
  std::string reason;  // "ok" or why the trace is unusable
  fssp::SyncReport report;
  std::int64_t records = 0;
};

inline TraceCheck check_trace_stream(std::istream& in) {
  TraceCheck result;
  std::map<CellId, std::optional<std::int64_t>> first_fired;
  std::optional<std::int64_t> all_fired_step;
  std::int64_t expect_step = 0;
  bool last_halted = false;
  bool contiguous = true;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.contains("step") || !j.contains("cells")) {
      result.reason = "malformed record at line " + std::to_string(result.records + 1);
      throw std::runtime_error(result.reason);
    }
    std::int64_t step = j.at("step").get<std::int64_t>();
    if (step != expect_step) contiguous = false;
    expect_step = step + 1;
    last_halted = j.value("halted", false);
    bool all_fired = true;
    for (const auto& [key, cell] : j.at("cells").items()) {
      CellId id = std::stoll(key);
      bool fired = cell.at("state").get<std::string>() == "Sf";
      auto [it, inserted] = first_fired.try_emplace(id, std::nullopt);
      if (fired && !it->second) it->second = step;
      if (!fired) all_fired = false;
    }
    if (all_fired && !all_fired_step && !first_fired.empty()) all_fired_step = step;
    ++result.records;
  }
  if (result.records == 0) {
    result.reason = "empty trace";
    return result;
  }
  result.complete = contiguous && last_halted;
  result.reason = result.complete ? "ok"
                : !contiguous     ? "incomplete: missing steps"
                                  : "incomplete: run did not halt";

  fssp::SyncReport& rep = result.report;
  rep.per_cell_firing_step = first_fired;
  bool all = true;
  bool same = true;
  std::optional<std::int64_t> lo, hi;
  for (const auto& [id, step] : first_fired) {
    if (!step) {
      all = false;
      continue;
    }
    if (!lo || *step < *lo) lo = step;
    if (!hi || *step > *hi) hi = step;
  }
  same = all && lo && hi && *lo == *hi;
  rep.simultaneous = same;
  rep.first_time = same;
  if (same) rep.firing_step = hi;
  rep.fired = same && result.complete;
  return result;
}

inline TraceCheck check_trace_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  return check_trace_stream(in);
}

}  // namespace psimplex
