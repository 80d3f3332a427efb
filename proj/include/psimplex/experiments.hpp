#pragma once

#include <cstdint>
#include <future>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "psimplex/digraph.hpp"
#include "psimplex/fssp.hpp"
#include "psimplex/generators.hpp"

namespace psimplex {

// One row of the published synchronization-time tables.
struct TableRow {
  std::string family;
  std::int64_t n = 0;
  std::int64_t ecc = 0;
  std::int64_t diam = 0;
  std::int64_t steps = 0;
};

inline const std::vector<TableRow>& table_rows() {
  static const std::vector<TableRow> kRows = {
      {"ring", 2, 1, 1, 18},        {"ring", 3, 2, 2, 29},
      {"ring", 4, 3, 3, 42},        {"ring", 5, 4, 4, 57},
      {"ring", 6, 5, 5, 74},        {"ring", 7, 6, 6, 93},
      {"ring", 8, 7, 7, 114},       {"ring", 9, 8, 8, 137},
      {"ring", 10, 9, 9, 162},      {"ring", 11, 10, 10, 189},
      {"ring", 12, 11, 11, 218},    {"ring", 13, 12, 12, 249},
      {"ring", 14, 13, 13, 282},    {"ring", 15, 14, 14, 317},
      {"rings2", 2, 1, 1, 18},      {"rings2", 4, 3, 3, 40},
      {"rings2", 6, 5, 5, 62},      {"rings2", 8, 7, 7, 90},
      {"rings2", 10, 9, 9, 122},    {"rings2", 12, 11, 11, 158},
      {"rings2", 14, 13, 13, 198},  {"rings2", 16, 15, 15, 242},
      {"rings2", 18, 17, 17, 290},  {"rings2", 20, 19, 19, 342},
      {"rings3", 5, 4, 4, 57},      {"rings3", 10, 5, 5, 67},
      {"rings3", 15, 6, 6, 78},     {"rings3", 20, 7, 7, 90},
      {"rings3", 25, 8, 8, 101},    {"ringsinc", 2, 1, 1, 18},
      {"ringsinc", 5, 3, 3, 40},    {"ringsinc", 9, 5, 5, 63},
      {"ringsinc", 14, 7, 7, 90},   {"ringsinc", 20, 9, 9, 121},
      {"ringsinc", 27, 11, 11, 156},
  };
  return kRows;
}

// Maps a family name and target size to the generator call. Throws
// std::invalid_argument when no instance of the family has that size.
inline Digraph build_family(const std::string& family, std::int64_t n) {
  if (family == "ring") return ring(n);
  if (family == "rings2") {
    if (n < 2 || n % 2 != 0) throw std::invalid_argument("rings2: size must be even and >= 2");
    return ring_of_rings(n / 2, 2);
  }
  if (family == "rings3") {
    if (n < 5 || n % 5 != 0) {
      throw std::invalid_argument("rings3: size must be a positive multiple of 5");
    }
    return ring_of_rings(n / 5, 3);
  }
  if (family == "ringsinc") {
    for (std::int64_t k = 1;; ++k) {
      std::int64_t size = k * (k + 3) / 2;
      if (size == n) return increasing_rings(k);
      if (size > n) throw std::invalid_argument("ringsinc: size must be k(k+3)/2 for some k");
    }
  }
  throw std::invalid_argument("unknown family: " + family);
}

struct RowResult {
  TableRow expected;
  std::int64_t observed_ecc = -1;
  std::int64_t observed_diam = -1;
  std::int64_t observed_steps = -1;
  bool fired = false;
  bool pass = false;
};

inline RowResult run_row(const TableRow& row, std::optional<std::uint64_t> seed = {}) {
  RowResult result;
  result.expected = row;
  Digraph d = build_family(row.family, row.n);
  TopologyMetrics m = metrics(d);
  result.observed_ecc = m.ecc_general;
  result.observed_diam = m.diameter;
  RunOptions options;
  options.sample_every = 0;
  options.seed = seed;
  Trace trace = fssp::run_fssp(d, options);
  fssp::SyncReport report = fssp::check_synchronization(trace);
  result.fired = report.fired;
  if (report.firing_step) result.observed_steps = *report.firing_step;
  result.pass = result.fired && result.observed_steps == row.steps &&
                result.observed_ecc == row.ecc && result.observed_diam == row.diam;
  return result;
}

// Runs all table rows; rows are independent simulations, so they fan out
// across threads.
inline std::vector<RowResult> run_all_rows(bool parallel = true) {
  const auto& rows = table_rows();
  std::vector<RowResult> results(rows.size());
  if (!parallel) {
    for (std::size_t i = 0; i < rows.size(); ++i) results[i] = run_row(rows[i]);
    return results;
  }
  std::vector<std::future<RowResult>> futures;
  futures.reserve(rows.size());
  for (const auto& row : rows) {
    futures.push_back(std::async(std::launch::async, [&row] { return run_row(row); }));
  }
  for (std::size_t i = 0; i < rows.size(); ++i) results[i] = futures[i].get();
  return results;
}

}  // namespace psimplex
