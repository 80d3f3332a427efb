// Command-line harness: generate topologies, run the synchronization
// program, check traces, and reproduce the experiment tables.
#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "psimplex/experiments.hpp"
#include "psimplex/json_io.hpp"

using namespace psimplex;

namespace {

constexpr int kExitFired = 0;
constexpr int kExitNotFired = 1;
constexpr int kExitInvalid = 2;

struct TopologySource {
  std::string file;
  std::string gen;
  std::int64_t n = 0;
  std::uint64_t topo_seed = 1;
  double extra_frac = 0.1;

  Digraph resolve() const {
    if (!file.empty() && !gen.empty()) {
      throw std::invalid_argument("give either --file or --gen, not both");
    }
    if (!file.empty()) return load_digraph(file);
    if (gen.empty()) throw std::invalid_argument("no topology source: use --file or --gen");
    if (gen == "random") return random_strongly_connected(n, extra_frac, topo_seed);
    return build_family(gen, n);
  }
};

void add_source_options(CLI::App* cmd, TopologySource& src) {
  cmd->add_option("--file", src.file, "digraph JSON file");
  cmd->add_option("--gen", src.gen, "generator: ring|rings2|rings3|ringsinc|random");
  cmd->add_option("--n", src.n, "size for --gen");
  cmd->add_option("--topo-seed", src.topo_seed, "seed for --gen random");
  cmd->add_option("--extra-frac", src.extra_frac, "extra arc fraction for --gen random");
}

std::optional<std::int64_t> parse_granularity(const std::string& text) {
  if (text == "full") return 1;
  if (text.rfind("sampled:", 0) == 0) {
    std::int64_t k = std::stoll(text.substr(8));
    if (k < 1) return std::nullopt;
    return k == 1 ? 1 : k;
  }
  return std::nullopt;
}

int cmd_gen(const std::string& gen, std::int64_t n, std::string out_path,
            std::uint64_t seed, double extra_frac, const std::string& format) {
  Digraph d = gen == "random" ? random_strongly_connected(n, extra_frac, seed)
                              : build_family(gen, n);
  if (out_path.empty()) out_path = gen + "-" + std::to_string(n) + ".json";
  save_digraph(d, out_path);
  TopologyMetrics m = metrics(d);
  if (format == "json") {
    nlohmann::json j{{"file", out_path},
                     {"n", m.size},
                     {"ecc", m.ecc_general},
                     {"diam", m.diameter}};
    std::cout << j.dump() << "\n";
  } else {
    std::cout << "wrote " << out_path << "  N=" << m.size << " ecc=" << m.ecc_general
              << " diam=" << m.diameter << "\n";
  }
  return kExitFired;
}

int cmd_metrics(const TopologySource& src, const std::string& format) {
  Digraph d = src.resolve();
  ValidationReport v = validate(d);
  nlohmann::json j{{"n", d.size()},
                   {"irreflexive", v.irreflexive},
                   {"simple", v.simple},
                   {"stronglyConnected", v.strongly_connected}};
  if (v.strongly_connected) {
    TopologyMetrics m = metrics(d);
    j["ecc"] = m.ecc_general;
    j["diam"] = m.diameter;
  }
  if (format == "json") {
    std::cout << j.dump() << "\n";
  } else {
    std::cout << "N=" << j["n"] << " stronglyConnected="
              << (v.strongly_connected ? "true" : "false");
    if (v.strongly_connected) std::cout << " ecc=" << j["ecc"] << " diam=" << j["diam"];
    std::cout << "\n";
  }
  return v.ok() ? kExitFired : kExitNotFired;
}

int cmd_run(const TopologySource& src, std::int64_t max_steps,
            std::optional<std::uint64_t> seed, const std::string& trace_path,
            const std::string& granularity, const std::string& format) {
  Digraph d = src.resolve();
  ValidationReport v = validate(d);
  if (!v.ok()) {
    std::cerr << "error: digraph is invalid ("
              << (!v.strongly_connected ? "not strongly connected"
                  : !v.irreflexive      ? "self arc"
                                        : "unknown node in arc")
              << "); synchronization requires a strongly connected digraph\n";
    return kExitInvalid;
  }
  auto sample = parse_granularity(granularity);
  if (!sample) {
    std::cerr << "error: bad --granularity (use full or sampled:<k>)\n";
    return kExitInvalid;
  }
  TopologyMetrics m = metrics(d);
  RunOptions options;
  options.max_steps = max_steps > 0 ? max_steps : fssp::default_max_steps(d.size());
  options.sample_every = *sample;
  options.seed = seed;
  Trace trace = fssp::run_fssp(d, options);
  fssp::SyncReport report = fssp::check_synchronization(trace);
  if (!trace_path.empty()) save_trace(trace, fssp::program(), trace_path, &report);

  if (format == "json") {
    nlohmann::json j = sync_report_to_json(report);
    j["n"] = m.size;
    j["ecc"] = m.ecc_general;
    j["diam"] = m.diameter;
    j["steps"] = trace.steps;
    j["halt"] = trace.halt == HaltReason::Halted ? "halted" : "budget-exhausted";
    std::cout << j.dump() << "\n";
  } else {
    std::cout << "fired=" << (report.fired ? "true" : "false");
    if (report.firing_step) std::cout << " step=" << *report.firing_step;
    std::cout << " n=" << m.size << " ecc=" << m.ecc_general << " diam=" << m.diameter
              << " halt="
              << (trace.halt == HaltReason::Halted ? "halted" : "budget-exhausted") << "\n";
  }
  if (trace.halt == HaltReason::BudgetExhausted) {
    std::cerr << "warning: step budget exhausted after " << trace.steps << " steps\n";
  }
  return report.fired ? kExitFired : kExitNotFired;
}

int cmd_check(const std::string& path, const std::string& format) {
  TraceCheck check = check_trace_file(path);
  if (format == "json") {
    nlohmann::json j = sync_report_to_json(check.report);
    j["complete"] = check.complete;
    j["reason"] = check.reason;
    j["records"] = check.records;
    std::cout << j.dump() << "\n";
  } else {
    std::cout << "fired=" << (check.report.fired ? "true" : "false");
    if (check.report.firing_step) std::cout << " step=" << *check.report.firing_step;
    std::cout << " simultaneous=" << (check.report.simultaneous ? "true" : "false")
              << " records=" << check.records << " reason=" << check.reason << "\n";
  }
  return check.report.fired ? kExitFired : kExitNotFired;
}

int cmd_tables(const std::string& format, bool sequential) {
  std::vector<RowResult> results = run_all_rows(!sequential);
  int failures = 0;
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : results) {
    bool pass = r.pass;
    failures += !pass;
    if (format == "json") {
      rows.push_back({{"family", r.expected.family},
                      {"n", r.expected.n},
                      {"ecc", {{"expected", r.expected.ecc}, {"observed", r.observed_ecc}}},
                      {"diam", {{"expected", r.expected.diam}, {"observed", r.observed_diam}}},
                      {"steps", {{"expected", r.expected.steps}, {"observed", r.observed_steps}}},
                      {"fired", r.fired},
                      {"pass", pass}});
    } else {
      std::printf("%-9s N=%-3lld ecc=%lld/%lld diam=%lld/%lld steps=%lld/%lld %s\n",
                  r.expected.family.c_str(), static_cast<long long>(r.expected.n),
                  static_cast<long long>(r.observed_ecc), static_cast<long long>(r.expected.ecc),
                  static_cast<long long>(r.observed_diam),
                  static_cast<long long>(r.expected.diam),
                  static_cast<long long>(r.observed_steps),
                  static_cast<long long>(r.expected.steps), pass ? "PASS" : "FAIL");
    }
  }
  if (format == "json") {
    nlohmann::json j{{"rows", rows}, {"failures", failures}};
    std::cout << j.dump() << "\n";
  } else {
    std::printf("%zu rows, %d failures\n", results.size(), failures);
  }
  return failures == 0 ? kExitFired : kExitNotFired;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"P-system FSSP simulator for strongly connected digraphs with simplex channels"};
  app.require_subcommand(1);
  app.fallthrough();  // accept --format after the subcommand too
  std::string format = "text";
  app.add_option("--format", format, "output format: text|json")
      ->check(CLI::IsMember({"text", "json"}));

  auto* gen = app.add_subcommand("gen", "generate a digraph file");
  std::string gen_name;
  std::int64_t gen_n = 0;
  std::string gen_out;
  std::uint64_t gen_seed = 1;
  double gen_frac = 0.1;
  gen->add_option("generator", gen_name, "ring|rings2|rings3|ringsinc|random")->required();
  gen->add_option("n", gen_n, "number of cells")->required();
  gen->add_option("out", gen_out, "output path (default <generator>-<n>.json)");
  gen->add_option("--seed", gen_seed, "seed for random");
  gen->add_option("--extra-frac", gen_frac, "extra arc fraction for random");

  auto* run = app.add_subcommand("run", "run the synchronization program");
  TopologySource run_src;
  add_source_options(run, run_src);
  std::int64_t max_steps = 0;
  std::optional<std::uint64_t> engine_seed;
  std::string trace_path;
  std::string granularity = "full";
  run->add_option("--max-steps", max_steps, "step budget (default 10*N*N)");
  run->add_option("--seed", engine_seed, "engine seed for once-instantiation choices");
  run->add_option("--trace", trace_path, "write line-delimited JSON trace");
  run->add_option("--granularity", granularity, "full or sampled:<k>");

  auto* check = app.add_subcommand("check", "recompute the verdict from a trace file");
  std::string check_path;
  check->add_option("trace", check_path, "trace file")->required();

  auto* tables = app.add_subcommand("tables", "reproduce the experiment tables");
  bool sequential = false;
  tables->add_flag("--sequential", sequential, "do not run rows in parallel");

  auto* metrics_cmd = app.add_subcommand("metrics", "validate and measure a digraph");
  TopologySource metrics_src;
  add_source_options(metrics_cmd, metrics_src);

  CLI11_PARSE(app, argc, argv);
  try {
    if (gen->parsed()) return cmd_gen(gen_name, gen_n, gen_out, gen_seed, gen_frac, format);
    if (run->parsed())
      return cmd_run(run_src, max_steps, engine_seed, trace_path, granularity, format);
    if (check->parsed()) return cmd_check(check_path, format);
    if (tables->parsed()) return cmd_tables(format, sequential);
    if (metrics_cmd->parsed()) return cmd_metrics(metrics_src, format);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  return kExitInvalid;
}
