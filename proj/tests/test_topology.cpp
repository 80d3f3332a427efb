#include <filesystem>
#include <map>

#include <catch2/catch_amalgamated.hpp>

#include "psimplex/experiments.hpp"
#include "psimplex/generators.hpp"
#include "psimplex/json_io.hpp"

using namespace psimplex;

namespace {

// Floyd-Warshall over the arc relation: the all-pairs oracle for metrics.
std::map<std::pair<CellId, CellId>, std::int64_t> floyd_warshall(const Digraph& d) {
  const std::int64_t kInf = 1'000'000;
  std::map<std::pair<CellId, CellId>, std::int64_t> dist;
  for (CellId u : d.nodes())
    for (CellId w : d.nodes()) dist[{u, w}] = u == w ? 0 : kInf;
  for (const auto& [u, w] : d.arcs()) dist[{u, w}] = 1;
  for (CellId k : d.nodes())
    for (CellId u : d.nodes())
      for (CellId w : d.nodes()) {
        std::int64_t via = dist[{u, k}] + dist[{k, w}];
        if (via < dist[{u, w}]) dist[{u, w}] = via;
      }
  return dist;
}

std::filesystem::path golden_dir() {
  return std::filesystem::path(__FILE__).parent_path().parent_path() / "data" / "topologies" /
         "v1";
}

}  // namespace

TEST_CASE("validation verdicts") {
  SECTION("directed ring is valid") {
    Digraph d({1, 2, 3}, {{1, 2}, {2, 3}, {3, 1}}, 1);
    ValidationReport v = validate(d);
    CHECK(v.irreflexive);
    CHECK(v.simple);
    CHECK(v.strongly_connected);
  }
  SECTION("single arc between two nodes is not strongly connected") {
    ValidationReport v = validate(Digraph({1, 2}, {{1, 2}}, 1));
    CHECK(v.irreflexive);
    CHECK_FALSE(v.strongly_connected);
  }
  SECTION("self arcs break irreflexivity") {
    ValidationReport v = validate(Digraph({1, 2}, {{1, 1}, {1, 2}, {2, 1}}, 1));
    CHECK_FALSE(v.irreflexive);
  }
  SECTION("arcs naming unknown nodes are flagged") {
    ValidationReport v = validate(Digraph({1, 2}, {{1, 2}, {2, 1}, {2, 5}}, 1));
    CHECK_FALSE(v.simple);
  }
}

TEST_CASE("metrics by BFS") {
  TopologyMetrics m6 = metrics(ring(6));
  CHECK(m6.size == 6);
  CHECK(m6.ecc_general == 5);
  CHECK(m6.diameter == 5);

  TopologyMetrics m25 = metrics(ring_of_rings(5, 3));
  CHECK(m25.size == 25);
  CHECK(m25.ecc_general == 8);
  CHECK(m25.diameter == 8);

  Digraph single({7}, {}, 7);
  TopologyMetrics m1 = metrics(single);
  CHECK(m1.size == 1);
  CHECK(m1.ecc_general == 0);
  CHECK(m1.diameter == 0);

  CHECK_THROWS_AS(metrics(Digraph({1, 2}, {{1, 2}}, 1)), std::invalid_argument);
}

TEST_CASE("metrics agree with the Floyd-Warshall oracle on small digraphs") {
  std::vector<Digraph> digraphs;
  digraphs.push_back(ring(7));
  digraphs.push_back(ring_of_rings(5, 2));
  digraphs.push_back(increasing_rings(3));
  digraphs.push_back(ring_of_rings(2, 3));
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    digraphs.push_back(random_strongly_connected(4 + 2 * static_cast<std::int64_t>(seed) % 9,
                                                 0.1 * static_cast<double>(seed % 4), seed));
  }
  for (const auto& d : digraphs) {
    REQUIRE(d.size() <= 12);
    auto dist = floyd_warshall(d);
    std::int64_t ecc = 0, diam = 0;
    for (const auto& [pair, dv] : dist) {
      if (pair.first == d.general()) ecc = std::max(ecc, dv);
      diam = std::max(diam, dv);
    }
    TopologyMetrics m = metrics(d);
    CHECK(m.ecc_general == ecc);
    CHECK(m.diameter == diam);
  }
}

TEST_CASE("ring generator") {
  Digraph r2 = ring(2);
  CHECK(r2.arcs() == std::vector<std::pair<CellId, CellId>>{{1, 2}, {2, 1}});
  CHECK(r2.general() == 1);

  Digraph r6 = ring(6);
  CHECK(r6.size() == 6);
  CHECK(r6.arcs().size() == 6);

  TopologyMetrics m15 = metrics(ring(15));
  CHECK(m15.ecc_general == 14);
  CHECK(m15.diameter == 14);

  CHECK_THROWS_AS(ring(1), std::invalid_argument);
  for (std::int64_t n = 2; n <= 15; ++n) {
    TopologyMetrics m = metrics(ring(n));
    CHECK(m.ecc_general == n - 1);
    CHECK(m.diameter == n - 1);
  }
}

TEST_CASE("family generators match the published (N, ecc, diam) rows") {
  for (const auto& row : table_rows()) {
    Digraph d = build_family(row.family, row.n);
    INFO(row.family << " N=" << row.n);
    CHECK(validate(d).ok());
    TopologyMetrics m = metrics(d);
    CHECK(m.size == row.n);
    CHECK(m.ecc_general == row.ecc);
    CHECK(m.diameter == row.diam);
  }
  CHECK_THROWS_AS(build_family("rings2", 7), std::invalid_argument);
  CHECK_THROWS_AS(build_family("rings3", 12), std::invalid_argument);
  CHECK_THROWS_AS(build_family("ringsinc", 8), std::invalid_argument);
  CHECK_THROWS_AS(build_family("nosuch", 4), std::invalid_argument);
  CHECK_THROWS_AS(ring_of_rings(2, 4), std::invalid_argument);
  CHECK_THROWS_AS(ring_of_rings(0, 2), std::invalid_argument);
  CHECK_THROWS_AS(increasing_rings(0), std::invalid_argument);
}

TEST_CASE("random strongly connected digraphs") {
  SECTION("single node") {
    Digraph d = random_strongly_connected(1, 0.5, 3);
    CHECK(d.size() == 1);
    CHECK(d.arcs().empty());
    CHECK(validate(d).ok());
  }
  SECTION("always strongly connected, deterministic per seed") {
    for (std::uint64_t seed : {1ull, 7ull, 1234ull}) {
      Digraph a = random_strongly_connected(70, 0.05, seed);
      Digraph b = random_strongly_connected(70, 0.05, seed);
      CHECK(a.nodes() == b.nodes());
      CHECK(a.arcs() == b.arcs());
      CHECK(validate(a).ok());
    }
    Digraph c = random_strongly_connected(70, 0.05, 1);
    Digraph e = random_strongly_connected(70, 0.05, 2);
    CHECK(c.arcs() != e.arcs());
  }
  SECTION("extra arc fraction adds arcs") {
    Digraph sparse = random_strongly_connected(30, 0.0, 9);
    Digraph dense = random_strongly_connected(30, 0.5, 9);
    CHECK(sparse.arcs().size() == 30);
    CHECK(dense.arcs().size() > sparse.arcs().size());
    CHECK(validate(dense).ok());
  }
  SECTION("parameter validation") {
    CHECK_THROWS_AS(random_strongly_connected(0, 0.1, 1), std::invalid_argument);
    CHECK_THROWS_AS(random_strongly_connected(5, -0.1, 1), std::invalid_argument);
    CHECK_THROWS_AS(random_strongly_connected(5, 1.5, 1), std::invalid_argument);
  }
}

TEST_CASE("every generator output passes validation") {
  std::vector<Digraph> all;
  for (std::int64_t n = 2; n <= 12; ++n) all.push_back(ring(n));
  for (std::int64_t m = 1; m <= 8; ++m) all.push_back(ring_of_rings(m, 2));
  for (std::int64_t m = 1; m <= 5; ++m) all.push_back(ring_of_rings(m, 3));
  for (std::int64_t k = 1; k <= 6; ++k) all.push_back(increasing_rings(k));
  for (std::uint64_t s = 1; s <= 10; ++s)
    all.push_back(random_strongly_connected(1 + static_cast<std::int64_t>(s) * 6, 0.08, s));
  for (const auto& d : all) {
    ValidationReport v = validate(d);
    CHECK(v.irreflexive);
    CHECK(v.simple);
    CHECK(v.strongly_connected);
    CHECK(d.has_node(d.general()));
  }
}

TEST_CASE("golden topology files pin the frozen constructions") {
  auto dir = golden_dir();
  REQUIRE(std::filesystem::exists(dir));
  auto check_golden = [&](const std::string& name, const Digraph& generated) {
    Digraph golden = load_digraph((dir / name).string());
    INFO(name);
    CHECK(golden.nodes() == generated.nodes());
    CHECK(golden.arcs() == generated.arcs());
    CHECK(golden.general() == generated.general());
  };
  check_golden("ring-6.json", ring(6));
  check_golden("rings2-10.json", ring_of_rings(5, 2));
  check_golden("rings3-10.json", ring_of_rings(2, 3));
  check_golden("rings3-25.json", ring_of_rings(5, 3));
  check_golden("ringsinc-14.json", increasing_rings(4));
  check_golden("ringsinc-27.json", increasing_rings(6));
}
