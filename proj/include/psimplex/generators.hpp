#pragma once

#include <cstdint>
#include <numeric>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "psimplex/digraph.hpp"

namespace psimplex {

// Directed ring 1 -> 2 -> ... -> n -> 1, general at node 1.
inline Digraph ring(std::int64_t n) {
  if (n < 2) throw std::invalid_argument("ring: need at least 2 nodes");
  std::vector<CellId> nodes(static_cast<std::size_t>(n));
  std::iota(nodes.begin(), nodes.end(), CellId{1});
  std::vector<std::pair<CellId, CellId>> arcs;
  for (CellId i = 1; i <= n; ++i) arcs.emplace_back(i, i == n ? 1 : i + 1);
  return Digraph(std::move(nodes), std::move(arcs), 1);
}

namespace detail {

// Hub family: a main cycle of `main_len` anchors plus disjoint sub-rings,
// each sharing exactly one node (its host anchor) with the main cycle. The
// host of every ring is the last anchor, which keeps the diameter equal to
// the general's eccentricity on these shapes.
inline Digraph hub_ring_family(std::int64_t main_len, const std::vector<std::int64_t>& ring_sizes) {
  std::vector<CellId> nodes;
  std::vector<std::pair<CellId, CellId>> arcs;
  for (std::int64_t j = 1; j <= main_len; ++j) {
    nodes.push_back(j);
    if (main_len > 1) arcs.emplace_back(j, j % main_len + 1);
  }
  CellId host = main_len;
  CellId next_id = main_len + 1;
  for (std::int64_t size : ring_sizes) {
    CellId prev = host;
    for (std::int64_t i = 0; i < size; ++i) {
      nodes.push_back(next_id);
      arcs.emplace_back(prev, next_id);
      prev = next_id++;
    }
    arcs.emplace_back(prev, host);
  }
  return Digraph(std::move(nodes), std::move(arcs), 1);
}

}  // namespace detail

// The two ring-of-rings families from the experiment tables.
//
// sub_size 2: the main ring threads through every cell; each odd/even pair
// forms a size-2 ring via the back arc 2j -> 2j-1. N = 2 * main_len.
//
// sub_size 3: a main cycle of main_len + 2 anchors with 2*main_len - 1
// three-node sub-rings hanging at the last anchor. N = 5 * main_len.
inline Digraph ring_of_rings(std::int64_t main_len, std::int64_t sub_size) {
  if (main_len < 1) throw std::invalid_argument("ring_of_rings: main_len must be >= 1");
  if (sub_size == 2) {
    std::int64_t n = 2 * main_len;
    std::vector<CellId> nodes(static_cast<std::size_t>(n));
    std::iota(nodes.begin(), nodes.end(), CellId{1});
    std::vector<std::pair<CellId, CellId>> arcs;
    for (std::int64_t j = 0; j < main_len; ++j) {
      CellId a = 2 * j + 1;
      CellId b = 2 * j + 2;
      CellId a_next = (j + 1 == main_len) ? 1 : 2 * j + 3;
      arcs.emplace_back(a, b);
      arcs.emplace_back(b, a);
      if (a_next != a) arcs.emplace_back(b, a_next);
    }
    return Digraph(std::move(nodes), std::move(arcs), 1);
  }
  if (sub_size == 3) {
    return detail::hub_ring_family(
        main_len + 2, std::vector<std::int64_t>(static_cast<std::size_t>(2 * main_len - 1), 2));
  }
  throw std::invalid_argument("ring_of_rings: sub_size must be 2 or 3");
}

// Main cycle of k anchors; the k sub-rings of increasing sizes 1, 2, ..., k
// all hang at the last anchor. N = k(k+3)/2.
inline Digraph increasing_rings(std::int64_t k) {
  if (k < 1) throw std::invalid_argument("increasing_rings: k must be >= 1");
  std::vector<std::int64_t> sizes(static_cast<std::size_t>(k));
  std::iota(sizes.begin(), sizes.end(), std::int64_t{1});
  return detail::hub_ring_family(k, sizes);
}

namespace detail {

// Portable uniform draw in [0, bound): rejection sampling over the raw
// engine output keeps generated digraphs identical across platforms.
inline std::uint64_t det_uniform(std::mt19937_64& rng, std::uint64_t bound) {
  if (bound <= 1) return 0;
  const std::uint64_t limit = std::mt19937_64::max() - std::mt19937_64::max() % bound;
  std::uint64_t draw;
  do {
    draw = rng();
  } while (draw >= limit);
  return draw % bound;
}

template <class T>
void det_shuffle(std::vector<T>& v, std::mt19937_64& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::swap(v[i - 1], v[det_uniform(rng, i)]);
  }
}

}  // namespace detail

// Random digraph guaranteed strongly connected: a directed Hamiltonian cycle
// over a random permutation, plus a fraction of the remaining ordered pairs
// as extra arcs. Deterministic for a fixed (n, fraction, seed).
inline Digraph random_strongly_connected(std::int64_t n, double extra_arc_fraction,
                                         std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("random_strongly_connected: n must be >= 1");
  if (extra_arc_fraction < 0.0 || extra_arc_fraction > 1.0) {
    throw std::invalid_argument("random_strongly_connected: fraction must be in [0, 1]");
  }
  std::vector<CellId> nodes(static_cast<std::size_t>(n));
  std::iota(nodes.begin(), nodes.end(), CellId{1});
  std::vector<std::pair<CellId, CellId>> arcs;
  if (n > 1) {
    std::mt19937_64 rng(seed);
    std::vector<CellId> order = nodes;
    detail::det_shuffle(order, rng);
    for (std::size_t i = 0; i < order.size(); ++i) {
      arcs.emplace_back(order[i], order[(i + 1) % order.size()]);
    }
    std::vector<std::pair<CellId, CellId>> pool;
    for (CellId u : nodes) {
      for (CellId w : nodes) {
        if (u == w) continue;
        if (std::find(arcs.begin(), arcs.end(), std::make_pair(u, w)) != arcs.end()) continue;
        pool.emplace_back(u, w);
      }
    }
    detail::det_shuffle(pool, rng);
    auto extra = static_cast<std::size_t>(extra_arc_fraction * static_cast<double>(pool.size()));
    arcs.insert(arcs.end(), pool.begin(), pool.begin() + static_cast<long>(extra));
  }
  return Digraph(std::move(nodes), std::move(arcs), 1);
}

}  // namespace psimplex
