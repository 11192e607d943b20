#pragma once

// Test-side reference implementations. They deliberately avoid the library's
// algorithms: everything here is a direct transcription of the definitions,
// run over bitmasks on small graphs.

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "udom/graph.hpp"
#include "udom/is_reduction.hpp"

namespace udom::testing {

inline Graph random_graph(Vertex n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (coin(rng)) edges.emplace_back(u, v);
  return make_graph(n, edges);
}

// Graph on n <= 5 vertices from a bitmask over the pairs of K_n.
inline Graph graph_from_pair_mask(Vertex n, std::uint32_t mask) {
  std::vector<Edge> edges;
  int bit = 0;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v, ++bit)
      if (mask >> bit & 1) edges.emplace_back(u, v);
  return make_graph(n, edges);
}

inline std::vector<std::uint64_t> closed_masks(const Graph& g) {
  std::vector<std::uint64_t> m(static_cast<std::size_t>(g.n()));
  for (Vertex v = 0; v < g.n(); ++v) {
    m[static_cast<std::size_t>(v)] = std::uint64_t{1} << v;
    for (Vertex w : g.neighbors(v)) m[static_cast<std::size_t>(v)] |= std::uint64_t{1} << w;
  }
  return m;
}

inline bool ref_dominates(const std::vector<std::uint64_t>& closed, std::uint64_t d, int n) {
  std::uint64_t covered = 0;
  for (int v = 0; v < n; ++v)
    if (d >> v & 1) covered |= closed[static_cast<std::size_t>(v)];
  return covered == (n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
}

// Minimal by definition: dominating, and removing any single member breaks it.
// (Domination is monotone, so single removals suffice.)
inline bool ref_minimal(const Graph& g, std::uint64_t d) {
  auto closed = closed_masks(g);
  const int n = g.n();
  if (!ref_dominates(closed, d, n)) return false;
  for (int v = 0; v < n; ++v)
    if ((d >> v & 1) && ref_dominates(closed, d & ~(std::uint64_t{1} << v), n)) return false;
  return true;
}

// Upper domination number from the definition.
inline int ref_gamma(const Graph& g) {
  int best = 0;
  for (std::uint64_t d = 0; d < (std::uint64_t{1} << g.n()); ++d) {
    int sz = __builtin_popcountll(d);
    if (sz > best && ref_minimal(g, d)) best = sz;
  }
  return best;
}

inline bool ref_independent(const Graph& g, std::uint64_t s) {
  for (auto [u, v] : g.edges())
    if ((s >> u & 1) && (s >> v & 1)) return false;
  return true;
}

// Maximal independent sets by exhaustive subset scan.
inline std::vector<std::uint64_t> ref_maximal_independent_sets(const Graph& g) {
  std::vector<std::uint64_t> out;
  const int n = g.n();
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
    if (!ref_independent(g, s)) continue;
    bool maximal = true;
    for (int v = 0; v < n && maximal; ++v)
      if (!(s >> v & 1) && ref_independent(g, s | std::uint64_t{1} << v)) maximal = false;
    if (maximal) out.push_back(s);
  }
  return out;
}

inline int ref_alpha(const Graph& g) {
  int best = 0;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << g.n()); ++s)
    if (ref_independent(g, s)) best = std::max(best, __builtin_popcountll(s));
  return best;
}

inline std::uint64_t to_mask(const VertexSet& s) {
  std::uint64_t m = 0;
  for (Vertex v : s) m |= std::uint64_t{1} << v;
  return m;
}

// Every clique-partitioned source on 1..max_n vertices: each set partition of
// the vertices (as cliques) combined with each subset of the cross-clique
// pairs.
inline std::vector<CliquePartitionedIsInstance> all_clique_partitioned_sources(Vertex max_n) {
  std::vector<CliquePartitionedIsInstance> out;
  for (Vertex n = 1; n <= max_n; ++n) {
    // restricted growth strings enumerate set partitions
    std::vector<int> rgs(static_cast<std::size_t>(n), 0);
    while (true) {
      int k = *std::max_element(rgs.begin(), rgs.end()) + 1;
      std::vector<VertexSet> cliques(static_cast<std::size_t>(k));
      for (Vertex v = 0; v < n; ++v) cliques[static_cast<std::size_t>(rgs[static_cast<std::size_t>(v)])].push_back(v);
      std::vector<Edge> inside, across;
      for (Vertex u = 0; u < n; ++u)
        for (Vertex v = u + 1; v < n; ++v)
          (rgs[static_cast<std::size_t>(u)] == rgs[static_cast<std::size_t>(v)] ? inside : across).emplace_back(u, v);
      for (std::uint32_t mask = 0; mask < (1u << across.size()); ++mask) {
        auto edges = inside;
        for (std::size_t i = 0; i < across.size(); ++i)
          if (mask >> i & 1) edges.push_back(across[i]);
        out.push_back({make_graph(n, edges), cliques});
      }
      // next restricted growth string
      int i = n - 1;
      for (; i > 0; --i) {
        int prefix_max = *std::max_element(rgs.begin(), rgs.begin() + i);
        if (rgs[static_cast<std::size_t>(i)] <= prefix_max) break;
      }
      if (i <= 0) break;
      ++rgs[static_cast<std::size_t>(i)];
      std::fill(rgs.begin() + i + 1, rgs.end(), 0);
    }
  }
  return out;
}

}  // namespace udom::testing
