#pragma once

// Sub-exponential r-approximation for Upper Dominating Set.
//
// V is split into l = floor(r/2) blocks of near-equal size. For each block we
// (a) greedily extend every maximal independent set of the induced block to a
// maximal independent set of G, and (b) for every nonempty subset S of the
// block and every guess of one private neighbor per vertex of S, extend S to a
// minimal dominating set through the T1/T2 construction, discarding failures.
// The largest valid set seen is returned.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <variant>
#include <vector>

#include "udom/domination.hpp"
#include "udom/graph.hpp"
#include "udom/independent_sets.hpp"

namespace udom {

struct PartitionScheme {
  std::size_t blocks_wanted = 0;  // l
  std::uint64_t seed = 0;
  std::vector<VertexSet> blocks;
};

// l = max(1, floor(r/2)) capped at n. Seed 0 keeps index order; any other seed
// shuffles vertices (Fisher–Yates over mt19937_64) before cutting contiguous
// ranges. The first n mod l blocks get the extra vertex.
inline PartitionScheme make_partition(Vertex n, double ratio, std::uint64_t seed) {
  if (!(ratio > 1.0)) throw std::invalid_argument("approximation ratio must exceed 1");
  PartitionScheme p;
  p.seed = seed;
  if (n <= 0) return p;
  double half = std::floor(ratio / 2.0);
  std::size_t l = half < 1.0 ? 1 : (half >= static_cast<double>(n) ? static_cast<std::size_t>(n)
                                                                   : static_cast<std::size_t>(half));
  p.blocks_wanted = l;
  std::vector<Vertex> order(static_cast<std::size_t>(n));
  for (Vertex v = 0; v < n; ++v) order[static_cast<std::size_t>(v)] = v;
  if (seed != 0) {
    std::mt19937_64 rng(seed);
    for (std::size_t i = order.size() - 1; i > 0; --i) std::swap(order[i], order[rng() % (i + 1)]);
  }
  const std::size_t base = order.size() / l, extra = order.size() % l;
  std::size_t at = 0;
  for (std::size_t b = 0; b < l; ++b) {
    std::size_t len = base + (b < extra ? 1 : 0);
    VertexSet block(order.begin() + static_cast<std::ptrdiff_t>(at), order.begin() + static_cast<std::ptrdiff_t>(at + len));
    std::sort(block.begin(), block.end());
    p.blocks.push_back(std::move(block));
    at += len;
  }
  return p;
}

// A candidate supported set S with one guessed private neighbor per member,
// plus the regions derived from the pair. Region sets never contain vertices
// of S or P.
struct GuessContext {
  VertexSet supported;            // S
  std::vector<Vertex> privates;   // privates[i] is the guess for supported[i]
  VertexSet private_set;          // P, sorted
  VertexSet shared_nbhd;          // N_SP = N(S) ∩ N(P)
  VertexSet s_only_nbhd;          // N_S  = N(S) \ N_SP
  VertexSet p_only_nbhd;          // N_P  = N(P) \ N_SP
  VertexSet free_region;          // V_SP = V \ (N[S] ∪ N[P])
  VertexSet p_sealed;             // Q_P  = N_P \ N(V_SP)
};

namespace detail {

inline std::vector<char> open_nbhd_mask(const Graph& g, const VertexSet& s) {
  std::vector<char> m(static_cast<std::size_t>(g.n()), 0);
  for (Vertex u : s)
    for (Vertex w : g.neighbors(u)) m[static_cast<std::size_t>(w)] = 1;
  return m;
}

inline VertexSet mask_to_set(const std::vector<char>& m) {
  VertexSet out;
  for (std::size_t v = 0; v < m.size(); ++v)
    if (m[v]) out.push_back(static_cast<Vertex>(v));
  return out;
}

inline void fill_regions(const Graph& g, GuessContext& ctx) {
  const auto n = static_cast<std::size_t>(g.n());
  auto ns = open_nbhd_mask(g, ctx.supported);
  auto np = open_nbhd_mask(g, ctx.private_set);
  std::vector<char> decided(n, 0);
  for (Vertex u : ctx.supported) decided[static_cast<std::size_t>(u)] = 1;
  for (Vertex p : ctx.private_set) decided[static_cast<std::size_t>(p)] = 1;

  std::vector<char> sp(n), s_only(n), p_only(n), free(n);
  for (std::size_t v = 0; v < n; ++v) {
    if (decided[v]) continue;
    sp[v] = ns[v] && np[v];
    s_only[v] = ns[v] && !np[v];
    p_only[v] = np[v] && !ns[v];
    free[v] = !ns[v] && !np[v];
  }
  auto near_free = open_nbhd_mask(g, mask_to_set(free));
  std::vector<char> sealed(n);
  for (std::size_t v = 0; v < n; ++v) sealed[v] = p_only[v] && !near_free[v];

  ctx.shared_nbhd = mask_to_set(sp);
  ctx.s_only_nbhd = mask_to_set(s_only);
  ctx.p_only_nbhd = mask_to_set(p_only);
  ctx.free_region = mask_to_set(free);
  ctx.p_sealed = mask_to_set(sealed);
}

}  // namespace detail

// Candidates for the private neighbor of u: neighbors outside S that no other
// member of S touches.
inline VertexSet private_candidates(const Graph& g, const VertexSet& s, Vertex u) {
  auto in_s = membership(g, s);
  std::vector<char> other(static_cast<std::size_t>(g.n()), 0);
  for (Vertex x : s)
    if (x != u)
      for (Vertex w : g.neighbors(x)) other[static_cast<std::size_t>(w)] = 1;
  VertexSet out;
  for (Vertex w : g.neighbors(u))
    if (!in_s[static_cast<std::size_t>(w)] && !other[static_cast<std::size_t>(w)]) out.push_back(w);
  return out;
}

inline GuessContext make_guess_context(const Graph& g, VertexSet s, std::vector<Vertex> privates) {
  GuessContext ctx;
  ctx.supported = std::move(s);
  ctx.privates = std::move(privates);
  ctx.private_set = normalized(ctx.privates);
  detail::fill_regions(g, ctx);
  return ctx;
}

// Enumerates every injective choice of private neighbors for s (nonempty),
// lexicographic in the order of s. Nothing is produced if some member has no
// candidate.
template <typename Visit>
void for_each_private_guess(const Graph& g, const VertexSet& s_in, Visit&& visit) {
  const VertexSet s = normalized(s_in);
  std::vector<VertexSet> cand;
  cand.reserve(s.size());
  for (Vertex u : s) {
    cand.push_back(private_candidates(g, s, u));
    if (cand.back().empty()) return;
  }
  std::vector<Vertex> pick(s.size());
  std::vector<char> used(static_cast<std::size_t>(g.n()), 0);
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == s.size()) {
      visit(make_guess_context(g, s, pick));
      return;
    }
    for (Vertex w : cand[i]) {
      if (used[static_cast<std::size_t>(w)]) continue;
      used[static_cast<std::size_t>(w)] = 1;
      pick[i] = w;
      self(self, i + 1);
      used[static_cast<std::size_t>(w)] = 0;
    }
  };
  rec(rec, 0);
}

inline std::vector<GuessContext> guess_private_neighbors(const Graph& g, const VertexSet& s) {
  std::vector<GuessContext> out;
  for_each_private_guess(g, s, [&](GuessContext ctx) { out.push_back(std::move(ctx)); });
  return out;
}

namespace detail {

// Scans `t` in ascending order and drops u when every vertex of
// N(u) ∩ target is also covered by t \ {u}. Coverage is re-counted after each
// drop.
inline VertexSet prune_without_private(const Graph& g, VertexSet t, const std::vector<char>& target) {
  std::vector<int> cover(static_cast<std::size_t>(g.n()), 0);
  for (Vertex u : t)
    for (Vertex w : g.neighbors(u)) ++cover[static_cast<std::size_t>(w)];
  std::vector<char> alive(t.size(), 1);
  for (std::size_t i = 0; i < t.size(); ++i) {
    Vertex u = t[i];
    bool has_private = false;
    for (Vertex w : g.neighbors(u))
      if (target[static_cast<std::size_t>(w)] && cover[static_cast<std::size_t>(w)] == 1) {
        has_private = true;
        break;
      }
    if (has_private) continue;
    alive[i] = 0;
    for (Vertex w : g.neighbors(u)) --cover[static_cast<std::size_t>(w)];
  }
  VertexSet kept;
  for (std::size_t i = 0; i < t.size(); ++i)
    if (alive[i]) kept.push_back(t[i]);
  return kept;
}

inline std::vector<char> to_mask(const Graph& g, const VertexSet& s) { return membership(g, s); }

}  // namespace detail

// Extends S through T1 (vertices of N_S guarding Q_P) and T2 (vertices of V_SP
// guarding what T1 leaves of N_P), then fills V_SP greedily. Returns nothing
// when the result is not a minimal dominating set.
inline std::optional<UpperDomSolution> extend_supported(const Graph& g, const GuessContext& ctx) {
  const auto n = static_cast<std::size_t>(g.n());
  const auto s_only = detail::to_mask(g, ctx.s_only_nbhd);
  const auto p_only = detail::to_mask(g, ctx.p_only_nbhd);
  const auto free = detail::to_mask(g, ctx.free_region);

  // T1 = N(Q_P) ∩ N_S
  auto near_sealed = detail::open_nbhd_mask(g, ctx.p_sealed);
  VertexSet t1;
  for (std::size_t v = 0; v < n; ++v)
    if (near_sealed[v] && s_only[v]) t1.push_back(static_cast<Vertex>(v));
  t1 = detail::prune_without_private(g, std::move(t1), p_only);

  // T2 = N(N_P \ N(T1)) ∩ V_SP
  auto near_t1 = detail::open_nbhd_mask(g, t1);
  std::vector<char> residual(n, 0);
  for (std::size_t v = 0; v < n; ++v) residual[v] = p_only[v] && !near_t1[v];
  auto near_residual = detail::open_nbhd_mask(g, detail::mask_to_set(residual));
  VertexSet t2;
  for (std::size_t v = 0; v < n; ++v)
    if (near_residual[v] && free[v]) t2.push_back(static_cast<Vertex>(v));
  t2 = detail::prune_without_private(g, std::move(t2), residual);

  VertexSet d = ctx.supported;
  d.insert(d.end(), t1.begin(), t1.end());
  d.insert(d.end(), t2.begin(), t2.end());
  d = normalized(std::move(d));

  // Fill V_SP \ N[T2] in index order, adding a vertex only while it is still
  // undominated.
  auto closed_t2 = detail::open_nbhd_mask(g, t2);
  for (Vertex u : t2) closed_t2[static_cast<std::size_t>(u)] = 1;
  auto dominated = detail::open_nbhd_mask(g, d);
  for (Vertex u : d) dominated[static_cast<std::size_t>(u)] = 1;
  for (Vertex v : ctx.free_region) {
    auto vi = static_cast<std::size_t>(v);
    if (closed_t2[vi] || dominated[vi]) continue;
    d.push_back(v);
    dominated[vi] = 1;
    for (Vertex w : g.neighbors(v)) dominated[static_cast<std::size_t>(w)] = 1;
  }
  auto res = check_minimal(g, d);
  if (auto* sol = std::get_if<UpperDomSolution>(&res)) return std::move(*sol);
  return std::nullopt;
}

struct ApproxStats {
  std::size_t blocks = 0;
  std::uint64_t mis_branches = 0;       // maximal independent sets of blocks
  std::uint64_t subset_branches = 0;    // nonempty subsets S tried, all blocks
  std::uint64_t max_subset_branches_per_block = 0;
  std::uint64_t contexts = 0;           // private-neighbor guesses
  std::uint64_t discards = 0;           // extensions rejected by check_minimal
};

namespace detail {

inline bool better(const UpperDomSolution& cand, const std::optional<UpperDomSolution>& best) {
  if (!best) return true;
  if (cand.size() != best->size()) return cand.size() > best->size();
  return cand.members < best->members;
}

}  // namespace detail

inline UpperDomSolution approximate_uds(const Graph& g, double ratio, std::uint64_t seed = 0,
                                        ApproxStats* stats_out = nullptr) {
  PartitionScheme part = make_partition(g.n(), ratio, seed);
  ApproxStats stats;
  stats.blocks = part.blocks.size();
  std::optional<UpperDomSolution> best;
  auto offer = [&](UpperDomSolution cand) {
    if (detail::better(cand, best)) best = std::move(cand);
  };

  for (const VertexSet& block : part.blocks) {
    if (block.size() >= 63) throw std::length_error("block too large for subset enumeration");
    Graph sub = induced_subgraph(g, block);
    for_each_maximal_independent_set(sub, [&](const VertexSet& local) {
      ++stats.mis_branches;
      VertexSet start;
      for (Vertex i : local) start.push_back(block[static_cast<std::size_t>(i)]);
      VertexSet full = greedy_extend_independent(g, start);
      offer(std::get<UpperDomSolution>(check_minimal(g, full)));
    });

    std::uint64_t block_subsets = 0;
    const std::uint64_t limit = std::uint64_t{1} << block.size();
    for (std::uint64_t mask = 1; mask < limit; ++mask) {
      ++block_subsets;
      VertexSet s;
      for (std::size_t i = 0; i < block.size(); ++i)
        if (mask >> i & 1) s.push_back(block[i]);
      for_each_private_guess(g, s, [&](const GuessContext& ctx) {
        ++stats.contexts;
        if (auto sol = extend_supported(g, ctx))
          offer(std::move(*sol));
        else
          ++stats.discards;
      });
    }
    stats.subset_branches += block_subsets;
    stats.max_subset_branches_per_block = std::max(stats.max_subset_branches_per_block, block_subsets);
  }
  if (stats_out) *stats_out = stats;
  if (!best) return UpperDomSolution{};  // empty graph
  return std::move(*best);
}

}  // namespace udom
