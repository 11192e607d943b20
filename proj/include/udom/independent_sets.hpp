#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "udom/domination.hpp"
#include "udom/graph.hpp"

namespace udom {

namespace detail {

// Bron–Kerbosch with Tomita pivoting, run on the complement of g: the maximal
// cliques of the complement are exactly the maximal independent sets of g.
template <typename Visit>
class MisEnumerator {
public:
  MisEnumerator(const Graph& g, Visit& visit) : g_(g), visit_(visit) {}

  void run() {
    VertexSet r, p(static_cast<std::size_t>(g_.n())), x;
    for (Vertex v = 0; v < g_.n(); ++v) p[static_cast<std::size_t>(v)] = v;
    expand(r, p, x);
  }

private:
  // P ∩ N[u]: the candidates still compatible-or-equal with u in g.
  std::size_t closed_hits(Vertex u, const VertexSet& p) const {
    std::size_t hits = 0;
    for (Vertex v : p)
      if (v == u || g_.has_edge(u, v)) ++hits;
    return hits;
  }

  VertexSet outside_closed_nbhd(Vertex v, const VertexSet& s) const {
    VertexSet out;
    for (Vertex w : s)
      if (w != v && !g_.has_edge(v, w)) out.push_back(w);
    return out;
  }

  void expand(VertexSet& r, VertexSet p, VertexSet x) {
    if (p.empty()) {
      if (x.empty()) visit_(std::as_const(r));
      return;
    }
    Vertex pivot = -1;
    std::size_t best = SIZE_MAX;
    for (const VertexSet* s : {&p, &x})
      for (Vertex u : *s) {
        std::size_t h = closed_hits(u, p);
        if (h < best) {
          best = h;
          pivot = u;
        }
      }
    VertexSet branch;
    for (Vertex v : p)
      if (v == pivot || g_.has_edge(pivot, v)) branch.push_back(v);

    for (Vertex v : branch) {
      auto pos = std::lower_bound(r.begin(), r.end(), v);
      r.insert(pos, v);
      expand(r, outside_closed_nbhd(v, p), outside_closed_nbhd(v, x));
      r.erase(std::lower_bound(r.begin(), r.end(), v));
      p.erase(std::lower_bound(p.begin(), p.end(), v));
      x.insert(std::lower_bound(x.begin(), x.end(), v), v);
    }
  }

  const Graph& g_;
  Visit& visit_;
};

}  // namespace detail

// Calls visit(const VertexSet&) once per maximal independent set of g, in a
// fixed order. The empty graph has exactly one (empty) maximal independent set.
template <typename Visit>
void for_each_maximal_independent_set(const Graph& g, Visit&& visit) {
  detail::MisEnumerator<std::remove_reference_t<Visit>> e(g, visit);
  e.run();
}

inline std::vector<VertexSet> maximal_independent_sets(const Graph& g) {
  std::vector<VertexSet> out;
  for_each_maximal_independent_set(g, [&](const VertexSet& s) { out.push_back(s); });
  return out;
}

// Adds vertices in ascending index order until no vertex can be added.
inline VertexSet greedy_extend_independent(const Graph& g, const VertexSet& start) {
  VertexSet s = normalized(start);
  if (!is_independent(g, s)) throw std::invalid_argument("greedy_extend_independent: set is not independent");
  auto blocked = membership(g, s);
  for (Vertex u : s)
    for (Vertex w : g.neighbors(u)) blocked[static_cast<std::size_t>(w)] = 1;
  for (Vertex v = 0; v < g.n(); ++v) {
    if (blocked[static_cast<std::size_t>(v)]) continue;
    s.push_back(v);
    blocked[static_cast<std::size_t>(v)] = 1;
    for (Vertex w : g.neighbors(v)) blocked[static_cast<std::size_t>(w)] = 1;
  }
  return normalized(s);
}

}  // namespace udom
