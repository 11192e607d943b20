#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "udom/graph.hpp"

namespace udom {

struct DecompEvent {
  enum class Kind : std::uint8_t { Introduce, Forget };
  Kind kind;
  Vertex vertex;

  static DecompEvent introduce(Vertex v) { return {Kind::Introduce, v}; }
  static DecompEvent forget(Vertex v) { return {Kind::Forget, v}; }
  friend bool operator==(const DecompEvent&, const DecompEvent&) = default;
};

// A nice path decomposition stored as its event sequence. The bag after
// event t is the set of vertices introduced but not yet forgotten.
struct NicePathDecomposition {
  std::vector<DecompEvent> events;

  void introduce(Vertex v) { events.push_back(DecompEvent::introduce(v)); }
  void forget(Vertex v) { events.push_back(DecompEvent::forget(v)); }

  // bags()[0] is the empty starting bag; bags()[t+1] follows events[t].
  std::vector<VertexSet> bags() const {
    std::vector<VertexSet> out{VertexSet{}};
    VertexSet cur;
    for (const auto& e : events) {
      auto pos = std::lower_bound(cur.begin(), cur.end(), e.vertex);
      if (e.kind == DecompEvent::Kind::Introduce) {
        cur.insert(pos, e.vertex);
      } else if (pos != cur.end() && *pos == e.vertex) {
        cur.erase(pos);
      }
      out.push_back(cur);
    }
    return out;
  }

  friend bool operator==(const NicePathDecomposition&, const NicePathDecomposition&) = default;
};

struct DecompositionFailure {
  enum class Kind {
    VertexOutOfRange,
    DoubleIntroduce,
    ForgetBeforeIntroduce,
    DoubleForget,
    MissingVertex,
    EdgeUncovered,
    NonEmptyEnd,
  };
  Kind kind;
  std::size_t position = 0;  // event index, where meaningful
  Vertex u = -1;
  Vertex v = -1;

  std::string describe() const {
    auto one = [](Vertex x) { return std::to_string(x + 1); };
    switch (kind) {
      case Kind::VertexOutOfRange: return "VertexOutOfRange(" + one(u) + ") at event " + std::to_string(position + 1);
      case Kind::DoubleIntroduce: return "DoubleIntroduce(" + one(u) + ") at event " + std::to_string(position + 1);
      case Kind::ForgetBeforeIntroduce:
        return "ForgetBeforeIntroduce(" + one(u) + ") at event " + std::to_string(position + 1);
      case Kind::DoubleForget: return "DoubleForget(" + one(u) + ") at event " + std::to_string(position + 1);
      case Kind::MissingVertex: return "MissingVertex(" + one(u) + ")";
      case Kind::EdgeUncovered: return "EdgeUncovered(" + one(u) + "," + one(v) + ")";
      case Kind::NonEmptyEnd: return "NonEmptyEnd(" + one(u) + ")";
    }
    return "?";
  }
};

using DecompositionCheck = std::variant<int, DecompositionFailure>;

// Width when valid for g, else the first violated invariant. The width of the
// empty decomposition (n = 0) is reported as 0.
inline DecompositionCheck validate_decomposition(const Graph& g, const NicePathDecomposition& d) {
  using K = DecompositionFailure::Kind;
  const auto n = static_cast<std::size_t>(g.n());
  constexpr std::size_t kNone = SIZE_MAX;
  std::vector<std::size_t> intro(n, kNone), gone(n, kNone);
  std::size_t bag = 0, widest = 0;
  for (std::size_t t = 0; t < d.events.size(); ++t) {
    const auto& e = d.events[t];
    if (e.vertex < 0 || static_cast<std::size_t>(e.vertex) >= n)
      return DecompositionFailure{K::VertexOutOfRange, t, e.vertex};
    auto v = static_cast<std::size_t>(e.vertex);
    if (e.kind == DecompEvent::Kind::Introduce) {
      if (intro[v] != kNone) return DecompositionFailure{K::DoubleIntroduce, t, e.vertex};
      intro[v] = t;
      widest = std::max(widest, ++bag);
    } else {
      if (intro[v] == kNone) return DecompositionFailure{K::ForgetBeforeIntroduce, t, e.vertex};
      if (gone[v] != kNone) return DecompositionFailure{K::DoubleForget, t, e.vertex};
      gone[v] = t;
      --bag;
    }
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (intro[v] == kNone) return DecompositionFailure{K::MissingVertex, 0, static_cast<Vertex>(v)};
    if (gone[v] == kNone)
      return DecompositionFailure{K::NonEmptyEnd, d.events.size(), static_cast<Vertex>(v)};
  }
  // Each vertex occupies the contiguous bag range [intro, gone); two ranges
  // share a bag iff they overlap.
  for (auto [a, b] : g.edges()) {
    auto ua = static_cast<std::size_t>(a), ub = static_cast<std::size_t>(b);
    if (std::max(intro[ua], intro[ub]) >= std::min(gone[ua], gone[ub]))
      return DecompositionFailure{K::EdgeUncovered, 0, a, b};
  }
  return widest == 0 ? 0 : static_cast<int>(widest) - 1;
}

inline int decomposition_width(const NicePathDecomposition& d) {
  int bag = 0, widest = 0;
  for (const auto& e : d.events) {
    bag += e.kind == DecompEvent::Kind::Introduce ? 1 : -1;
    widest = std::max(widest, bag);
  }
  return widest == 0 ? 0 : widest - 1;
}

inline NicePathDecomposition trivial_decomposition(const Graph& g) {
  NicePathDecomposition d;
  for (Vertex v = 0; v < g.n(); ++v) d.introduce(v);
  for (Vertex v = 0; v < g.n(); ++v) d.forget(v);
  return d;
}

// Greedy ordering: repeatedly introduce the vertex that leaves the smallest
// active bag once every vertex whose neighborhood is fully introduced has been
// forgotten. Ties go to the lowest index; forgets happen in index order.
inline NicePathDecomposition heuristic_decomposition(const Graph& g) {
  const auto n = static_cast<std::size_t>(g.n());
  NicePathDecomposition d;
  std::vector<char> placed(n, 0), active(n, 0);
  // Neighbors of v not yet introduced.
  std::vector<std::size_t> pending(n);
  for (std::size_t v = 0; v < n; ++v) pending[v] = g.degree(static_cast<Vertex>(v));
  std::size_t active_count = 0;

  for (std::size_t step = 0; step < n; ++step) {
    Vertex best = -1;
    long best_size = 0;
    for (Vertex v = 0; v < g.n(); ++v) {
      if (placed[static_cast<std::size_t>(v)]) continue;
      long sz = static_cast<long>(active_count) + 1;
      if (pending[static_cast<std::size_t>(v)] == 0) --sz;
      for (Vertex w : g.neighbors(v))
        if (active[static_cast<std::size_t>(w)] && pending[static_cast<std::size_t>(w)] == 1) --sz;
      if (best < 0 || sz < best_size) {
        best = v;
        best_size = sz;
      }
    }
    auto b = static_cast<std::size_t>(best);
    placed[b] = 1;
    active[b] = 1;
    ++active_count;
    d.introduce(best);
    VertexSet done;
    for (Vertex w : g.neighbors(best)) {
      auto wi = static_cast<std::size_t>(w);
      --pending[wi];
      if (active[wi] && pending[wi] == 0) done.push_back(w);
    }
    if (pending[b] == 0) done.push_back(best);
    std::sort(done.begin(), done.end());
    for (Vertex w : done) {
      active[static_cast<std::size_t>(w)] = 0;
      --active_count;
      d.forget(w);
    }
  }
  return d;
}

// ---------------------------------------------------------------------------
// Text format: one event per line, `i <v>` or `f <v>` with 1-indexed v.

inline NicePathDecomposition parse_decomposition(std::istream& in) {
  NicePathDecomposition d;
  for_each_record(in, [&](std::string_view tag, const std::vector<long long>& a, std::size_t ln) {
    if ((tag != "i" && tag != "f") || a.size() != 1) throw ParseError(ParseErrorKind::MalformedLine, ln);
    if (a[0] < 1 || a[0] > INT32_MAX) throw ParseError(ParseErrorKind::VertexOutOfRange, ln);
    auto v = static_cast<Vertex>(a[0] - 1);
    if (tag == "i")
      d.introduce(v);
    else
      d.forget(v);
  });
  return d;
}

inline NicePathDecomposition parse_decomposition(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_decomposition(in);
}

inline std::string serialize_decomposition(const NicePathDecomposition& d) {
  std::string out;
  for (const auto& e : d.events) {
    out += e.kind == DecompEvent::Kind::Introduce ? "i " : "f ";
    out += std::to_string(e.vertex + 1);
    out += '\n';
  }
  return out;
}

}  // namespace udom
