#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "udom/graph.hpp"

namespace udom {

// A minimal dominating set D = S ∪ I. Vertices of I are their own private
// vertex (no neighbor in D); each vertex of S is paired with one private
// neighbor outside D.
struct UpperDomSolution {
  VertexSet members;
  VertexSet independent;
  VertexSet supported;
  std::map<Vertex, Vertex> witness;  // supported vertex -> private neighbor

  std::size_t size() const { return members.size(); }

  friend bool operator==(const UpperDomSolution&, const UpperDomSolution&) = default;
};

struct MinimalityFailure {
  enum class Kind { NotDominating, NoPrivate };
  Kind kind;
  Vertex vertex;

  std::string describe() const {
    return std::string(kind == Kind::NotDominating ? "NotDominating" : "NoPrivate") +
           " vertex=" + std::to_string(vertex + 1);
  }
  friend bool operator==(const MinimalityFailure&, const MinimalityFailure&) = default;
};

using MinimalityResult = std::variant<UpperDomSolution, MinimalityFailure>;

inline VertexSet normalized(VertexSet s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

inline std::vector<char> membership(const Graph& g, const VertexSet& d) {
  std::vector<char> in(static_cast<std::size_t>(g.n()), 0);
  for (Vertex v : d) in[static_cast<std::size_t>(v)] = 1;
  return in;
}

// Number of members of d in the closed neighborhood of each vertex.
inline std::vector<int> domination_counts(const Graph& g, const VertexSet& d) {
  std::vector<int> cnt(static_cast<std::size_t>(g.n()), 0);
  for (Vertex u : d) {
    ++cnt[static_cast<std::size_t>(u)];
    for (Vertex w : g.neighbors(u)) ++cnt[static_cast<std::size_t>(w)];
  }
  return cnt;
}

inline bool is_dominating(const Graph& g, const VertexSet& d) {
  auto cnt = domination_counts(g, d);
  return std::none_of(cnt.begin(), cnt.end(), [](int c) { return c == 0; });
}

inline bool is_independent(const Graph& g, const VertexSet& s) {
  auto in = membership(g, s);
  for (Vertex u : s)
    for (Vertex w : g.neighbors(u))
      if (in[static_cast<std::size_t>(w)]) return false;
  return true;
}

// Decides whether d is a minimal dominating set. On success returns the S/I
// split with the lowest-index private neighbor as witness; otherwise names the
// lowest-index offending vertex (undominated vertices are reported first).
inline MinimalityResult check_minimal(const Graph& g, const VertexSet& d_in) {
  const VertexSet d = normalized(d_in);
  const auto in = membership(g, d);
  const auto cnt = domination_counts(g, d);
  for (Vertex v = 0; v < g.n(); ++v)
    if (cnt[static_cast<std::size_t>(v)] == 0)
      return MinimalityFailure{MinimalityFailure::Kind::NotDominating, v};

  UpperDomSolution sol;
  sol.members = d;
  for (Vertex u : d) {
    if (cnt[static_cast<std::size_t>(u)] == 1) {
      sol.independent.push_back(u);
      continue;
    }
    std::optional<Vertex> priv;
    for (Vertex w : g.neighbors(u))
      if (!in[static_cast<std::size_t>(w)] && cnt[static_cast<std::size_t>(w)] == 1) {
        priv = w;
        break;
      }
    if (!priv) return MinimalityFailure{MinimalityFailure::Kind::NoPrivate, u};
    sol.supported.push_back(u);
    sol.witness.emplace(u, *priv);
  }
  return sol;
}

inline bool is_minimal_dominating(const Graph& g, const VertexSet& d) {
  return std::holds_alternative<UpperDomSolution>(check_minimal(g, d));
}

// Checks every structural invariant of a solution, including its witness map
// (which need not be the lowest-index one). Returns an error message or
// nothing.
inline std::optional<std::string> validate_solution(const Graph& g, const UpperDomSolution& s) {
  if (s.members != normalized(s.members)) return "members not sorted/unique";
  for (Vertex v : s.members)
    if (v < 0 || v >= g.n()) return "member out of range";
  VertexSet joined;
  std::merge(s.independent.begin(), s.independent.end(), s.supported.begin(), s.supported.end(),
             std::back_inserter(joined));
  if (joined != s.members) return "S and I do not partition D";
  if (s.witness.size() != s.supported.size()) return "witness map does not match S";
  const auto in = membership(g, s.members);
  const auto cnt = domination_counts(g, s.members);
  for (Vertex v = 0; v < g.n(); ++v)
    if (cnt[static_cast<std::size_t>(v)] == 0) return "vertex " + std::to_string(v) + " undominated";
  for (Vertex u : s.independent)
    if (cnt[static_cast<std::size_t>(u)] != 1) return "I-vertex " + std::to_string(u) + " has a neighbor in D";
  for (Vertex u : s.supported) {
    auto it = s.witness.find(u);
    if (it == s.witness.end()) return "S-vertex " + std::to_string(u) + " lacks a witness";
    Vertex p = it->second;
    if (p < 0 || p >= g.n() || !g.has_edge(u, p) || in[static_cast<std::size_t>(p)] ||
        cnt[static_cast<std::size_t>(p)] != 1)
      return "witness of " + std::to_string(u) + " is not a private neighbor";
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// JSON form. Vertices are 1-indexed; nlohmann's default object keeps keys
// sorted, so the dump is byte-stable.

inline nlohmann::json to_json(const UpperDomSolution& s) {
  auto one_based = [](const VertexSet& vs) {
    nlohmann::json a = nlohmann::json::array();
    for (Vertex v : vs) a.push_back(v + 1);
    return a;
  };
  nlohmann::json w = nlohmann::json::object();
  for (auto [u, p] : s.witness) w[std::to_string(u + 1)] = p + 1;
  return {{"size", s.size()},
          {"set", one_based(s.members)},
          {"independent", one_based(s.independent)},
          {"supported", one_based(s.supported)},
          {"witness", w}};
}

inline std::string solution_json_text(const UpperDomSolution& s) { return to_json(s).dump(2) + "\n"; }

// Only the `set` field is needed to re-check a solution.
inline VertexSet vertex_set_from_json(const nlohmann::json& j) {
  VertexSet out;
  for (const auto& v : j.at("set")) out.push_back(v.get<Vertex>() - 1);
  return normalized(out);
}

}  // namespace udom
