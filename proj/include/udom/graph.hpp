#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace udom {

using Vertex = std::int32_t;
using VertexSet = std::vector<Vertex>;  // always sorted ascending, no repeats
using Edge = std::pair<Vertex, Vertex>;

// Simple undirected graph on vertices 0..n-1 with sorted adjacency lists.
// Immutable once built; use GraphBuilder to construct one.
class Graph {
public:
  Graph() = default;

  std::size_t order() const { return adj_.size(); }
  std::size_t size() const { return edge_count_; }
  Vertex n() const { return static_cast<Vertex>(adj_.size()); }

  const VertexSet& neighbors(Vertex v) const { return adj_[static_cast<std::size_t>(v)]; }
  std::size_t degree(Vertex v) const { return neighbors(v).size(); }

  bool has_edge(Vertex u, Vertex v) const {
    const auto& nu = neighbors(u);
    return std::binary_search(nu.begin(), nu.end(), v);
  }

  // Edges with u < v, sorted lexicographically.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count_);
    for (Vertex u = 0; u < n(); ++u)
      for (Vertex v : neighbors(u))
        if (u < v) out.emplace_back(u, v);
    return out;
  }

  friend bool operator==(const Graph&, const Graph&) = default;

private:
  friend class GraphBuilder;
  std::vector<VertexSet> adj_;
  std::size_t edge_count_ = 0;
};

class GraphError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class GraphBuilder {
public:
  explicit GraphBuilder(Vertex n = 0) : n_(n) {
    if (n < 0) throw GraphError("negative vertex count");
  }

  Vertex add_vertex() { return n_++; }
  Vertex add_vertices(Vertex count) {
    Vertex first = n_;
    n_ += count;
    return first;
  }
  Vertex vertex_count() const { return n_; }

  void add_edge(Vertex u, Vertex v) {
    if (u < 0 || v < 0 || u >= n_ || v >= n_)
      throw GraphError("edge endpoint out of range");
    if (u == v) throw GraphError("self-loop at vertex " + std::to_string(u));
    if (u > v) std::swap(u, v);
    edges_.emplace_back(u, v);
  }

  // Throws GraphError on duplicate edges.
  Graph build() && {
    std::sort(edges_.begin(), edges_.end());
    auto dup = std::adjacent_find(edges_.begin(), edges_.end());
    if (dup != edges_.end())
      throw GraphError("duplicate edge " + std::to_string(dup->first) + "-" +
                       std::to_string(dup->second));
    Graph g;
    g.adj_.assign(static_cast<std::size_t>(n_), {});
    std::vector<std::size_t> deg(static_cast<std::size_t>(n_), 0);
    for (auto [u, v] : edges_) {
      ++deg[static_cast<std::size_t>(u)];
      ++deg[static_cast<std::size_t>(v)];
    }
    for (std::size_t v = 0; v < deg.size(); ++v) g.adj_[v].reserve(deg[v]);
    for (auto [u, v] : edges_) {
      g.adj_[static_cast<std::size_t>(u)].push_back(v);
      g.adj_[static_cast<std::size_t>(v)].push_back(u);
    }
    for (auto& nb : g.adj_) std::sort(nb.begin(), nb.end());
    g.edge_count_ = edges_.size();
    edges_.clear();
    return g;
  }

private:
  Vertex n_;
  std::vector<Edge> edges_;
};

inline Graph make_graph(Vertex n, const std::vector<Edge>& edges) {
  GraphBuilder b(n);
  for (auto [u, v] : edges) b.add_edge(u, v);
  return std::move(b).build();
}

// A few named families used throughout tests and benchmarks.
inline Graph path_graph(Vertex n) {
  GraphBuilder b(n);
  for (Vertex v = 0; v + 1 < n; ++v) b.add_edge(v, v + 1);
  return std::move(b).build();
}

inline Graph cycle_graph(Vertex n) {
  GraphBuilder b(n);
  for (Vertex v = 0; v < n; ++v) b.add_edge(v, (v + 1) % n);
  return std::move(b).build();
}

inline Graph complete_graph(Vertex n) {
  GraphBuilder b(n);
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) b.add_edge(u, v);
  return std::move(b).build();
}

inline Graph star_graph(Vertex leaves) {
  GraphBuilder b(leaves + 1);
  for (Vertex v = 1; v <= leaves; ++v) b.add_edge(0, v);
  return std::move(b).build();
}

// Induced subgraph on `keep` (sorted); vertex i of the result is keep[i].
inline Graph induced_subgraph(const Graph& g, const VertexSet& keep) {
  std::vector<Vertex> index(static_cast<std::size_t>(g.n()), -1);
  for (std::size_t i = 0; i < keep.size(); ++i)
    index[static_cast<std::size_t>(keep[i])] = static_cast<Vertex>(i);
  GraphBuilder b(static_cast<Vertex>(keep.size()));
  for (std::size_t i = 0; i < keep.size(); ++i)
    for (Vertex w : g.neighbors(keep[i])) {
      Vertex j = index[static_cast<std::size_t>(w)];
      if (j > static_cast<Vertex>(i)) b.add_edge(static_cast<Vertex>(i), j);
    }
  return std::move(b).build();
}

// ---------------------------------------------------------------------------
// Text format: `p <n> <m>` header, then m lines `e <u> <v>` (1-indexed).
// Lines starting with `#` are comments; blank lines are ignored.

enum class ParseErrorKind {
  MalformedHeader,
  MalformedLine,
  VertexOutOfRange,
  SelfLoop,
  DuplicateEdge,
  EdgeCountMismatch,
};

inline std::string_view to_string(ParseErrorKind k) {
  switch (k) {
    case ParseErrorKind::MalformedHeader: return "malformed header";
    case ParseErrorKind::MalformedLine: return "malformed line";
    case ParseErrorKind::VertexOutOfRange: return "vertex index out of range";
    case ParseErrorKind::SelfLoop: return "self-loop";
    case ParseErrorKind::DuplicateEdge: return "duplicate edge";
    case ParseErrorKind::EdgeCountMismatch: return "edge count mismatch";
  }
  return "?";
}

class ParseError : public std::runtime_error {
public:
  ParseError(ParseErrorKind kind, std::size_t line, const std::string& detail = {})
      : std::runtime_error(std::string(to_string(kind)) + " at line " + std::to_string(line) +
                           (detail.empty() ? "" : ": " + detail)),
        kind_(kind),
        line_(line) {}

  ParseErrorKind kind() const { return kind_; }
  std::size_t line() const { return line_; }

private:
  ParseErrorKind kind_;
  std::size_t line_;
};

namespace detail {

inline bool is_skippable(std::string_view line) {
  auto pos = line.find_first_not_of(" \t\r");
  return pos == std::string_view::npos || line[pos] == '#';
}

// Reads all whitespace-separated integers after a leading tag; false on junk.
inline bool read_ints(std::istringstream& in, std::vector<long long>& out) {
  out.clear();
  long long x;
  while (in >> x) out.push_back(x);
  return in.eof();
}

}  // namespace detail

// Line-oriented reader shared by the graph-like formats: calls `on_line(tag,
// args, line_no)` for every non-comment line. Throws ParseError on non-integer
// arguments (MalformedHeader for the first record when it is a header).
template <typename F>
void for_each_record(std::istream& in, F&& on_line, bool first_is_header = false) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<long long> args;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::is_skippable(line)) continue;
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (!detail::read_ints(ls, args))
      throw ParseError(first_is_header ? ParseErrorKind::MalformedHeader : ParseErrorKind::MalformedLine, line_no,
                       "expected integers");
    first_is_header = false;
    on_line(std::string_view(tag), std::as_const(args), line_no);
  }
}

inline Graph parse_graph(std::istream& in) {
  bool have_header = false;
  long long n = 0, m = 0;
  std::vector<std::pair<Edge, std::size_t>> edges;  // edge, source line
  std::size_t last_line = 0;
  for_each_record(in, [&](std::string_view tag, const std::vector<long long>& a, std::size_t ln) {
    last_line = ln;
    if (!have_header) {
      if (tag != "p" || a.size() != 2 || a[0] < 0 || a[1] < 0)
        throw ParseError(ParseErrorKind::MalformedHeader, ln);
      n = a[0];
      m = a[1];
      have_header = true;
      return;
    }
    if (tag != "e" || a.size() != 2) throw ParseError(ParseErrorKind::MalformedLine, ln);
    if (a[0] < 1 || a[0] > n || a[1] < 1 || a[1] > n)
      throw ParseError(ParseErrorKind::VertexOutOfRange, ln);
    if (a[0] == a[1]) throw ParseError(ParseErrorKind::SelfLoop, ln);
    Vertex u = static_cast<Vertex>(std::min(a[0], a[1]) - 1);
    Vertex v = static_cast<Vertex>(std::max(a[0], a[1]) - 1);
    edges.push_back({{u, v}, ln});
  }, /*first_is_header=*/true);
  if (!have_header) throw ParseError(ParseErrorKind::MalformedHeader, last_line + 1, "missing header");
  if (static_cast<long long>(edges.size()) != m)
    throw ParseError(ParseErrorKind::EdgeCountMismatch, last_line,
                     "declared " + std::to_string(m) + ", found " + std::to_string(edges.size()));

  // Sorting by (edge, line) puts the earliest occurrence first; the error names
  // the second occurrence.
  auto sorted = edges;
  std::sort(sorted.begin(), sorted.end());
  std::size_t dup_line = 0;
  for (std::size_t i = 1; i < sorted.size(); ++i)
    if (sorted[i].first == sorted[i - 1].first && (dup_line == 0 || sorted[i].second < dup_line))
      dup_line = sorted[i].second;
  if (dup_line != 0) throw ParseError(ParseErrorKind::DuplicateEdge, dup_line);

  GraphBuilder b(static_cast<Vertex>(n));
  for (const auto& [e, ln] : edges) b.add_edge(e.first, e.second);
  return std::move(b).build();
}

inline Graph parse_graph(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_graph(in);
}

inline std::string serialize_graph(const Graph& g) {
  std::string out = "p " + std::to_string(g.n()) + " " + std::to_string(g.size()) + "\n";
  for (auto [u, v] : g.edges())
    out += "e " + std::to_string(u + 1) + " " + std::to_string(v + 1) + "\n";
  return out;
}

}  // namespace udom
