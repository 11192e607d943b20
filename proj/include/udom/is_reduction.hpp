#pragma once

// Independent Set (one vertex per clique) -> Upper Dominating Set.
//
// Each source vertex u becomes an independent block Z_u of `a` vertices; a
// source edge uv joins Z_u and Z_v completely; each clique V_i gets an apex z_i
// adjacent to every block of the clique. Budget a*k.
//
// Target labeling: Z_u = [u*a, u*a + a), then z_i = n*a + i.

#include <istream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "udom/domination.hpp"
#include "udom/graph.hpp"

namespace udom {

struct CliquePartitionedIsInstance {
  Graph graph;
  std::vector<VertexSet> cliques;  // k disjoint cliques covering V

  std::size_t k() const { return cliques.size(); }
};

class InvalidCliquePartition : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

class WitnessError : public std::invalid_argument {
public:
  enum class Kind { NotIndependent, WrongSize, AssignmentUnsatisfying, AmbiguousAcceptedTuple, BadAssignment };
  WitnessError(Kind kind, const std::string& what, int index = -1)
      : std::invalid_argument(what), kind_(kind), index_(index) {}
  Kind kind() const { return kind_; }
  int index() const { return index_; }  // constraint index where meaningful

private:
  Kind kind_;
  int index_;
};

inline void validate_clique_partition(const CliquePartitionedIsInstance& inst) {
  const Graph& g = inst.graph;
  std::vector<int> owner(static_cast<std::size_t>(g.n()), -1);
  for (std::size_t i = 0; i < inst.cliques.size(); ++i) {
    const auto& c = inst.cliques[i];
    if (c.empty()) throw InvalidCliquePartition("clique " + std::to_string(i + 1) + " is empty");
    for (Vertex v : c) {
      if (v < 0 || v >= g.n()) throw InvalidCliquePartition("clique vertex out of range");
      if (owner[static_cast<std::size_t>(v)] >= 0)
        throw InvalidCliquePartition("vertex " + std::to_string(v + 1) + " is in two cliques");
      owner[static_cast<std::size_t>(v)] = static_cast<int>(i);
    }
    for (std::size_t x = 0; x < c.size(); ++x)
      for (std::size_t y = x + 1; y < c.size(); ++y)
        if (!g.has_edge(c[x], c[y]))
          throw InvalidCliquePartition("clique " + std::to_string(i + 1) + " misses edge " +
                                       std::to_string(c[x] + 1) + "-" + std::to_string(c[y] + 1));
  }
  for (Vertex v = 0; v < g.n(); ++v)
    if (owner[static_cast<std::size_t>(v)] < 0)
      throw InvalidCliquePartition("vertex " + std::to_string(v + 1) + " is in no clique");
}

struct IsReductionOutput {
  Graph graph;
  long long budget = 0;
  int a = 5;
  std::size_t source_n = 0;
  std::vector<VertexSet> cliques;  // copied from the source, for witness checks
  std::vector<Edge> source_edges;

  Vertex block_start(Vertex u) const { return u * a; }
  Vertex apex(std::size_t clique) const { return static_cast<Vertex>(source_n) * a + static_cast<Vertex>(clique); }
};

inline IsReductionOutput gen_is_reduction(const CliquePartitionedIsInstance& inst, int a = 5) {
  if (a < 2) throw std::invalid_argument("block size a must be at least 2");
  validate_clique_partition(inst);
  const Graph& g = inst.graph;
  IsReductionOutput out;
  out.a = a;
  out.source_n = static_cast<std::size_t>(g.n());
  out.cliques = inst.cliques;
  out.source_edges = g.edges();
  out.budget = static_cast<long long>(a) * static_cast<long long>(inst.k());

  GraphBuilder b(g.n() * a + static_cast<Vertex>(inst.k()));
  for (auto [u, v] : out.source_edges)
    for (Vertex x = 0; x < a; ++x)
      for (Vertex y = 0; y < a; ++y) b.add_edge(out.block_start(u) + x, out.block_start(v) + y);
  for (std::size_t i = 0; i < inst.k(); ++i)
    for (Vertex u : inst.cliques[i])
      for (Vertex x = 0; x < a; ++x) b.add_edge(out.apex(i), out.block_start(u) + x);
  out.graph = std::move(b).build();
  return out;
}

// The blocks of an independent set meeting every clique once form an
// independent (hence minimal dominating) set of size a*k.
inline UpperDomSolution is_reduction_witness(const IsReductionOutput& out, const VertexSet& independent_set) {
  VertexSet is = normalized(independent_set);
  Graph source = make_graph(static_cast<Vertex>(out.source_n), out.source_edges);
  for (Vertex v : is)
    if (v < 0 || v >= source.n()) throw WitnessError(WitnessError::Kind::WrongSize, "vertex out of range");
  if (!is_independent(source, is))
    throw WitnessError(WitnessError::Kind::NotIndependent, "certificate is not an independent set");
  if (is.size() != out.cliques.size())
    throw WitnessError(WitnessError::Kind::WrongSize, "certificate has " + std::to_string(is.size()) +
                                                          " vertices, expected " + std::to_string(out.cliques.size()));
  UpperDomSolution sol;
  for (Vertex u : is)
    for (Vertex x = 0; x < out.a; ++x) sol.members.push_back(out.block_start(u) + x);
  sol.independent = sol.members;
  return sol;
}

inline nlohmann::json metadata_json(const IsReductionOutput& out) {
  nlohmann::json blocks = nlohmann::json::array();
  for (std::size_t u = 0; u < out.source_n; ++u)
    blocks.push_back({{"first", out.block_start(static_cast<Vertex>(u)) + 1}, {"size", out.a}});
  nlohmann::json apexes = nlohmann::json::array();
  for (std::size_t i = 0; i < out.cliques.size(); ++i) apexes.push_back(out.apex(i) + 1);
  return {{"kind", "is"},
          {"a", out.a},
          {"k", out.cliques.size()},
          {"budget", out.budget},
          {"vertices", out.graph.n()},
          {"edges", out.graph.size()},
          {"blocks", blocks},
          {"apexes", apexes}};
}

// Source format: the graph text format plus one `c <v1> ... <vs>` line per
// clique (1-indexed).
inline CliquePartitionedIsInstance parse_is_source(std::istream& in) {
  std::ostringstream graph_part;
  std::vector<VertexSet> cliques;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag) || tag[0] != 'c' || tag.size() != 1) {
      graph_part << line << '\n';
      continue;
    }
    VertexSet c;
    long long v;
    while (ls >> v) {
      if (v < 1 || v > INT32_MAX) throw ParseError(ParseErrorKind::VertexOutOfRange, line_no);
      c.push_back(static_cast<Vertex>(v - 1));
    }
    if (!ls.eof() || c.empty()) throw ParseError(ParseErrorKind::MalformedLine, line_no);
    cliques.push_back(normalized(c));
    graph_part << "# clique\n";  // keeps line numbers aligned for graph errors
  }
  std::istringstream gin(graph_part.str());
  CliquePartitionedIsInstance inst{parse_graph(gin), std::move(cliques)};
  for (const auto& c : inst.cliques)
    for (Vertex v : c)
      if (v >= inst.graph.n()) throw InvalidCliquePartition("clique vertex out of range");
  return inst;
}

inline std::string serialize_is_source(const CliquePartitionedIsInstance& inst) {
  std::string out = serialize_graph(inst.graph);
  for (const auto& c : inst.cliques) {
    out += "c";
    for (Vertex v : c) out += " " + std::to_string(v + 1);
    out += "\n";
  }
  return out;
}

}  // namespace udom
