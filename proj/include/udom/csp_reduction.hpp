#pragma once

// q-CSP-6 -> Upper Dominating Set with pathwidth n + O(q 6^q).
//
// Each variable x_i gets a path u_{i,-3} .. u_{i,4Fm+2}; section j consists of
// u_{i,4j} .. u_{i,4j+3} on every path. Section j checks constraint j mod m
// through a gadget H_j: a clique K_j split into one A-block per accepted tuple,
// a clique L_j split the same way, a matching between matching blocks, all
// edges between non-matching K/L blocks, and an apex w_j on all of L_j. A
// tuple giving x_i value c attaches two vertices of section j of path i to
// its K block (see kValueOffsets).
//
// Vertex labeling: paths first (path i occupies a contiguous range, position p
// at offset p + 3), then per section K_j, L_j, w_j.

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "udom/csp.hpp"
#include "udom/domination.hpp"
#include "udom/graph.hpp"
#include "udom/is_reduction.hpp"

namespace udom {

// Offsets within a section attached to a K block when a tuple sets value c;
// the same pair is left out of the dominating set when the variable takes c.
inline constexpr std::array<std::pair<int, int>, 6> kValueOffsets = {{{2, 3}, {3, 0}, {0, 1}, {1, 2}, {1, 3}, {0, 2}}};

struct CspSection {
  std::size_t constraint = 0;  // j mod m
  std::size_t accepted = 0;    // C_{j'}
  Vertex k_first = 0;          // K_j^l = [k_first + l*A, k_first + (l+1)*A)
  Vertex l_first = 0;          // L_j^l likewise
  Vertex apex = 0;

  friend bool operator==(const CspSection&, const CspSection&) = default;
};

struct CspReductionLayout {
  int n = 0, q = 0, m = 0;
  int a = 0;            // A = 4q + 2
  long long f = 0;      // F = (2n+1)(4n+1)
  long long budget = 0; // F m (2n + A) + 2n
  std::vector<CspSection> sections;  // F * m of them

  long long section_count() const { return f * m; }
  long long path_length() const { return 4 * section_count() + 6; }
  // Position p ranges over -3 .. 4Fm+2.
  Vertex path_vertex(int i, long long p) const { return static_cast<Vertex>(i * path_length() + p + 3); }
  Vertex gadget_size(const CspSection& s) const { return static_cast<Vertex>(2 * a * static_cast<long long>(s.accepted) + 1); }

  friend bool operator==(const CspReductionLayout&, const CspReductionLayout&) = default;
};

struct CspReductionOutput {
  Graph graph;
  CspInstance instance;
  CspReductionLayout layout;
};

class StructureMismatch : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

inline CspReductionLayout csp_layout(const CspInstance& csp) {
  CspReductionLayout lay;
  lay.n = csp.n;
  lay.q = csp.q;
  lay.m = static_cast<int>(csp.m());
  lay.a = 4 * csp.q + 2;
  lay.f = static_cast<long long>(2 * csp.n + 1) * (4 * csp.n + 1);
  lay.budget = lay.f * lay.m * (2LL * csp.n + lay.a) + 2LL * csp.n;
  long long next = static_cast<long long>(csp.n) * lay.path_length();
  for (long long j = 0; j < lay.section_count(); ++j) {
    CspSection s;
    s.constraint = static_cast<std::size_t>(j % lay.m);
    s.accepted = csp.constraints[s.constraint].accepted.size();
    const long long block = static_cast<long long>(lay.a) * static_cast<long long>(s.accepted);
    s.k_first = static_cast<Vertex>(next);
    s.l_first = static_cast<Vertex>(next + block);
    s.apex = static_cast<Vertex>(next + 2 * block);
    next += 2 * block + 1;
    lay.sections.push_back(s);
  }
  if (next > INT32_MAX) throw InvalidCsp("reduction too large to label");
  return lay;
}

inline long long layout_vertex_count(const CspReductionLayout& lay) {
  long long total = static_cast<long long>(lay.n) * lay.path_length();
  for (const auto& s : lay.sections) total += lay.gadget_size(s);
  return total;
}

inline CspReductionOutput gen_csp_reduction(const CspInstance& csp) {
  validate_csp(csp);
  if (csp.m() == 0) throw InvalidCsp("need at least one constraint");
  CspReductionOutput out;
  out.instance = csp;
  out.layout = csp_layout(csp);
  const auto& lay = out.layout;
  const int A = lay.a;

  GraphBuilder b(static_cast<Vertex>(layout_vertex_count(lay)));
  for (int i = 0; i < lay.n; ++i)
    for (long long p = -3; p < 4 * lay.section_count() + 2; ++p) b.add_edge(lay.path_vertex(i, p), lay.path_vertex(i, p + 1));

  for (long long j = 0; j < lay.section_count(); ++j) {
    const CspSection& s = lay.sections[static_cast<std::size_t>(j)];
    const CspConstraint& c = csp.constraints[s.constraint];
    const auto width = static_cast<Vertex>(A * static_cast<long long>(s.accepted));
    for (Vertex x = 0; x < width; ++x)
      for (Vertex y = x + 1; y < width; ++y) {
        b.add_edge(s.k_first + x, s.k_first + y);
        b.add_edge(s.l_first + x, s.l_first + y);
      }
    for (std::size_t l = 0; l < s.accepted; ++l) {
      const Vertex kb = s.k_first + static_cast<Vertex>(l) * A;
      for (std::size_t t = 0; t < c.variables.size(); ++t) {
        auto [o1, o2] = kValueOffsets[c.accepted[l][t]];
        for (int off : {o1, o2}) {
          Vertex u = lay.path_vertex(c.variables[t], 4 * j + off);
          for (Vertex x = 0; x < A; ++x) b.add_edge(u, kb + x);
        }
      }
      for (std::size_t l2 = 0; l2 < s.accepted; ++l2) {
        const Vertex lb = s.l_first + static_cast<Vertex>(l2) * A;
        if (l2 == l) {
          for (Vertex x = 0; x < A; ++x) b.add_edge(kb + x, lb + x);
        } else {
          for (Vertex x = 0; x < A; ++x)
            for (Vertex y = 0; y < A; ++y) b.add_edge(kb + x, lb + y);
        }
      }
    }
    for (Vertex x = 0; x < width; ++x) b.add_edge(s.apex, s.l_first + x);
  }
  out.graph = std::move(b).build();
  return out;
}

// Closed-form edge count of the construction.
inline long long expected_csp_edges(const CspReductionLayout& lay) {
  long long e = static_cast<long long>(lay.n) * (lay.path_length() - 1);
  const long long A = lay.a, q = lay.q;
  for (const auto& s : lay.sections) {
    const long long c = static_cast<long long>(s.accepted), w = A * c;
    e += 2 * (w * (w - 1) / 2);        // K_j and L_j cliques
    e += q * c * 2 * A;                // path -> K blocks
    e += c * A + c * (c - 1) * A * A;  // K/L matching and cross blocks
    e += w;                            // apex
  }
  return e;
}

// Builds the dominating set from a satisfying assignment: on every path keep
// the two section vertices not attached to the chosen value, take the L block
// of the accepted tuple matching the assignment, and patch both path ends.
inline UpperDomSolution csp_reduction_witness(const CspReductionOutput& out, const std::vector<int>& assignment) {
  const auto& lay = out.layout;
  const auto& csp = out.instance;
  if (assignment.size() != static_cast<std::size_t>(lay.n))
    throw WitnessError(WitnessError::Kind::BadAssignment, "assignment has " + std::to_string(assignment.size()) +
                                                              " values, expected " + std::to_string(lay.n));
  for (int x : assignment)
    if (x < 0 || x >= kCspDomain) throw WitnessError(WitnessError::Kind::BadAssignment, "value outside 0..5");

  std::vector<std::size_t> chosen(csp.m());
  for (std::size_t j = 0; j < csp.m(); ++j) {
    const auto& c = csp.constraints[j];
    std::size_t matches = 0;
    for (std::size_t l = 0; l < c.accepted.size(); ++l)
      if (satisfies(c, assignment, c.accepted[l])) {
        if (matches++ == 0) chosen[j] = l;
      }
    if (matches == 0)
      throw WitnessError(WitnessError::Kind::AssignmentUnsatisfying,
                         "assignment violates constraint " + std::to_string(j + 1), static_cast<int>(j));
    if (matches > 1)
      throw WitnessError(WitnessError::Kind::AmbiguousAcceptedTuple,
                         "several accepted tuples of constraint " + std::to_string(j + 1) + " match",
                         static_cast<int>(j));
  }

  VertexSet d;
  const long long end = 4 * lay.section_count();
  for (int i = 0; i < lay.n; ++i) {
    const int value = assignment[static_cast<std::size_t>(i)];
    auto [skip1, skip2] = kValueOffsets[static_cast<std::size_t>(value)];
    for (long long p = 0; p < end; ++p) {
      const int off = static_cast<int>(p % 4);
      if (off != skip1 && off != skip2) d.push_back(lay.path_vertex(i, p));
    }
    // Path ends, per value: (prefix positions, suffix offsets past 4Fm).
    static constexpr std::array<std::array<int, 3>, 6> kPrefix = {
        {{-3, 0, 0}, {-2, 0, 0}, {-2, -1, 0}, {-3, 0, 0}, {-3, 0, 0}, {-2, 0, 0}}};
    static constexpr std::array<std::array<int, 3>, 6> kSuffix = {
        {{0, 1, -1}, {1, -1, -1}, {2, -1, -1}, {2, -1, -1}, {1, -1, -1}, {2, -1, -1}}};
    for (int p : kPrefix[static_cast<std::size_t>(value)])
      if (p < 0) d.push_back(lay.path_vertex(i, p));
    for (int s : kSuffix[static_cast<std::size_t>(value)])
      if (s >= 0) d.push_back(lay.path_vertex(i, end + s));
  }
  for (const auto& s : lay.sections) {
    const Vertex lb = s.l_first + static_cast<Vertex>(chosen[s.constraint]) * lay.a;
    for (Vertex x = 0; x < lay.a; ++x) d.push_back(lb + x);
  }
  auto res = check_minimal(out.graph, normalized(std::move(d)));
  if (auto* sol = std::get_if<UpperDomSolution>(&res)) return std::move(*sol);
  throw std::logic_error("witness construction failed: " + std::get<MinimalityFailure>(res).describe());
}

// ---------------------------------------------------------------------------
// Metadata sidecar (1-indexed vertex ids).

inline nlohmann::json metadata_json(const CspReductionOutput& out) {
  const auto& lay = out.layout;
  nlohmann::json paths = nlohmann::json::array();
  for (int i = 0; i < lay.n; ++i) paths.push_back(lay.path_vertex(i, -3) + 1);
  nlohmann::json sections = nlohmann::json::array();
  for (const auto& s : lay.sections)
    sections.push_back({{"constraint", s.constraint + 1},
                        {"accepted", s.accepted},
                        {"k_first", s.k_first + 1},
                        {"l_first", s.l_first + 1},
                        {"apex", s.apex + 1}});
  return {{"kind", "csp"},
          {"n", lay.n},
          {"q", lay.q},
          {"m", lay.m},
          {"A", lay.a},
          {"F", lay.f},
          {"budget", lay.budget},
          {"vertices", out.graph.n()},
          {"edges", out.graph.size()},
          {"path_length", lay.path_length()},
          {"paths", paths},
          {"sections", sections}};
}

inline CspReductionLayout layout_from_json(const nlohmann::json& j) {
  try {
    if (j.at("kind").get<std::string>() != "csp") throw StructureMismatch("metadata is not for a CSP reduction");
    CspReductionLayout lay;
    lay.n = j.at("n").get<int>();
    lay.q = j.at("q").get<int>();
    lay.m = j.at("m").get<int>();
    lay.a = j.at("A").get<int>();
    lay.f = j.at("F").get<long long>();
    lay.budget = j.at("budget").get<long long>();
    for (const auto& s : j.at("sections"))
      lay.sections.push_back({s.at("constraint").get<std::size_t>() - 1, s.at("accepted").get<std::size_t>(),
                              s.at("k_first").get<Vertex>() - 1, s.at("l_first").get<Vertex>() - 1,
                              s.at("apex").get<Vertex>() - 1});
    const auto& paths = j.at("paths");
    for (int i = 0; i < lay.n && i < static_cast<int>(paths.size()); ++i)
      if (paths[static_cast<std::size_t>(i)].get<Vertex>() - 1 != lay.path_vertex(i, -3))
        throw StructureMismatch("path " + std::to_string(i + 1) + " does not start where expected");
    if (static_cast<int>(paths.size()) != lay.n) throw StructureMismatch("path list length differs from n");
    return lay;
  } catch (const nlohmann::json::exception& e) {
    throw StructureMismatch(std::string("malformed metadata: ") + e.what());
  }
}

}  // namespace udom
