#pragma once

// Nice path decomposition of a CSP reduction graph that sweeps the paths in
// lockstep: every bag holds one "current" vertex per path plus, while section
// j is processed, all of H_j. Width n + 3 + 2A * max_j C_j.

#include <string>
#include <variant>

#include "udom/csp_reduction.hpp"
#include "udom/path_decomposition.hpp"

namespace udom {

inline NicePathDecomposition gadget_decomposition(const Graph& g, const CspReductionLayout& lay) {
  if (lay.n < 1 || lay.sections.size() != static_cast<std::size_t>(lay.section_count()) || lay.sections.empty())
    throw StructureMismatch("layout has no sections or an inconsistent section count");
  if (layout_vertex_count(lay) != g.n())
    throw StructureMismatch("graph has " + std::to_string(g.n()) + " vertices, layout describes " +
                            std::to_string(layout_vertex_count(lay)));

  NicePathDecomposition d;
  auto u = [&](int i, long long p) { return lay.path_vertex(i, p); };
  const long long sections = lay.section_count();

  for (int i = 0; i < lay.n; ++i) {
    for (long long p = -3; p <= 0; ++p) d.introduce(u(i, p));
    for (long long p = -3; p <= -1; ++p) d.forget(u(i, p));
  }
  for (long long j = 0; j < sections; ++j) {
    const CspSection& s = lay.sections[static_cast<std::size_t>(j)];
    const Vertex first = s.k_first, last = s.apex;
    for (Vertex x = first; x <= last; ++x) d.introduce(x);
    for (int i = 0; i < lay.n; ++i) {
      for (long long p = 4 * j + 1; p <= 4 * j + 3; ++p) d.introduce(u(i, p));
      for (long long p = 4 * j; p <= 4 * j + 2; ++p) d.forget(u(i, p));
    }
    for (Vertex x = first; x <= last; ++x) d.forget(x);
    if (j + 1 < sections)
      for (int i = 0; i < lay.n; ++i) {
        d.introduce(u(i, 4 * (j + 1)));
        d.forget(u(i, 4 * j + 3));
      }
  }
  const long long end = 4 * sections;
  for (int i = 0; i < lay.n; ++i) {
    for (long long p = end; p <= end + 2; ++p) d.introduce(u(i, p));
    for (long long p = end - 1; p <= end + 2; ++p) d.forget(u(i, p));
  }

  auto check = validate_decomposition(g, d);
  if (auto* f = std::get_if<DecompositionFailure>(&check))
    throw StructureMismatch("graph does not match the layout: " + f->describe());
  return d;
}

inline NicePathDecomposition gadget_decomposition(const CspReductionOutput& out) {
  return gadget_decomposition(out.graph, out.layout);
}

// Width the sweep achieves on a layout.
inline int gadget_width(const CspReductionLayout& lay) {
  std::size_t widest = 0;
  for (const auto& s : lay.sections) widest = std::max(widest, s.accepted);
  return lay.n + 3 + 2 * lay.a * static_cast<int>(widest);
}

}  // namespace udom
