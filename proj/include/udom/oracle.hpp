#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "udom/domination.hpp"
#include "udom/graph.hpp"

namespace udom {

inline constexpr int kDefaultOracleLimit = 20;
inline constexpr int kMaxOracleLimit = 40;

class OracleLimitExceeded : public std::runtime_error {
public:
  OracleLimitExceeded(int n, int limit)
      : std::runtime_error("oracle limit exceeded: n=" + std::to_string(n) +
                           " > limit=" + std::to_string(limit)),
        n_(n),
        limit_(limit) {}
  int n() const { return n_; }
  int limit() const { return limit_; }

private:
  int n_, limit_;
};

namespace detail {

// For equal-size sets, the lexicographically smaller sorted list is the one
// holding the smallest element of the symmetric difference.
inline bool lex_less_same_size(std::uint64_t a, std::uint64_t b) {
  std::uint64_t diff = a ^ b;
  return diff != 0 && (a & diff & (~diff + 1)) != 0;
}

}  // namespace detail

// Exhaustive search over all 2^n subsets. Returns a maximum minimal dominating
// set, lexicographically smallest among the maximum ones.
inline UpperDomSolution brute_force_uds(const Graph& g, int limit = kDefaultOracleLimit) {
  const int n = g.n();
  if (limit > kMaxOracleLimit) limit = kMaxOracleLimit;
  if (n > limit) throw OracleLimitExceeded(n, limit);

  std::vector<std::uint64_t> closed(static_cast<std::size_t>(n));
  for (Vertex v = 0; v < n; ++v) {
    std::uint64_t m = std::uint64_t{1} << v;
    for (Vertex w : g.neighbors(v)) m |= std::uint64_t{1} << w;
    closed[static_cast<std::size_t>(v)] = m;
  }
  const std::uint64_t all = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;

  std::uint64_t best = 0;
  int best_size = -1;
  for (std::uint64_t set = 0;; ++set) {
    int sz = std::popcount(set);
    if (sz >= best_size) {
      // once = dominated at least once, twice = at least twice.
      std::uint64_t once = 0, twice = 0;
      for (std::uint64_t rest = set; rest; rest &= rest - 1) {
        std::uint64_t c = closed[static_cast<std::size_t>(std::countr_zero(rest))];
        twice |= once & c;
        once |= c;
      }
      if (once == all) {
        bool minimal = true;
        std::uint64_t priv = once & ~twice;
        for (std::uint64_t rest = set; rest && minimal; rest &= rest - 1)
          if ((closed[static_cast<std::size_t>(std::countr_zero(rest))] & priv) == 0) minimal = false;
        if (minimal && (sz > best_size || detail::lex_less_same_size(set, best))) {
          best = set;
          best_size = sz;
        }
      }
    }
    if (set == all) break;
  }

  VertexSet d;
  for (std::uint64_t rest = best; rest; rest &= rest - 1) d.push_back(std::countr_zero(rest));
  auto res = check_minimal(g, d);
  return std::get<UpperDomSolution>(res);
}

}  // namespace udom
