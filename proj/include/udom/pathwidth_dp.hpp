#pragma once

// Exact Upper Dominating Set over a nice path decomposition.
//
// Every bag vertex carries one of six colors:
//   I      in D, no neighbor in D (its own private vertex)
//   F      in D, already matched to a private neighbor
//   Fstar  in D, private neighbor not seen yet
//   Ostar  not in D, not dominated yet
//   O      not in D, dominated, not used as a private neighbor
//   P      not in D, dominated exactly once, matched to an F vertex
// A bag coloring is encoded in mixed radix 6 over the bag's sorted vertices
// (the smallest vertex is the least significant digit). Introduce nodes walk
// the colorings of the child bag and try all six colors for the new vertex,
// so one introduce costs O(6^k * k).

#include <algorithm>
#include <array>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "udom/domination.hpp"
#include "udom/graph.hpp"
#include "udom/path_decomposition.hpp"

namespace udom {

enum class Color : std::uint8_t { I = 0, F = 1, Fstar = 2, Ostar = 3, O = 4, P = 5 };
inline constexpr int kColorCount = 6;
inline constexpr std::size_t kMaxEncodedBag = 24;  // 6^24 < 2^63

inline constexpr std::array<std::uint64_t, kMaxEncodedBag + 2> kPow6 = [] {
  std::array<std::uint64_t, kMaxEncodedBag + 2> p{};
  p[0] = 1;
  for (std::size_t i = 1; i < p.size(); ++i) p[i] = p[i - 1] * 6;
  return p;
}();

using Coloring = std::uint64_t;

inline Color color_at(Coloring code, std::size_t pos) {
  return static_cast<Color>((code / kPow6[pos]) % kColorCount);
}

// How an introduced vertex colored P picks its F* partner.
enum class PrivateMatchRule {
  UniqueFstar,  // exactly one F* neighbor in the bag, no I/F neighbors
  AnyFstar,     // any F* neighbor; unsound, kept for comparison tests
};

struct DpOptions {
  std::size_t dense_limit = 8;  // bags up to this size use dense tables
  PrivateMatchRule private_rule = PrivateMatchRule::UniqueFstar;
};

struct IntroduceWork {
  std::size_t child_bag_size;
  std::uint64_t examined;  // (source coloring, color, partner) triples
};

struct DpStats {
  std::uint64_t table_entries = 0;  // allocated entries summed over all positions
  std::uint64_t transitions = 0;    // candidate updates pushed into a table
  std::vector<IntroduceWork> introduce_work;
};

inline constexpr std::int32_t kNegInf = std::numeric_limits<std::int32_t>::min();

struct DpEntry {
  std::int32_t value = kNegInf;
  std::uint8_t decision = 0;  // introduce: new vertex color; forget: forgotten vertex color
  std::uint8_t partner = 0xff;  // index in the child bag of the F/P partner, 0xff if none
  Coloring source = 0;          // coloring of the child table

  bool finite() const { return value != kNegInf; }
};

// A table is filled through relax() and then frozen. Dense tables index all
// 6^|bag| colorings directly; sparse ones collect finite entries in a hash map
// while being filled. Freezing moves a sparse table (or a dense one that is
// mostly -inf) into a sorted vector, which is what the replay keeps in memory.
class DpTable {
public:
  DpTable(VertexSet bag, bool dense) : bag_(std::move(bag)), mode_(dense ? Mode::Dense : Mode::Building) {
    if (bag_.size() > kMaxEncodedBag)
      throw std::length_error("bag of size " + std::to_string(bag_.size()) + " exceeds encodable width");
    if (dense) dense_entries_.resize(kPow6[bag_.size()]);
  }

  const VertexSet& bag() const { return bag_; }
  bool dense() const { return mode_ == Mode::Dense; }
  std::uint64_t capacity() const { return kPow6[bag_.size()]; }
  std::uint64_t stored_entries() const {
    switch (mode_) {
      case Mode::Dense: return dense_entries_.size();
      case Mode::Building: return sparse_.size();
      case Mode::Frozen: return frozen_.size();
    }
    return 0;
  }

  DpEntry get(Coloring code) const {
    switch (mode_) {
      case Mode::Dense: return code < dense_entries_.size() ? dense_entries_[code] : DpEntry{};
      case Mode::Building: {
        auto it = sparse_.find(code);
        return it == sparse_.end() ? DpEntry{} : it->second;
      }
      case Mode::Frozen: {
        auto it = std::lower_bound(frozen_.begin(), frozen_.end(), code,
                                   [](const auto& kv, Coloring c) { return kv.first < c; });
        return it != frozen_.end() && it->first == code ? it->second : DpEntry{};
      }
    }
    return {};
  }

  // Strictly-greater updates only: with sources visited in ascending order the
  // smallest source coloring keeps ties.
  bool relax(Coloring code, const DpEntry& cand) {
    if (mode_ == Mode::Frozen) throw std::logic_error("relax on a frozen table");
    DpEntry& slot = mode_ == Mode::Dense ? dense_entries_[code] : sparse_[code];
    if (cand.value <= slot.value) return false;
    slot = cand;
    return true;
  }

  void freeze() {
    if (mode_ == Mode::Frozen) return;
    if (mode_ == Mode::Dense) {
      std::size_t finite = 0;
      for (const auto& e : dense_entries_) finite += e.finite();
      if (2 * finite >= dense_entries_.size()) return;  // dense is already compact
      for (Coloring c = 0; c < dense_entries_.size(); ++c)
        if (dense_entries_[c].finite()) frozen_.emplace_back(c, dense_entries_[c]);
      std::vector<DpEntry>().swap(dense_entries_);
    } else {
      frozen_.reserve(sparse_.size());
      for (const auto& [c, e] : sparse_)
        if (e.finite()) frozen_.emplace_back(c, e);
      std::sort(frozen_.begin(), frozen_.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
      std::unordered_map<Coloring, DpEntry>().swap(sparse_);
    }
    mode_ = Mode::Frozen;
  }

  // Visits finite entries in ascending coloring order.
  template <typename F>
  void for_each_finite(F&& f) const {
    switch (mode_) {
      case Mode::Dense:
        for (Coloring c = 0; c < dense_entries_.size(); ++c)
          if (dense_entries_[c].finite()) f(c, dense_entries_[c]);
        return;
      case Mode::Frozen:
        for (const auto& [c, e] : frozen_) f(c, e);
        return;
      case Mode::Building: {
        std::vector<Coloring> keys;
        keys.reserve(sparse_.size());
        for (const auto& [c, e] : sparse_)
          if (e.finite()) keys.push_back(c);
        std::sort(keys.begin(), keys.end());
        for (Coloring c : keys) f(c, sparse_.at(c));
        return;
      }
    }
  }

private:
  enum class Mode : std::uint8_t { Dense, Building, Frozen };
  VertexSet bag_;
  Mode mode_;
  std::vector<DpEntry> dense_entries_;
  std::unordered_map<Coloring, DpEntry> sparse_;
  std::vector<std::pair<Coloring, DpEntry>> frozen_;
};

// tables[0] is the empty bag before the first event; tables[t+1] follows events[t].
struct DpTables {
  std::vector<DpTable> tables;
  std::vector<DecompEvent> events;
  DpStats stats;

  std::int32_t optimum() const { return tables.back().get(0).value; }
};

class InvalidDecomposition : public std::runtime_error {
public:
  explicit InvalidDecomposition(DecompositionFailure f)
      : std::runtime_error("invalid decomposition: " + f.describe()), failure_(f) {}
  const DecompositionFailure& failure() const { return failure_; }

private:
  DecompositionFailure failure_;
};

class CorruptTable : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

namespace detail {

inline Coloring insert_digit(Coloring code, std::size_t pos, Color c) {
  Coloring low = code % kPow6[pos];
  Coloring high = code / kPow6[pos];
  return low + static_cast<Coloring>(c) * kPow6[pos] + high * kPow6[pos + 1];
}

inline Coloring remove_digit(Coloring code, std::size_t pos) {
  return code % kPow6[pos] + (code / kPow6[pos + 1]) * kPow6[pos];
}

class DpRunner {
public:
  DpRunner(const Graph& g, const DpOptions& opt) : g_(g), opt_(opt) {}

  DpTables run(const NicePathDecomposition& d) {
    DpTables out;
    out.events = d.events;
    out.tables.reserve(d.events.size() + 1);
    out.tables.emplace_back(VertexSet{}, true);
    out.tables.back().relax(0, DpEntry{0, 0, 0xff, 0});
    out.stats.table_entries += out.tables.back().stored_entries();
    for (const auto& e : d.events) {
      const DpTable& child = out.tables.back();
      VertexSet bag = child.bag();
      auto pos = std::lower_bound(bag.begin(), bag.end(), e.vertex);
      if (e.kind == DecompEvent::Kind::Introduce)
        bag.insert(pos, e.vertex);
      else
        bag.erase(pos);
      DpTable next(bag, bag.size() <= opt_.dense_limit);
      if (e.kind == DecompEvent::Kind::Introduce)
        introduce(child, next, e.vertex, out.stats);
      else
        forget(child, next, e.vertex, out.stats);
      out.stats.table_entries += next.stored_entries();
      next.freeze();
      out.tables.push_back(std::move(next));
    }
    return out;
  }

private:
  void forget(const DpTable& child, DpTable& next, Vertex v, DpStats& stats) {
    const auto& bag = child.bag();
    const auto pos = static_cast<std::size_t>(std::lower_bound(bag.begin(), bag.end(), v) - bag.begin());
    child.for_each_finite([&](Coloring code, const DpEntry& e) {
      Color c = color_at(code, pos);
      if (c == Color::Fstar || c == Color::Ostar) return;
      ++stats.transitions;
      next.relax(remove_digit(code, pos), DpEntry{e.value, static_cast<std::uint8_t>(c), 0xff, code});
    });
  }

  void introduce(const DpTable& child, DpTable& next, Vertex v, DpStats& stats) {
    const auto& bag = child.bag();
    const std::size_t k = bag.size();
    const auto pos = static_cast<std::size_t>(std::lower_bound(bag.begin(), bag.end(), v) - bag.begin());
    std::vector<std::size_t> nbr;  // child-bag positions adjacent to v
    for (std::size_t i = 0; i < k; ++i)
      if (g_.has_edge(v, bag[i])) nbr.push_back(i);

    std::uint64_t examined = 0;
    std::array<int, kColorCount> cnt{};
    child.for_each_finite([&](Coloring code, const DpEntry& e) {
      cnt.fill(0);
      Coloring ostar_flip = 0;  // adds O - O* = 1 at each O* neighbor
      for (std::size_t i : nbr) {
        Color c = color_at(code, i);
        ++cnt[static_cast<std::size_t>(c)];
        if (c == Color::Ostar) ostar_flip += kPow6[i];
      }
      const int in_i = cnt[0], in_f = cnt[1], in_fs = cnt[2], in_os = cnt[3], in_p = cnt[5];
      auto push = [&](Coloring src_modified, Color alpha, std::int32_t gain, std::uint8_t partner) {
        ++stats.transitions;
        next.relax(insert_digit(src_modified, pos, alpha),
                   DpEntry{e.value + gain, static_cast<std::uint8_t>(alpha), partner, code});
      };

      // I: no neighbor in D and no P neighbor.
      ++examined;
      if (in_i + in_f + in_fs + in_p == 0) push(code + ostar_flip, Color::I, 1, 0xff);

      // F: one O* neighbor becomes v's private neighbor.
      if (in_i + in_p == 0 && in_os > 0) {
        for (std::size_t w : nbr) {
          if (color_at(code, w) != Color::Ostar) continue;
          ++examined;
          push(code + ostar_flip + kPow6[w], Color::F, 1, static_cast<std::uint8_t>(w));
        }
      } else {
        ++examined;
      }

      ++examined;
      if (in_i + in_p == 0) push(code + ostar_flip, Color::Fstar, 1, 0xff);

      ++examined;
      if (in_i + in_f + in_fs == 0) push(code, Color::Ostar, 0, 0xff);

      ++examined;
      if (in_i + in_f + in_fs > 0) push(code, Color::O, 0, 0xff);

      // P: v becomes the private neighbor of an F* neighbor, which turns F.
      const bool p_ok = in_i + in_f == 0 &&
                        (opt_.private_rule == PrivateMatchRule::UniqueFstar ? in_fs == 1 : in_fs >= 1);
      if (p_ok) {
        for (std::size_t w : nbr) {
          if (color_at(code, w) != Color::Fstar) continue;
          ++examined;
          push(code - kPow6[w], Color::P, 0, static_cast<std::uint8_t>(w));
        }
      } else {
        ++examined;
      }
    });
    stats.introduce_work.push_back({k, examined});
  }

  const Graph& g_;
  const DpOptions& opt_;
};

}  // namespace detail

// Fills every table; throws InvalidDecomposition when d is not valid for g.
inline DpTables run_pathwidth_dp(const Graph& g, const NicePathDecomposition& d, const DpOptions& opt = {}) {
  auto check = validate_decomposition(g, d);
  if (auto* f = std::get_if<DecompositionFailure>(&check)) throw InvalidDecomposition(*f);
  return detail::DpRunner(g, opt).run(d);
}

// Replays the stored pointers from the final empty bag back to the start.
inline UpperDomSolution reconstruct_solution(const DpTables& dp, const Graph& g) {
  if (dp.tables.size() != dp.events.size() + 1) throw CorruptTable("table/event count mismatch");
  std::vector<int> color(static_cast<std::size_t>(g.n()), -1);
  std::map<Vertex, Vertex> witness;
  Coloring code = 0;
  for (std::size_t t = dp.events.size(); t > 0; --t) {
    const DpEntry e = dp.tables[t].get(code);
    if (!e.finite()) throw CorruptTable("pointer reached an infeasible entry at position " + std::to_string(t));
    const auto& ev = dp.events[t - 1];
    if (ev.kind == DecompEvent::Kind::Introduce) {
      color[static_cast<std::size_t>(ev.vertex)] = e.decision;
      if (e.partner != 0xff) {
        const auto& child_bag = dp.tables[t - 1].bag();
        if (e.partner >= child_bag.size()) throw CorruptTable("partner index out of range");
        Vertex w = child_bag[e.partner];
        auto alpha = static_cast<Color>(e.decision);
        if (alpha == Color::F)
          witness[ev.vertex] = w;
        else if (alpha == Color::P)
          witness[w] = ev.vertex;
        else
          throw CorruptTable("partner recorded for a color without one");
      }
    }
    code = e.source;
  }
  if (code != 0 || !dp.tables[0].get(0).finite()) throw CorruptTable("replay did not end at the empty bag");

  UpperDomSolution sol;
  for (Vertex v = 0; v < g.n(); ++v) {
    auto c = static_cast<Color>(color[static_cast<std::size_t>(v)]);
    if (color[static_cast<std::size_t>(v)] < 0) throw CorruptTable("vertex never introduced on the replay path");
    if (c == Color::I) {
      sol.independent.push_back(v);
      sol.members.push_back(v);
    } else if (c == Color::F || c == Color::Fstar) {
      sol.supported.push_back(v);
      sol.members.push_back(v);
      if (!witness.count(v)) throw CorruptTable("supported vertex without a recorded private neighbor");
      sol.witness[v] = witness[v];
    }
  }
  if (static_cast<std::int32_t>(sol.size()) != dp.optimum()) throw CorruptTable("replayed size differs from optimum");
  return sol;
}

inline UpperDomSolution solve_pathwidth_dp(const Graph& g, const NicePathDecomposition& d,
                                           const DpOptions& opt = {}, DpStats* stats = nullptr) {
  DpTables dp = run_pathwidth_dp(g, d, opt);
  if (g.n() > 0 && !dp.tables.back().get(0).finite())
    throw CorruptTable("no feasible coloring at the final bag");  // a maximal independent set always exists
  UpperDomSolution sol = reconstruct_solution(dp, g);
  if (stats) *stats = std::move(dp.stats);
  return sol;
}

}  // namespace udom
