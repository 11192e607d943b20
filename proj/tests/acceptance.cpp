// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fail.
//
//   acceptance <udom-cli> <test-data-dir>

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "support.hpp"
#include "udom/udom.hpp"

using namespace udom;
namespace ut = udom::testing;
namespace fs = std::filesystem;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;
};

// Collects the first few failure descriptions; any failure fails the criterion.
struct Tally {
  int failures = 0;
  std::string first;
  void fail(const std::string& what) {
    if (failures++ == 0) first = what;
  }
  Verdict verdict(const std::string& ok_detail) const {
    if (failures == 0) return {true, ok_detail};
    return {false, std::to_string(failures) + " failure(s), first: " + first};
  }
};

bool passes_check_minimal(const Graph& g, const UpperDomSolution& s) {
  return !validate_solution(g, s) && std::holds_alternative<UpperDomSolution>(check_minimal(g, s.members));
}

std::string brief(const Graph& g) {
  std::string s = serialize_graph(g);
  for (char& c : s)
    if (c == '\n') c = ';';
  return s;
}

// --- 1 ---------------------------------------------------------------------

Verdict oracle_equivalence() {
  Tally t;
  int graphs = 0;
  auto check = [&](const Graph& g) {
    ++graphs;
    const auto want = brute_force_uds(g).size();
    for (const auto& [name, d] : {std::pair{"trivial", trivial_decomposition(g)},
                                  std::pair{"heuristic", heuristic_decomposition(g)}}) {
      auto sol = solve_pathwidth_dp(g, d);
      if (sol.size() != want)
        t.fail(std::string(name) + " dp " + std::to_string(sol.size()) + " != oracle " + std::to_string(want) +
               " on " + brief(g));
    }
  };
  for (Vertex n = 1; n <= 5; ++n) {
    const auto pairs = static_cast<std::uint32_t>(n * (n - 1) / 2);
    for (std::uint32_t mask = 0; mask < (1u << pairs); ++mask) check(ut::graph_from_pair_mask(n, mask));
  }
  std::mt19937_64 rng(1001);
  std::uniform_real_distribution<double> p(0.1, 0.9);
  for (int i = 0; i < 500; ++i) check(ut::random_graph(static_cast<Vertex>(6 + i % 5), p(rng), rng));
  return t.verdict(std::to_string(graphs) + " graphs, both decompositions");
}

// --- 2 ---------------------------------------------------------------------

Verdict minimality_soundness() {
  Tally t;
  std::mt19937_64 rng(1002);
  std::uniform_real_distribution<double> p(0.1, 0.9);
  long long subsets = 0, solutions = 0;
  for (int i = 0; i < 200; ++i) {
    Graph g = ut::random_graph(static_cast<Vertex>(1 + i % 7), p(rng), rng);
    const auto n = static_cast<std::uint64_t>(g.n());
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
      VertexSet d;
      for (Vertex v = 0; v < g.n(); ++v)
        if (mask >> v & 1) d.push_back(v);
      ++subsets;
      const bool lib = std::holds_alternative<UpperDomSolution>(check_minimal(g, d));
      if (lib != ut::ref_minimal(g, mask)) t.fail("check_minimal disagrees on " + brief(g));
    }
    std::vector<UpperDomSolution> emitted = {
        brute_force_uds(g),
        solve_pathwidth_dp(g, trivial_decomposition(g)),
        solve_pathwidth_dp(g, heuristic_decomposition(g)),
    };
    for (double r : {2.0, 3.0, 4.0, 6.0}) emitted.push_back(approximate_uds(g, r, static_cast<std::uint64_t>(i)));
    for (const auto& s : emitted) {
      ++solutions;
      if (!passes_check_minimal(g, s)) t.fail("solver output rejected on " + brief(g));
    }
  }
  // witness constructors
  for (const auto& src : ut::all_clique_partitioned_sources(3)) {
    if (ut::ref_alpha(src.graph) < static_cast<int>(src.k())) continue;
    auto out = gen_is_reduction(src);
    VertexSet pick;
    for (auto m : ut::ref_maximal_independent_sets(src.graph))
      if (std::popcount(m) == static_cast<int>(src.k())) {
        for (Vertex v = 0; v < src.graph.n(); ++v)
          if (m >> v & 1) pick.push_back(v);
        break;
      }
    if (pick.empty()) continue;
    ++solutions;
    if (!passes_check_minimal(out.graph, is_reduction_witness(out, pick))) t.fail("IS witness rejected");
  }
  for (int i = 0; i < 5; ++i) {
    const int n = 1 + i % 3;
    auto [csp, hidden] = random_satisfiable_csp(n, std::min(n, 1 + i % 2), 1, 2, rng);
    auto out = gen_csp_reduction(csp);
    ++solutions;
    if (!passes_check_minimal(out.graph, csp_reduction_witness(out, hidden))) t.fail("CSP witness rejected");
  }
  return t.verdict(std::to_string(subsets) + " subsets of 200 graphs, " + std::to_string(solutions) +
                   " emitted solutions");
}

// --- 3 ---------------------------------------------------------------------

Verdict approximation_ratio() {
  Tally t;
  std::mt19937_64 rng(1003);
  std::uniform_real_distribution<double> p(0.1, 0.9);
  int checks = 0;
  for (int i = 0; i < 200; ++i) {
    Graph g = ut::random_graph(static_cast<Vertex>(1 + i % 12), p(rng), rng);
    const auto gamma = static_cast<double>(brute_force_uds(g).size());
    for (double r : {2.0, 3.0, 4.0, 6.0}) {
      ++checks;
      auto sol = approximate_uds(g, r, static_cast<std::uint64_t>(i));
      if (r * static_cast<double>(sol.size()) < gamma)
        t.fail("r=" + std::to_string(r) + " size " + std::to_string(sol.size()) + " vs " +
               std::to_string(static_cast<int>(gamma)) + " on " + brief(g));
    }
  }
  return t.verdict(std::to_string(checks) + " (graph, r) pairs");
}

// --- 4 ---------------------------------------------------------------------

Verdict dp_state_space() {
  Tally t;
  std::ostringstream counts;
  for (Vertex b = 3; b <= 8; ++b) {
    Graph g = complete_graph(b);
    auto d = trivial_decomposition(g);
    std::uint64_t expected = 0;
    for (const auto& bag : d.bags()) {
      std::uint64_t pw = 1;
      for (std::size_t i = 0; i < bag.size(); ++i) pw *= 6;
      expected += pw;
    }
    DpStats stats;
    solve_pathwidth_dp(g, d, {}, &stats);
    counts << (b == 3 ? "" : " ") << "K" << b << "=" << stats.table_entries;
    if (stats.table_entries != expected)
      t.fail("K" + std::to_string(b) + ": " + std::to_string(stats.table_entries) + " != " + std::to_string(expected));
  }
  return t.verdict(counts.str());
}

// --- 5 ---------------------------------------------------------------------

Verdict is_equivalence() {
  Tally t;
  int sources = 0, yes = 0;
  for (const auto& src : ut::all_clique_partitioned_sources(3)) {
    ++sources;
    auto out = gen_is_reduction(src, 5);
    const bool lhs = ut::ref_alpha(src.graph) >= static_cast<int>(src.k());
    const bool rhs = ut::ref_gamma(out.graph) >= 5 * static_cast<int>(src.k());
    yes += lhs;
    if (lhs != rhs) t.fail("mismatch on " + serialize_is_source(src));
  }
  return t.verdict(std::to_string(sources) + " sources (" + std::to_string(yes) + " yes-instances)");
}

// --- 6 ---------------------------------------------------------------------

// Random clique partition with k cliques and a planted independent transversal
// (vertex 0 of each clique); other cross-clique pairs appear with probability p.
std::pair<CliquePartitionedIsInstance, VertexSet> planted_is_source(int k, std::mt19937_64& rng) {
  std::vector<VertexSet> cliques;
  Vertex n = 0;
  for (int i = 0; i < k; ++i) {
    VertexSet c;
    const auto size = 1 + static_cast<int>(rng() % 3);
    for (int j = 0; j < size; ++j) c.push_back(n++);
    cliques.push_back(c);
  }
  VertexSet planted;
  for (const auto& c : cliques) planted.push_back(c.front());
  std::vector<int> owner(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < cliques.size(); ++i)
    for (Vertex v : cliques[i]) owner[static_cast<std::size_t>(v)] = static_cast<int>(i);
  std::vector<Edge> edges;
  std::bernoulli_distribution coin(0.4);
  auto is_planted = [&](Vertex v) { return std::find(planted.begin(), planted.end(), v) != planted.end(); };
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) {
      if (owner[static_cast<std::size_t>(u)] == owner[static_cast<std::size_t>(v)])
        edges.emplace_back(u, v);
      else if (!(is_planted(u) && is_planted(v)) && coin(rng))
        edges.emplace_back(u, v);
    }
  return {{make_graph(n, edges), cliques}, planted};
}

Verdict forward_witnesses() {
  Tally t;
  std::mt19937_64 rng(1006);
  Vertex largest = 0;
  for (int i = 0; i < 20; ++i) {
    const int n = 1 + i % 3;
    const int q = std::min(n, 1 + (i / 3) % 2);
    const int m = 1 + (i / 6) % 2;
    auto [csp, hidden] = random_satisfiable_csp(n, q, m, 1 + i % 4, rng);
    auto out = gen_csp_reduction(csp);
    largest = std::max(largest, out.graph.n());
    const auto& lay = out.layout;
    const long long budget = lay.f * static_cast<long long>(lay.m) * (2LL * lay.n + lay.a) + 2LL * lay.n;
    if (lay.budget != budget) t.fail("CSP budget " + std::to_string(lay.budget) + " != " + std::to_string(budget));
    auto sol = csp_reduction_witness(out, hidden);
    if (!passes_check_minimal(out.graph, sol)) t.fail("CSP witness rejected (n=" + std::to_string(n) + ")");
    if (static_cast<long long>(sol.size()) < budget)
      t.fail("CSP witness size " + std::to_string(sol.size()) + " < " + std::to_string(budget));
  }
  for (int i = 0; i < 20; ++i) {
    const int k = 1 + i % 5;
    auto [src, planted] = planted_is_source(k, rng);
    auto out = gen_is_reduction(src, 5);
    largest = std::max(largest, out.graph.n());
    if (out.budget != 5LL * k) t.fail("IS budget " + std::to_string(out.budget));
    auto sol = is_reduction_witness(out, planted);
    if (!passes_check_minimal(out.graph, sol)) t.fail("IS witness rejected on " + serialize_is_source(src));
    if (static_cast<long long>(sol.size()) < 5LL * k) t.fail("IS witness too small");
  }
  return t.verdict("20 CSP + 20 IS instances, largest target " + std::to_string(largest) + " vertices");
}

// --- 7 ---------------------------------------------------------------------

Verdict gadget_pathwidth() {
  Tally t;
  std::mt19937_64 rng(1007);
  std::ostringstream excesses;
  for (int q = 1; q <= 2; ++q)
    for (int n = q; n <= 3; ++n) {
      const int a = 4 * q + 2;
      const long long bound = n + 2LL * a * static_cast<long long>(domain_power(q)) + 4;
      std::vector<int> excess;
      for (int m = 1; m <= 3; ++m) {
        auto [csp, hidden] = random_satisfiable_csp(n, q, m, 3, rng, /*exact_count=*/true);
        auto out = gen_csp_reduction(csp);
        auto check = validate_decomposition(out.graph, gadget_decomposition(out));
        if (auto* f = std::get_if<DecompositionFailure>(&check)) {
          t.fail("invalid decomposition: " + f->describe());
          continue;
        }
        const int w = std::get<int>(check);
        if (w > bound) t.fail("width " + std::to_string(w) + " > " + std::to_string(bound));
        excess.push_back(w - n);
      }
      for (int e : excess)
        if (e != excess.front())
          t.fail("width - n varies with m for n=" + std::to_string(n) + " q=" + std::to_string(q));
      if (!excess.empty())
        excesses << (excesses.tellp() > 0 ? " " : "") << "(n=" << n << ",q=" << q << "):" << excess.front();
    }
  return t.verdict("width - n " + excesses.str());
}

// --- 8 ---------------------------------------------------------------------

Verdict moon_moser() {
  Tally t;
  std::mt19937_64 rng(1008);
  std::uniform_real_distribution<double> p(0.0, 1.0);
  std::uint64_t most = 0;
  for (int i = 0; i < 500; ++i) {
    Graph g = ut::random_graph(static_cast<Vertex>(1 + i % 15), p(rng), rng);
    std::uint64_t count = 0;
    for_each_maximal_independent_set(g, [&](const VertexSet&) { ++count; });
    most = std::max(most, count);
    if (static_cast<double>(count) > std::pow(3.0, (g.n() + 2) / 3.0))
      t.fail(std::to_string(count) + " maximal independent sets on " + brief(g));
  }
  return t.verdict("500 graphs, largest count " + std::to_string(most));
}

// --- 9 ---------------------------------------------------------------------

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Everything a run leaves behind: exit code, stdout, every file written, and
// the run report minus its wall-clock field.
std::string run_fingerprint(const fs::path& cli, const fs::path& data, const std::vector<std::string>& args,
                            const fs::path& dir) {
  fs::remove_all(dir);
  fs::create_directories(dir);
  std::string cmd = cli.string() + " --report '" + (dir / "report.json").string() + "'";
  for (std::string a : args) {
    for (auto [tag, base] : {std::pair{"@D/", data}, std::pair{"@O/", dir}}) {
      auto pos = a.find(tag);
      if (pos != std::string::npos) a.replace(pos, 3, (base / "").string());
    }
    cmd += " '" + a + "'";
  }
  cmd += " > '" + (dir / "stdout").string() + "' 2> '" + (dir / "stderr").string() + "'";
  const int status = std::system(cmd.c_str());
  std::string fp = "exit=" + std::to_string(WIFEXITED(status) ? WEXITSTATUS(status) : -1) + "\n";
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir)) files.push_back(e.path());
  std::sort(files.begin(), files.end());
  for (const auto& f : files) {
    std::string body = slurp(f);
    if (f.filename() == "report.json" && !body.empty()) {
      auto j = nlohmann::json::parse(body);
      j.erase("wall_ms");
      body = j.dump();
    }
    fp += "--- " + f.filename().string() + "\n" + body;
  }
  return fp;
}

Verdict cli_determinism(const fs::path& cli, const fs::path& data) {
  Tally t;
  const std::vector<std::vector<std::string>> commands = {
      {"oracle", "@D/c5.gr"},
      {"oracle", "@D/gnp12.gr", "--limit", "12"},
      {"oracle", "@D/n25.gr"},
      {"dp", "@D/gnp12.gr", "--decomp", "heuristic"},
      {"dp", "@D/gnp12.gr", "--decomp", "trivial"},
      {"dp", "@D/p4.gr", "--decomp", "@D/p4_trivial.pd", "--dense-limit", "0"},
      {"approx", "@D/gnp12.gr", "--ratio", "2", "--seed", "3"},
      {"approx", "@D/gnp12.gr", "--ratio", "6", "--seed", "3"},
      {"approx", "@D/gnp12.gr", "--ratio", "4"},
      {"validate", "solution", "@D/p4.gr", "@D/p4_bc.sol"},
      {"validate", "solution", "@D/p4.gr", "@D/p4_abc.sol"},
      {"validate", "decomp", "@D/p4.gr", "@D/p4_trivial.pd"},
      {"generate", "is", "@D/is_2k2.src", "--out", "@O/is", "--certificate", "@D/is_2k2.cert"},
      {"generate", "is", "@D/is_k3.src", "--out", "@O/is", "--a", "7"},
      {"generate", "csp", "@D/csp_pair.csp", "--out", "@O/csp", "--certificate", "@D/csp_pair.cert"},
      {"generate", "csp", "@D/csp_small.csp", "--out", "@O/csp", "--certificate", "@D/csp_small_bad.cert"},
      {"bench", "--suite", "all", "--seed", "4", "--no-timing"},
      {"frobnicate"},
  };
  const fs::path base = fs::temp_directory_path() / ("udom_acceptance_" + std::to_string(::getpid()));
  for (const auto& args : commands) {
    // same directory both times: paths appear in the report's command line
    std::string first = run_fingerprint(cli, data, args, base);
    std::string second = run_fingerprint(cli, data, args, base);
    if (first != second) {
      std::string joined;
      for (const auto& a : args) joined += a + " ";
      t.fail("output differs for: " + joined);
    }
  }
  fs::remove_all(base);
  return t.verdict(std::to_string(commands.size()) + " commands run twice");
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 3) {
    std::cerr << "usage: acceptance <udom-cli> <test-data-dir>\n";
    return 2;
  }
  const fs::path cli = argv[1], data = argv[2];
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
      {"oracle equivalence", oracle_equivalence},
      {"minimality soundness", minimality_soundness},
      {"approximation ratio", approximation_ratio},
      {"dp state-space scaling", dp_state_space},
      {"is-reduction equivalence", is_equivalence},
      {"forward witnesses", forward_witnesses},
      {"gadget pathwidth bound", gadget_pathwidth},
      {"moon-moser bound", moon_moser},
      {"cli determinism", [&] { return cli_determinism(cli, data); }},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const auto secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("criterion %zu %-26s %s  %s  [%.1fs]\n", i + 1, criteria[i].first.c_str(), v.pass ? "PASS" : "FAIL",
                v.detail.c_str(), secs);
    std::fflush(stdout);
    failed += !v.pass;
  }
  std::printf("%s: %d/%zu criteria passed\n", failed ? "FAILED" : "OK", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed ? 1 : 0;
}
