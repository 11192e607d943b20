// udom: command-line front end.
//
// Exit codes: 0 ok, 1 invalid solution (validate), 2 parse/usage error,
// 3 oracle limit exceeded, 4 invalid decomposition, 5 invalid certificate,
// 70 internal error.
//
// Results go to stdout and are byte-deterministic for fixed inputs. The run
// report (inputs, digests, seed, counters, wall time) goes to stderr as one
// JSON line, or to the file named by --report.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "udom/udom.hpp"

#ifndef UDOM_VERSION
#define UDOM_VERSION "dev"
#endif

using namespace udom;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kInvalid = 1, kParse = 2, kLimit = 3, kDecomp = 4, kCertificate = 5 };

struct Failure {
  int code;
  std::string message;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{kParse, "cannot read " + path};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) throw Failure{kParse, "cannot write " + path};
}

std::string fnv1a(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream ss;
  ss << std::hex << std::setw(16) << std::setfill('0') << h;
  return ss.str();
}

class Report {
public:
  Report(int argc, char** argv) : start_(std::chrono::steady_clock::now()) {
    for (int i = 0; i < argc; ++i) j_["command"].push_back(argv[i]);
    j_["version"] = UDOM_VERSION;
    j_["seed"] = "none";
    j_["inputs"] = json::array();
    j_["counters"] = json::object();
  }

  std::string input(const std::string& path) {
    std::string text = read_file(path);
    j_["inputs"].push_back({{"path", path}, {"fnv1a64", fnv1a(text)}});
    return text;
  }
  json& operator[](const char* key) { return j_[key]; }
  json& counters() { return j_["counters"]; }

  void emit(const std::string& path, int exit_code) {
    j_["exit"] = exit_code;
    j_["wall_ms"] =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
    if (path.empty())
      std::cerr << j_.dump() << '\n';
    else
      write_file(path, j_.dump(2) + "\n");
  }

private:
  json j_;
  std::chrono::steady_clock::time_point start_;
};

Graph load_graph(Report& rep, const std::string& path) {
  std::string text = rep.input(path);
  try {
    return parse_graph(text);
  } catch (const ParseError& e) {
    throw Failure{kParse, path + ": " + e.what()};
  }
}

void emit_solution(Report& rep, const UpperDomSolution& sol) {
  std::cout << solution_json_text(sol);
  rep["result_size"] = sol.size();
}

std::string witness_kind(WitnessError::Kind k) {
  switch (k) {
    case WitnessError::Kind::NotIndependent: return "NotIndependent";
    case WitnessError::Kind::WrongSize: return "WrongSize";
    case WitnessError::Kind::AssignmentUnsatisfying: return "AssignmentUnsatisfying";
    case WitnessError::Kind::AmbiguousAcceptedTuple: return "AmbiguousAcceptedTuple";
    case WitnessError::Kind::BadAssignment: return "BadAssignment";
  }
  return "?";
}

// Plain whitespace-separated integers; `#` comments allowed.
std::vector<long long> read_int_list(const std::string& text, const std::string& path) {
  std::vector<long long> out;
  std::istringstream in(text);
  std::string line;
  std::size_t ln = 0;
  while (std::getline(in, line)) {
    ++ln;
    if (detail::is_skippable(line)) continue;
    std::istringstream ls(line);
    long long v;
    while (ls >> v) out.push_back(v);
    if (!ls.eof()) throw Failure{kParse, path + ": expected integers at line " + std::to_string(ln)};
  }
  return out;
}

// A solution artifact is either solution JSON (its "set" field) or a plain
// list of 1-indexed vertices.
VertexSet load_vertex_set(Report& rep, const std::string& path, Vertex n) {
  std::string text = rep.input(path);
  VertexSet out;
  auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    try {
      out = vertex_set_from_json(json::parse(text));
    } catch (const json::exception& e) {
      throw Failure{kParse, path + ": " + e.what()};
    }
  } else {
    for (long long v : read_int_list(text, path)) out.push_back(static_cast<Vertex>(v - 1));
  }
  for (Vertex v : out)
    if (v < 0 || v >= n) throw Failure{kParse, path + ": vertex " + std::to_string(v + 1) + " out of range"};
  return normalized(out);
}

// ---------------------------------------------------------------------------

struct Options {
  std::string report;
  std::string graph, artifact, source, out_prefix, certificate, decomp = "heuristic", what, kind;
  int limit = kDefaultOracleLimit;
  std::size_t dense_limit = DpOptions{}.dense_limit;
  double ratio = 2.0;
  std::uint64_t seed = 0;
  int a = 5;
  std::string suite = "all";
  bool no_timing = false;
};

int cmd_oracle(const Options& o, Report& rep) {
  rep["solver"] = "oracle";
  Graph g = load_graph(rep, o.graph);
  try {
    emit_solution(rep, brute_force_uds(g, o.limit));
  } catch (const OracleLimitExceeded& e) {
    throw Failure{kLimit, e.what()};
  }
  rep.counters()["subsets"] = g.n() < 64 ? (std::uint64_t{1} << g.n()) : 0;
  return kOk;
}

NicePathDecomposition build_decomposition(const Options& o, Report& rep, const Graph& g) {
  if (o.decomp == "trivial") return trivial_decomposition(g);
  if (o.decomp == "heuristic") return heuristic_decomposition(g);
  if (o.decomp.rfind("gadget:", 0) == 0) {
    const std::string meta_path = o.decomp.substr(7);
    std::string text = rep.input(meta_path);
    try {
      return gadget_decomposition(g, layout_from_json(json::parse(text)));
    } catch (const json::exception& e) {
      throw Failure{kParse, meta_path + ": " + e.what()};
    } catch (const StructureMismatch& e) {
      throw Failure{kDecomp, std::string("StructureMismatch: ") + e.what()};
    }
  }
  std::string text = rep.input(o.decomp);
  try {
    return parse_decomposition(text);
  } catch (const ParseError& e) {
    throw Failure{kParse, o.decomp + ": " + e.what()};
  }
}

int cmd_dp(const Options& o, Report& rep) {
  rep["solver"] = "pathwidth-dp";
  Graph g = load_graph(rep, o.graph);
  NicePathDecomposition d = build_decomposition(o, rep, g);
  auto check = validate_decomposition(g, d);
  if (auto* f = std::get_if<DecompositionFailure>(&check)) throw Failure{kDecomp, "invalid decomposition: " + f->describe()};
  DpOptions opt;
  opt.dense_limit = o.dense_limit;
  DpStats stats;
  emit_solution(rep, solve_pathwidth_dp(g, d, opt, &stats));
  rep.counters()["width"] = std::get<int>(check);
  rep.counters()["table_entries"] = stats.table_entries;
  rep.counters()["transitions"] = stats.transitions;
  return kOk;
}

int cmd_approx(const Options& o, Report& rep) {
  rep["solver"] = "approx";
  rep["seed"] = o.seed;
  if (!(o.ratio > 1.0)) throw Failure{kParse, "--ratio must exceed 1"};
  Graph g = load_graph(rep, o.graph);
  ApproxStats stats;
  emit_solution(rep, approximate_uds(g, o.ratio, o.seed, &stats));
  auto& c = rep.counters();
  c["blocks"] = stats.blocks;
  c["mis_branches"] = stats.mis_branches;
  c["subset_branches"] = stats.subset_branches;
  c["max_subset_branches_per_block"] = stats.max_subset_branches_per_block;
  c["contexts"] = stats.contexts;
  c["discards"] = stats.discards;
  return kOk;
}

int cmd_generate(const Options& o, Report& rep) {
  rep["solver"] = "generate-" + o.kind;
  std::string text = rep.input(o.source);
  Graph graph;
  json meta;
  std::optional<UpperDomSolution> witness;
  long long budget = 0;
  try {
    if (o.kind == "is") {
      std::istringstream in(text);
      CliquePartitionedIsInstance inst = parse_is_source(in);
      IsReductionOutput out;
      try {
        out = gen_is_reduction(inst, o.a);
      } catch (const std::invalid_argument& e) {
        throw Failure{kParse, o.source + ": " + e.what()};
      }
      if (!o.certificate.empty()) {
        VertexSet is;
        for (long long v : read_int_list(rep.input(o.certificate), o.certificate))
          is.push_back(static_cast<Vertex>(v - 1));
        witness = is_reduction_witness(out, is);
      }
      meta = metadata_json(out);
      budget = out.budget;
      graph = std::move(out.graph);
    } else {
      CspReductionOutput out;
      try {
        out = gen_csp_reduction(parse_csp(text));
      } catch (const InvalidCsp& e) {
        throw Failure{kParse, o.source + ": " + e.what()};
      }
      if (!o.certificate.empty()) {
        std::istringstream cert(rep.input(o.certificate));
        std::vector<int> assignment;
        try {
          assignment = parse_assignment(cert);
        } catch (const ParseError& e) {
          throw Failure{kParse, o.certificate + ": " + e.what()};
        }
        witness = csp_reduction_witness(out, assignment);
      }
      meta = metadata_json(out);
      budget = out.layout.budget;
      graph = std::move(out.graph);
    }
  } catch (const ParseError& e) {
    throw Failure{kParse, o.source + ": " + e.what()};
  } catch (const InvalidCliquePartition& e) {
    throw Failure{kParse, o.source + ": " + e.what()};
  } catch (const WitnessError& e) {
    throw Failure{kCertificate, "certificate invalid: " + witness_kind(e.kind()) + ": " + e.what()};
  }

  write_file(o.out_prefix + ".gr", serialize_graph(graph));
  write_file(o.out_prefix + ".meta.json", meta.dump(2) + "\n");
  std::cout << "vertices=" << graph.n() << " edges=" << graph.size() << " budget=" << budget << '\n';
  rep.counters()["vertices"] = graph.n();
  rep.counters()["edges"] = graph.size();
  rep.counters()["budget"] = budget;
  if (witness) {
    if (auto err = validate_solution(graph, *witness)) throw Failure{kCertificate, "witness rejected: " + *err};
    if (static_cast<long long>(witness->size()) < budget)
      throw Failure{kCertificate, "witness smaller than the budget"};
    write_file(o.out_prefix + ".witness.json", solution_json_text(*witness));
    std::cout << "witness size=" << witness->size() << '\n';
    rep["result_size"] = witness->size();
  }
  return kOk;
}

int cmd_validate(const Options& o, Report& rep) {
  rep["solver"] = "validate-" + o.what;
  Graph g = load_graph(rep, o.graph);
  if (o.what == "solution") {
    VertexSet d = load_vertex_set(rep, o.artifact, g.n());
    auto res = check_minimal(g, d);
    if (auto* f = std::get_if<MinimalityFailure>(&res)) {
      std::cout << "failure " << f->describe() << '\n';
      return kInvalid;
    }
    std::cout << "ok size=" << d.size() << '\n';
    rep["result_size"] = d.size();
    return kOk;
  }
  std::string text = rep.input(o.artifact);
  NicePathDecomposition d;
  try {
    d = parse_decomposition(text);
  } catch (const ParseError& e) {
    throw Failure{kParse, o.artifact + ": " + e.what()};
  }
  auto check = validate_decomposition(g, d);
  if (auto* f = std::get_if<DecompositionFailure>(&check)) {
    std::cout << "failure " << f->describe() << '\n';
    return kDecomp;
  }
  std::cout << "ok width=" << std::get<int>(check) << '\n';
  rep.counters()["width"] = std::get<int>(check);
  return kOk;
}

// ---------------------------------------------------------------------------
// Benchmarks. One CSV row per run:
// suite,instance,n,param,size,time_ms,entries,expected_entries,transitions,branches,branch_bound,oracle_size

struct BenchRow {
  std::string suite, instance;
  long long n = 0;
  std::string param;
  long long size = 0;
  double ms = 0;
  std::string entries, expected, transitions, branches, bound, oracle;
};

template <typename F>
double timed(F&& f) {
  auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

Graph bench_graph(Vertex n, double p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (static_cast<double>(rng() >> 11) * 0x1.0p-53 < p) edges.emplace_back(u, v);
  return make_graph(n, edges);
}

std::uint64_t sum_pow6(const NicePathDecomposition& d) {
  std::uint64_t s = 0;
  for (const auto& bag : d.bags()) s += kPow6[bag.size()];
  return s;
}

int cmd_bench(const Options& o, Report& rep) {
  rep["solver"] = "bench";
  if (o.suite != "all" && o.suite != "dp" && o.suite != "oracle" && o.suite != "approx")
    throw Failure{kParse, "unknown suite " + o.suite};
  const bool all = o.suite == "all";
  std::vector<BenchRow> rows;

  if (all || o.suite == "dp") {
    for (Vertex b = 3; b <= 8; ++b) {
      Graph g = complete_graph(b);
      auto d = trivial_decomposition(g);
      DpStats st;
      UpperDomSolution sol;
      double ms = timed([&] { sol = solve_pathwidth_dp(g, d, {}, &st); });
      rows.push_back({"dp", "K" + std::to_string(b), b, "width=" + std::to_string(b - 1),
                      static_cast<long long>(sol.size()), ms, std::to_string(st.table_entries),
                      std::to_string(sum_pow6(d)), std::to_string(st.transitions), "", "", ""});
    }
  }
  if (all || o.suite == "oracle") {
    for (Vertex n = 6; n <= 12; ++n) {
      Graph g = bench_graph(n, 0.3, 1000 + static_cast<std::uint64_t>(n));
      UpperDomSolution oracle, dp;
      double t_oracle = timed([&] { oracle = brute_force_uds(g); });
      auto d = heuristic_decomposition(g);
      DpStats st;
      double t_dp = timed([&] { dp = solve_pathwidth_dp(g, d, {}, &st); });
      const std::string name = "gnp" + std::to_string(n);
      rows.push_back({"oracle", name, n, "", static_cast<long long>(oracle.size()), t_oracle, "", "", "", "", "",
                      std::to_string(oracle.size())});
      rows.push_back({"dp", name, n, "width=" + std::to_string(decomposition_width(d)),
                      static_cast<long long>(dp.size()), t_dp, std::to_string(st.table_entries), "",
                      std::to_string(st.transitions), "", "", std::to_string(oracle.size())});
    }
  }
  if (all || o.suite == "approx") {
    Graph g = bench_graph(12, 0.3, 2024);
    const auto gamma = brute_force_uds(g).size();
    for (double r : {2.0, 3.0, 4.0, 6.0}) {
      ApproxStats st;
      UpperDomSolution sol;
      double ms = timed([&] { sol = approximate_uds(g, r, o.seed, &st); });
      const auto l = std::min<std::size_t>(12, std::max<std::size_t>(1, static_cast<std::size_t>(r / 2)));
      const auto biggest = (12 + l - 1) / l;
      if (st.max_subset_branches_per_block > (std::uint64_t{1} << biggest))
        throw std::logic_error("subset branches exceed 2^ceil(n/l)");
      std::ostringstream rs;
      rs << "r=" << r;
      rows.push_back({"approx", "gnp12", 12, rs.str(), static_cast<long long>(sol.size()), ms, "", "", "",
                      std::to_string(st.max_subset_branches_per_block), std::to_string(std::uint64_t{1} << biggest),
                      std::to_string(gamma)});
    }
    rep["seed"] = o.seed;
  }

  std::cout << "suite,instance,n,param,size,time_ms,entries,expected_entries,transitions,branches,branch_bound,"
               "oracle_size\n";
  for (const auto& r : rows) {
    std::ostringstream t;
    if (!o.no_timing) t << std::fixed << std::setprecision(3) << r.ms;
    std::cout << r.suite << ',' << r.instance << ',' << r.n << ',' << r.param << ',' << r.size << ',' << t.str()
              << ',' << r.entries << ',' << r.expected << ',' << r.transitions << ',' << r.branches << ','
              << r.bound << ',' << r.oracle << '\n';
  }
  rep.counters()["rows"] = rows.size();
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Upper dominating set solvers, reductions and validators"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(UDOM_VERSION));
  Options o;
  app.add_option("--report", o.report, "write the run report here instead of stderr");

  auto* oracle = app.add_subcommand("oracle", "exhaustive maximum minimal dominating set");
  oracle->add_option("graph", o.graph)->required();
  oracle->add_option("--limit", o.limit, "largest n accepted")->check(CLI::Range(0, kMaxOracleLimit));

  auto* dp = app.add_subcommand("dp", "pathwidth dynamic program");
  dp->add_option("graph", o.graph)->required();
  dp->add_option("--decomp", o.decomp, "trivial | heuristic | gadget:<meta.json> | <decomposition file>");
  dp->add_option("--dense-limit", o.dense_limit, "largest bag stored as a dense table")->check(CLI::Range(0, 12));

  auto* approx = app.add_subcommand("approx", "sub-exponential r-approximation");
  approx->add_option("graph", o.graph)->required();
  approx->add_option("--ratio,-r", o.ratio, "approximation ratio r > 1")->required();
  approx->add_option("--seed", o.seed, "partition shuffle seed (0 keeps index order)");

  auto* gen = app.add_subcommand("generate", "build a hardness-reduction instance");
  gen->add_option("kind", o.kind)->required()->check(CLI::IsMember({"is", "csp"}));
  gen->add_option("source", o.source)->required();
  gen->add_option("--out", o.out_prefix, "output prefix")->required();
  gen->add_option("--certificate", o.certificate, "independent set (is) or assignment (csp)");
  gen->add_option("--a", o.a, "block size of the independent-set construction");

  auto* val = app.add_subcommand("validate", "check a solution or a decomposition");
  val->add_option("what", o.what)->required()->check(CLI::IsMember({"solution", "decomp"}));
  val->add_option("graph", o.graph)->required();
  val->add_option("artifact", o.artifact)->required();

  auto* bench = app.add_subcommand("bench", "scaling benchmarks as CSV");
  bench->add_option("--suite", o.suite, "all | dp | oracle | approx");
  bench->add_option("--seed", o.seed, "seed for the approximation rows");
  bench->add_flag("--no-timing", o.no_timing, "leave the time column empty");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kParse;
  }

  Report rep(argc, argv);
  int rc = kOk;
  try {
    if (*oracle) rc = cmd_oracle(o, rep);
    else if (*dp) rc = cmd_dp(o, rep);
    else if (*approx) rc = cmd_approx(o, rep);
    else if (*gen) rc = cmd_generate(o, rep);
    else if (*val) rc = cmd_validate(o, rep);
    else if (*bench) rc = cmd_bench(o, rep);
  } catch (const Failure& f) {
    std::cerr << "udom: " << f.message << '\n';
    rc = f.code;
  } catch (const std::exception& e) {
    std::cerr << "udom: internal error: " << e.what() << '\n';
    rc = 70;
  }
  try {
    rep.emit(o.report, rc);
  } catch (const Failure& f) {
    std::cerr << "udom: " << f.message << '\n';
  }
  return rc;
}
