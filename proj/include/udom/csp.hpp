#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "udom/graph.hpp"

namespace udom {

inline constexpr int kCspDomain = 6;

using Tuple = std::vector<std::uint8_t>;

struct CspConstraint {
  std::vector<int> variables;  // 0-indexed, exactly q distinct
  std::vector<Tuple> accepted;  // each of length q over {0..5}
  friend bool operator==(const CspConstraint&, const CspConstraint&) = default;
};

// q-CSP over the domain {0,...,5} with constraints given as accepted-tuple lists.
struct CspInstance {
  int n = 0;
  int q = 1;
  std::vector<CspConstraint> constraints;

  std::size_t m() const { return constraints.size(); }
  friend bool operator==(const CspInstance&, const CspInstance&) = default;
};

class InvalidCsp : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

inline std::uint64_t domain_power(int q) {
  std::uint64_t p = 1;
  for (int i = 0; i < q; ++i) p *= kCspDomain;
  return p;
}

inline void validate_csp(const CspInstance& csp) {
  if (csp.n < 1) throw InvalidCsp("need at least one variable");
  if (csp.q < 1 || csp.q > csp.n) throw InvalidCsp("arity must be in 1..n");
  if (csp.q > 12) throw InvalidCsp("arity too large");
  for (std::size_t j = 0; j < csp.m(); ++j) {
    const auto& c = csp.constraints[j];
    const std::string where = "constraint " + std::to_string(j + 1) + ": ";
    if (c.variables.size() != static_cast<std::size_t>(csp.q)) throw InvalidCsp(where + "wrong arity");
    std::set<int> seen;
    for (int v : c.variables) {
      if (v < 0 || v >= csp.n) throw InvalidCsp(where + "variable out of range");
      if (!seen.insert(v).second) throw InvalidCsp(where + "variable repeated");
    }
    if (c.accepted.empty() || c.accepted.size() > domain_power(csp.q))
      throw InvalidCsp(where + "accepted list size out of range");
    std::set<Tuple> distinct;
    for (const auto& t : c.accepted) {
      if (t.size() != static_cast<std::size_t>(csp.q)) throw InvalidCsp(where + "tuple has wrong length");
      for (auto x : t)
        if (x >= kCspDomain) throw InvalidCsp(where + "value outside the domain");
      if (!distinct.insert(t).second) throw InvalidCsp(where + "repeated tuple");
    }
  }
}

inline bool satisfies(const CspConstraint& c, const std::vector<int>& assignment, const Tuple& t) {
  for (std::size_t x = 0; x < c.variables.size(); ++x)
    if (assignment[static_cast<std::size_t>(c.variables[x])] != t[x]) return false;
  return true;
}

inline bool satisfies(const CspInstance& csp, const std::vector<int>& assignment) {
  for (const auto& c : csp.constraints)
    if (std::none_of(c.accepted.begin(), c.accepted.end(),
                     [&](const Tuple& t) { return satisfies(c, assignment, t); }))
      return false;
  return true;
}

// Text format:
//   csp <n> <q> <m>
//   c <v_1> ... <v_q> <C>      (1-indexed variables)
//   <C lines of q values>
inline CspInstance parse_csp(std::istream& in) {
  std::vector<std::pair<std::vector<std::string>, std::size_t>> lines;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::is_skippable(line)) continue;
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    lines.emplace_back(std::move(tok), line_no);
  }
  auto as_int = [](const std::string& s, std::size_t ln) {
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != s.size()) throw ParseError(ParseErrorKind::MalformedLine, ln, "expected an integer");
    return v;
  };

  std::size_t at = 0;
  if (lines.empty() || lines[0].first.size() != 4 || lines[0].first[0] != "csp")
    throw ParseError(ParseErrorKind::MalformedHeader, lines.empty() ? 1 : lines[0].second);
  CspInstance csp;
  const std::size_t hl = lines[0].second;
  csp.n = static_cast<int>(as_int(lines[0].first[1], hl));
  csp.q = static_cast<int>(as_int(lines[0].first[2], hl));
  long long m = as_int(lines[0].first[3], hl);
  if (csp.n < 1 || csp.q < 1 || m < 0) throw ParseError(ParseErrorKind::MalformedHeader, hl);
  ++at;
  for (long long j = 0; j < m; ++j) {
    if (at >= lines.size()) throw ParseError(ParseErrorKind::MalformedLine, line_no + 1, "missing constraint");
    const auto& [tok, ln] = lines[at++];
    if (tok.empty() || tok[0] != "c" || tok.size() != static_cast<std::size_t>(csp.q) + 2)
      throw ParseError(ParseErrorKind::MalformedLine, ln, "expected `c <vars> <count>`");
    CspConstraint c;
    for (int x = 0; x < csp.q; ++x) {
      long long v = as_int(tok[static_cast<std::size_t>(x) + 1], ln);
      if (v < 1 || v > csp.n) throw ParseError(ParseErrorKind::VertexOutOfRange, ln, "variable index");
      c.variables.push_back(static_cast<int>(v - 1));
    }
    long long count = as_int(tok.back(), ln);
    if (count < 0) throw ParseError(ParseErrorKind::MalformedLine, ln, "negative tuple count");
    for (long long t = 0; t < count; ++t) {
      if (at >= lines.size()) throw ParseError(ParseErrorKind::MalformedLine, line_no + 1, "missing tuple");
      const auto& [vals, vl] = lines[at++];
      if (vals.size() != static_cast<std::size_t>(csp.q))
        throw ParseError(ParseErrorKind::MalformedLine, vl, "tuple has wrong length");
      Tuple tup;
      for (const auto& s : vals) {
        long long x = as_int(s, vl);
        if (x < 0 || x >= kCspDomain) throw ParseError(ParseErrorKind::MalformedLine, vl, "value outside 0..5");
        tup.push_back(static_cast<std::uint8_t>(x));
      }
      c.accepted.push_back(std::move(tup));
    }
    csp.constraints.push_back(std::move(c));
  }
  if (at != lines.size()) throw ParseError(ParseErrorKind::MalformedLine, lines[at].second, "trailing content");
  return csp;
}

inline CspInstance parse_csp(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_csp(in);
}

inline std::string serialize_csp(const CspInstance& csp) {
  std::ostringstream out;
  out << "csp " << csp.n << ' ' << csp.q << ' ' << csp.m() << '\n';
  for (const auto& c : csp.constraints) {
    out << 'c';
    for (int v : c.variables) out << ' ' << v + 1;
    out << ' ' << c.accepted.size() << '\n';
    for (const auto& t : c.accepted) {
      for (std::size_t x = 0; x < t.size(); ++x) out << (x ? " " : "") << int{t[x]};
      out << '\n';
    }
  }
  return out.str();
}

// Parses an assignment certificate: n whitespace-separated values in 0..5.
inline std::vector<int> parse_assignment(std::istream& in) {
  std::vector<int> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::is_skippable(line)) continue;
    std::istringstream ls(line);
    long long v;
    while (ls >> v) out.push_back(static_cast<int>(v));
    if (!ls.eof()) throw ParseError(ParseErrorKind::MalformedLine, line_no, "expected integers");
  }
  return out;
}

// Random satisfiable instance: a hidden assignment is drawn first and every
// constraint accepts its restriction plus up to `max_accepted - 1` other
// tuples (exactly that many with `exact_count`). Keeps C_j <= 6^q - 1 when q
// allows it.
inline std::pair<CspInstance, std::vector<int>> random_satisfiable_csp(int n, int q, int m, int max_accepted,
                                                                       std::mt19937_64& rng,
                                                                       bool exact_count = false) {
  CspInstance csp;
  csp.n = n;
  csp.q = q;
  std::vector<int> hidden(static_cast<std::size_t>(n));
  for (auto& x : hidden) x = static_cast<int>(rng() % kCspDomain);
  const auto space = domain_power(q);
  const auto cap = std::min<std::uint64_t>(static_cast<std::uint64_t>(max_accepted), space > 1 ? space - 1 : 1);
  for (int j = 0; j < m; ++j) {
    CspConstraint c;
    std::vector<int> vars(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) vars[static_cast<std::size_t>(v)] = v;
    for (int x = 0; x < q; ++x) {
      auto pick = static_cast<std::size_t>(x) + rng() % (vars.size() - static_cast<std::size_t>(x));
      std::swap(vars[static_cast<std::size_t>(x)], vars[pick]);
      c.variables.push_back(vars[static_cast<std::size_t>(x)]);
    }
    std::set<Tuple> chosen;
    Tuple truth;
    for (int v : c.variables) truth.push_back(static_cast<std::uint8_t>(hidden[static_cast<std::size_t>(v)]));
    chosen.insert(truth);
    const auto want = exact_count ? cap : 1 + rng() % cap;
    while (chosen.size() < want) {
      Tuple t;
      for (int x = 0; x < q; ++x) t.push_back(static_cast<std::uint8_t>(rng() % kCspDomain));
      chosen.insert(t);
    }
    c.accepted.assign(chosen.begin(), chosen.end());
    for (std::size_t i = c.accepted.size(); i > 1; --i) std::swap(c.accepted[i - 1], c.accepted[rng() % i]);
    csp.constraints.push_back(std::move(c));
  }
  return {std::move(csp), std::move(hidden)};
}

}  // namespace udom
