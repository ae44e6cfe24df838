#pragma once

#include <chrono>
#include <cstdint>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "constructions.hpp"
#include "flip_graph.hpp"

namespace moebius {

using nlohmann::json;

// --------------------------- arc / triangulation ---------------------------

inline json arc_to_json(const ArcClass& a, int n) {
  json j;
  j["kind"] = kind_name(a.kind);
  switch (a.kind) {
    case ArcKind::Boundary:
      j["u"] = a.u;
      j["v"] = imod(a.u + 1, n);
      break;
    case ArcKind::SepChord: {
      Point lo = std::min(a.u, a.v), hi = std::max(a.u, a.v);
      j["u"] = lo;
      j["v"] = hi;
      j["disk_side"] = (a.u == lo) ? "cw" : "ccw";
      break;
    }
    case ArcKind::NonSepChord:
      j["u"] = a.u;
      j["v"] = a.v;
      break;
    case ArcKind::SepLoop:
    case ArcKind::NonSepLoop:
      j["u"] = a.u;
      break;
  }
  return j;
}

inline ArcClass arc_from_json(const json& j, int n) {
  require(j.is_object() && j.contains("kind") && j.contains("u"), Errc::ParseError,
          "arc needs kind and u");
  std::string k = j.at("kind").get<std::string>();
  int u = j.at("u").get<int>();
  require(u >= 0 && u < n, Errc::ParseError, "arc point out of range");
  auto v_of = [&]() {
    require(j.contains("v"), Errc::ParseError, "chord needs v");
    int v = j.at("v").get<int>();
    require(v >= 0 && v < n, Errc::ParseError, "arc point out of range");
    return v;
  };
  if (k == "boundary") return boundary_arc(n, u);
  if (k == "sep_loop") return sep_loop(u);
  if (k == "nonsep_loop") return nonsep_loop(u);
  if (k == "nonsep_chord") return nonsep_chord(u, v_of());
  if (k == "sep_chord") {
    int v = v_of();
    std::string side = j.value("disk_side", "cw");
    require(side == "cw" || side == "ccw", Errc::ParseError, "bad disk_side");
    Point lo = std::min(u, v), hi = std::max(u, v);
    ArcClass c = (side == "cw") ? sep_chord_cw(lo, hi) : sep_chord_cw(hi, lo);
    require(valid_class(n, c), Errc::ParseError, "invalid sep_chord");
    return c;
  }
  fail(Errc::ParseError, "unknown arc kind: " + k);
}

inline json triangulation_to_json(const Triangulation& t) {
  json arcs = json::array();
  for (Point u = 0; u < t.n(); ++u) arcs.push_back(arc_to_json(boundary_arc(t.n(), u), t.n()));
  for (const auto& c : t.interior_classes()) arcs.push_back(arc_to_json(c, t.n()));
  return json{{"n", t.n()}, {"arcs", arcs}};
}

inline Triangulation triangulation_from_json(const json& j) {
  require(j.is_object() && j.contains("n") && j.contains("arcs"), Errc::ParseError,
          "triangulation needs n and arcs");
  int n = j.at("n").get<int>();
  require(n >= 1, Errc::ParseError, "n must be positive");
  std::vector<ArcClass> interior;
  for (const auto& aj : j.at("arcs")) {
    ArcClass a = arc_from_json(aj, n);
    if (a.is_interior()) interior.push_back(a);  // boundary arcs are implicit
  }
  return Triangulation::build(n, std::move(interior));
}

// -------------------------------- paths ------------------------------------

inline json path_to_json(const FlipPath& p) {
  int n = p.start.n();
  json steps = json::array();
  for (const auto& s : p.steps)
    steps.push_back(json{{"flip", arc_to_json(s.flipped, n)},
                         {"introduce", arc_to_json(s.introduced, n)}});
  return json{{"n", n}, {"start", triangulation_to_json(p.start)}, {"steps", steps}};
}

inline FlipPath path_from_json(const json& j) {
  require(j.is_object() && j.contains("n") && j.contains("start") && j.contains("steps"),
          Errc::ParseError, "path needs n, start, steps");
  int n = j.at("n").get<int>();
  FlipPath p = empty_path(triangulation_from_json(j.at("start")));
  require(p.start.n() == n, Errc::ParseError, "path n disagrees with start");
  Triangulation cur = p.start;
  for (const auto& sj : j.at("steps")) {
    ArcClass f = arc_from_json(sj.at("flip"), n);
    auto [nxt, intro] = cur.flip(f);
    ArcClass want = arc_from_json(sj.at("introduce"), n);
    require(intro == want, Errc::ParseError, "recorded introduced arc is wrong");
    p.steps.push_back({f, intro});
    cur = std::move(nxt);
  }
  p.end = cur;
  return p;
}

// ------------------------------- exports ------------------------------------

inline std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::string key_tag(const std::string& key) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)fnv1a(key));
  return std::string(buf, 8);
}

/// DOT export; vertex labels are canonical-key hash prefixes, optionally a
/// full JSON attribute per vertex.
inline void write_dot(std::ostream& os, const FlipGraph& g, bool fullJson = false) {
  os << "graph flipgraph_n" << g.n << " {\n";
  for (size_t v = 0; v < g.vertices(); ++v) {
    os << "  v" << v << " [label=\"" << key_tag(g.key[v]) << "\"";
    if (fullJson)
      os << " json=" << json(triangulation_to_json(g.triangulation_of((int)v)).dump()).dump();
    os << "];\n";
  }
  for (size_t v = 0; v < g.vertices(); ++v)
    for (int w : g.adj[v])
      if ((size_t)w > v) os << "  v" << v << " -- v" << w << ";\n";
  os << "}\n";
}

struct GraphStats {
  int n = 0;
  GraphMode mode = GraphMode::Full;
  size_t vertices = 0, edges = 0;
  int diameter = -1;
  std::string witnessA, witnessB;  // canonical key tags
  double wall_ms = 0;
};

inline void write_csv_header(std::ostream& os) {
  os << "n,mode,vertices,edges,diameter,witness_a,witness_b,wall_ms\n";
}

inline void write_csv_row(std::ostream& os, const GraphStats& s) {
  os << s.n << ',' << (s.mode == GraphMode::Full ? "full" : "simplicial") << ','
     << s.vertices << ',' << s.edges << ',' << s.diameter << ',' << s.witnessA << ','
     << s.witnessB << ',' << s.wall_ms << "\n";
}

// ------------------------------- reports ------------------------------------

struct CheckResult {
  std::string claim;
  int n = 0;
  std::string bound;
  std::string observed;
  bool pass = false;
};

struct VerificationReport {
  std::string suite;
  int n_min = 1, n_max = 0;
  std::uint64_t seed = 0;
  std::vector<CheckResult> checks;
  double wall_ms = 0;

  bool pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
  void add(std::string claim, int n, std::string bound, std::string observed, bool ok) {
    checks.push_back({std::move(claim), n, std::move(bound), std::move(observed), ok});
  }
};

inline json report_to_json(const VerificationReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks)
    checks.push_back(json{{"claim", c.claim},
                          {"n", c.n},
                          {"bound", c.bound},
                          {"observed", c.observed},
                          {"pass", c.pass}});
  return json{{"schema", "moebius-flip/1"}, {"suite", r.suite},
              {"n_range", json::array({r.n_min, r.n_max})},
              {"seed", r.seed},         {"checks", checks},
              {"timings_ms", json{{"total", r.wall_ms}}},
              {"pass", r.pass()}};
}

inline void write_report_csv(std::ostream& os, const VerificationReport& r) {
  os << "suite,claim,n,bound,observed,pass\n";
  for (const auto& c : r.checks)
    os << r.suite << ',' << '"' << c.claim << '"' << ',' << c.n << ',' << '"' << c.bound
       << '"' << ',' << '"' << c.observed << '"' << ',' << (c.pass ? 1 : 0) << "\n";
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), Errc::ParseError, "cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    fail(Errc::ParseError, path + ": " + e.what());
  }
  return j;
}

}  // namespace moebius
