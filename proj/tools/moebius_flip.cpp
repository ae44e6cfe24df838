// moebius_flip: enumerate flip graphs of Moebius strip triangulations,
// compute flip paths, and run the theorem-verification suites.

#include <CLI11.hpp>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "moebius/moebius.hpp"
#include "moebius/verify.hpp"

namespace fs = std::filesystem;
using namespace moebius;

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

// ---- optional on-disk graph cache (MOEBIUS_FLIP_CACHE) ----------------------

std::string cache_path(int n, GraphMode mode) {
  const char* dir = std::getenv("MOEBIUS_FLIP_CACHE");
  if (!dir || !*dir) return {};
  return std::string(dir) + "/graph_n" + std::to_string(n) +
         (mode == GraphMode::Full ? "_full" : "_simplicial") + ".bin";
}

bool load_graph(const std::string& path, FlipGraph& g) {
  std::ifstream in(path, std::ios::binary);
  if (!in.good()) return false;
  auto u32 = [&]() {
    std::uint32_t x = 0;
    in.read(reinterpret_cast<char*>(&x), 4);
    return x;
  };
  if (u32() != 0x4d464731u) return false;  // "MFG1"
  g.n = (int)u32();
  g.mode = u32() ? GraphMode::Simplicial : GraphMode::Full;
  g.seed = (int)u32();
  std::uint32_t V = u32();
  g.key.resize(V);
  g.adj.assign(V, {});
  for (std::uint32_t v = 0; v < V; ++v) {
    std::uint32_t len = u32();
    g.key[v].resize(len);
    in.read(g.key[v].data(), len);
    g.id.emplace(g.key[v], (int)v);
  }
  for (std::uint32_t v = 0; v < V; ++v) {
    std::uint32_t deg = u32();
    g.adj[v].resize(deg);
    for (auto& w : g.adj[v]) w = (int)u32();
  }
  return in.good();
}

void save_graph(const std::string& path, const FlipGraph& g) {
  std::ofstream out(path, std::ios::binary);
  if (!out.good()) return;
  auto u32 = [&](std::uint32_t x) { out.write(reinterpret_cast<const char*>(&x), 4); };
  u32(0x4d464731u);
  u32((std::uint32_t)g.n);
  u32(g.mode == GraphMode::Simplicial ? 1 : 0);
  u32((std::uint32_t)g.seed);
  u32((std::uint32_t)g.vertices());
  for (const auto& k : g.key) {
    u32((std::uint32_t)k.size());
    out.write(k.data(), (std::streamsize)k.size());
  }
  for (const auto& a : g.adj) {
    u32((std::uint32_t)a.size());
    for (int w : a) u32((std::uint32_t)w);
  }
}

FlipGraph enumerate_cached(int n, GraphMode mode, const EnumerateOptions& opt) {
  std::string path = cache_path(n, mode);
  if (!path.empty()) {
    FlipGraph g;
    if (load_graph(path, g) && g.n == n && g.mode == mode) return g;
  }
  FlipGraph g = enumerate_graph(n, mode, opt);
  if (!path.empty()) save_graph(path, g);
  return g;
}

// ---- subcommands ------------------------------------------------------------

std::ostream& open_out(std::ofstream& file, const std::string& out) {
  if (out.empty()) return std::cout;
  file.open(out);
  require(file.good(), Errc::ParseError, "cannot write " + out);
  return file;
}

int cmd_enumerate(int n, bool simplicial, const std::string& out, const std::string& format,
                  int jobs, std::uint64_t capMb, bool dotFull) {
  auto t0 = Clock::now();
  EnumerateOptions opt;
  opt.jobs = jobs;
  opt.memory_cap_mb = capMb;
  GraphMode mode = simplicial ? GraphMode::Simplicial : GraphMode::Full;
  FlipGraph g = enumerate_cached(n, mode, opt);
  DiameterResult d = graph_diameter(g, jobs);
  GraphStats stats{n,
                   mode,
                   g.vertices(),
                   g.edges(),
                   d.value,
                   key_tag(g.key[d.a]),
                   key_tag(g.key[d.b]),
                   ms_since(t0)};
  std::ofstream file;
  std::ostream& os = open_out(file, out);
  if (format == "csv") {
    write_csv_header(os);
    write_csv_row(os, stats);
  } else if (format == "dot") {
    write_dot(os, g, dotFull);
  } else {
    json j{{"schema", "moebius-flip/1"},
           {"n", n},
           {"mode", simplicial ? "simplicial" : "full"},
           {"vertices", g.vertices()},
           {"edges", g.edges()},
           {"diameter", d.value},
           {"witness", json::array({key_tag(g.key[d.a]), key_tag(g.key[d.b])})},
           {"wall_ms", stats.wall_ms}};
    os << j.dump(2) << "\n";
  }
  std::cerr << "F" << (simplicial ? "*" : "") << "(M_" << n << "): " << g.vertices()
            << " vertices, " << g.edges() << " edges, diameter " << d.value << "\n";
  return 0;
}

int cmd_path(const std::string& fromFile, const std::string& toFile,
             const std::string& strategy, const std::string& out) {
  Triangulation a = triangulation_from_json(read_json_file(fromFile));
  Triangulation b = triangulation_from_json(read_json_file(toFile));
  require(a.n() == b.n(), Errc::SizeMismatch, "triangulations have different n");
  FlipPath p;
  if (strategy == "constructive") {
    p = upper_bound_path(a, b);
  } else {
    p = implicit_geodesic(a, b);
  }
  validate_path(p);
  std::ofstream file;
  std::ostream& os = open_out(file, out);
  os << path_to_json(p).dump(2) << "\n";
  std::cerr << strategy << " path of length " << p.length() << "\n";
  return 0;
}

VerificationReport run_suite(verify::Context& cx, const std::string& suite, int nMax) {
  using namespace verify;
  VerificationReport r;
  r.suite = suite;
  r.n_min = 1;
  r.n_max = nMax;
  r.seed = cx.seed;
  auto t0 = Clock::now();
  bool all = suite == "all";
  if (suite == "bounds" || all) {
    for (int n = 1; n <= nMax; ++n) r.checks.push_back(thm_diameter_bounds(cx, n));
    for (int n = 1; n <= nMax; ++n) r.checks.push_back(thm_family_distance(cx, n));
    for (int n = 2; n <= std::min(nMax, 4); ++n)
      r.checks.push_back(constructive_paths_exhaustive(cx, n));
    for (int n = 5; n <= std::min(nMax + 2, 9); ++n)
      r.checks.push_back(constructive_paths_random(cx, n, 2000));
    for (int n = 2; n <= std::min(nMax + 2, 9); ++n)
      r.checks.push_back(connect_hub_bound(cx, n));
  }
  if (suite == "central" || all) {
    for (int n = 1; n <= nMax; ++n) {
      r.checks.push_back(thm_central_exists(cx, n));
      r.checks.push_back(central_length_invariant(cx, n));
      r.checks.push_back(lemma_unique_central(cx, n));
    }
  }
  if (suite == "simplicial" || all) {
    for (int n = 1; n <= std::min(nMax, 4); ++n)
      r.checks.push_back(simplicial_empty_below5(cx, n));
    if (nMax >= 5) r.checks.push_back(simplicial_unique_at5(cx));
    for (int n = 5; n <= nMax; ++n) {
      r.checks.push_back(simplicialize_sweep(cx, n));
      r.checks.push_back(simplicial_radius(cx, n));
      r.checks.push_back(simplicial_diameter_bounds(cx, n));
      r.checks.push_back(simplicial_connected(cx, n));
      r.checks.push_back(ear_reduction_stays_simplicial(cx, n));
    }
  }
  if (suite == "contraction" || all) {
    r.checks.push_back(a_family_recursion(cx, std::max(2, std::min(nMax + 2, 9))));
    for (int n = 2; n <= nMax; ++n) r.checks.push_back(family_increment(cx, n));
    r.checks.push_back(diameter_monotone(cx, nMax));
    for (int n = 2; n <= std::min(nMax, 5); ++n)
      r.checks.push_back(contraction_inequality(cx, n));
  }
  if (all) {
    for (int n = 1; n <= nMax; ++n) r.checks.push_back(structural_sweep(cx, n));
  }
  r.wall_ms = ms_since(t0);
  return r;
}

int cmd_verify(const std::string& suite, int nMax, int jobs, std::uint64_t seed,
               std::uint64_t capMb, const std::string& out, const std::string& format) {
  if (capMb > 0) {
    double bytes = vertex_count_bound(nMax) * (64.0 + 15.0 * nMax);
    require(bytes <= 1e6 * (double)capMb, Errc::BudgetExceeded,
            "estimated vertex count above the memory cap");
  }
  verify::Context cx;
  cx.jobs = jobs;
  cx.seed = seed;
  cx.memory_cap_mb = capMb;
  VerificationReport r = run_suite(cx, suite, nMax);
  std::ofstream file;
  std::ostream& os = open_out(file, out);
  if (format == "csv")
    write_report_csv(os, r);
  else
    os << report_to_json(r).dump(2) << "\n";
  for (const auto& c : r.checks)
    std::cerr << (c.pass ? "[PASS] " : "[FAIL] ") << c.claim << " (n=" << c.n
              << ", bound " << c.bound << ", observed " << c.observed << ")\n";
  std::cerr << (r.pass() ? "all checks passed" : "CHECK FAILURES PRESENT") << "\n";
  return r.pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"triangulations of the Moebius strip M_n and their flip graphs"};
  app.require_subcommand(1);

  auto* enumCmd = app.add_subcommand("enumerate", "enumerate a flip graph");
  int n = 0;
  bool simplicial = false, dotFull = false;
  std::string out, format = "json";
  int jobs = (int)std::thread::hardware_concurrency();
  if (jobs < 1) jobs = 1;
  std::uint64_t capMb = 0, seed = 12345;
  enumCmd->add_option("--n", n, "marked point count")->required()->check(CLI::PositiveNumber);
  enumCmd->add_flag("--simplicial", simplicial, "restrict to simplicial triangulations");
  enumCmd->add_option("--out", out, "output file (default stdout)");
  enumCmd->add_option("--format", format, "json, csv or dot")
      ->check(CLI::IsMember({"json", "csv", "dot"}));
  enumCmd->add_option("--jobs", jobs, "worker threads");
  enumCmd->add_option("--memory-cap-mb", capMb, "refuse enumerations estimated above this");
  enumCmd->add_flag("--dot-full", dotFull, "attach full triangulation JSON to DOT nodes");

  auto* pathCmd = app.add_subcommand("path", "flip path between two triangulations");
  std::string fromFile, toFile, strategy = "exact";
  pathCmd->add_option("--from", fromFile, "triangulation JSON file")->required();
  pathCmd->add_option("--to", toFile, "triangulation JSON file")->required();
  pathCmd->add_option("--strategy", strategy, "exact or constructive")
      ->check(CLI::IsMember({"exact", "constructive"}));
  pathCmd->add_option("--out", out, "output file (default stdout)");

  auto* verifyCmd = app.add_subcommand("verify", "run a verification suite");
  std::string suite = "all";
  int nMax = 5;
  verifyCmd->add_option("--suite", suite, "bounds, central, simplicial, contraction or all")
      ->check(CLI::IsMember({"bounds", "central", "simplicial", "contraction", "all"}));
  verifyCmd->add_option("--n-max", nMax, "largest n to verify")->check(CLI::PositiveNumber);
  verifyCmd->add_option("--jobs", jobs, "worker threads");
  verifyCmd->add_option("--seed", seed, "seed for randomized sweeps");
  verifyCmd->add_option("--memory-cap-mb", capMb, "budget guard for enumerations");
  verifyCmd->add_option("--out", out, "output file (default stdout)");
  verifyCmd->add_option("--format", format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (enumCmd->parsed())
      return cmd_enumerate(n, simplicial, out, format, jobs, capMb, dotFull);
    if (pathCmd->parsed()) return cmd_path(fromFile, toFile, strategy, out);
    if (verifyCmd->parsed())
      return cmd_verify(suite, nMax, jobs, seed, capMb, out, format);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    // check failures exit 1; usage, parse, size and budget problems exit 2
    switch (e.code()) {
      case Errc::ParseError:
      case Errc::SizeMismatch:
      case Errc::InvalidArgument:
      case Errc::InvalidSize:
      case Errc::BudgetExceeded:
      case Errc::EmptyGraph:
        return 2;
      default:
        return 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
