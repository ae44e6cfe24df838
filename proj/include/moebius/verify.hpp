#pragma once

#include <map>
#include <random>
#include <sstream>

#include "json_io.hpp"

namespace moebius {
namespace verify {

/// Shared graph/diameter cache for a verification run.
struct Context {
  int jobs = 1;
  std::uint64_t seed = 12345;
  std::uint64_t memory_cap_mb = 0;
  std::map<std::pair<int, int>, FlipGraph> graphs;
  std::map<std::pair<int, int>, DiameterResult> diameters;

  const FlipGraph& graph(int n, GraphMode mode) {
    auto key = std::make_pair(n, (int)mode);
    auto it = graphs.find(key);
    if (it == graphs.end()) {
      EnumerateOptions opt;
      opt.jobs = jobs;
      opt.memory_cap_mb = memory_cap_mb;
      it = graphs.emplace(key, enumerate_graph(n, mode, opt)).first;
    }
    return it->second;
  }
  const DiameterResult& diameter(int n, GraphMode mode) {
    auto key = std::make_pair(n, (int)mode);
    auto it = diameters.find(key);
    if (it == diameters.end())
      it = diameters.emplace(key, graph_diameter(graph(n, mode), jobs)).first;
    return it->second;
  }
};

inline std::string fmt_range(int lo, int hi) {
  return "[" + std::to_string(lo) + "," + std::to_string(hi) + "]";
}

// ---- diameter bounds -------------------------------------------------------

inline CheckResult thm_diameter_bounds(Context& cx, int n) {
  int d = cx.diameter(n, GraphMode::Full).value;
  int lo = (5 * n) / 2 - 2, hi = (5 * n) / 2;
  return {"exact diam F(M_n) within [floor(5n/2)-2, floor(5n/2)]", n, fmt_range(lo, hi),
          std::to_string(d), lo <= d && d <= hi};
}

inline CheckResult thm_family_distance(Context& cx, int n) {
  const FlipGraph& g = cx.graph(n, GraphMode::Full);
  int d = n == 1 ? 0 : graph_distance(g, build_A(n, '-'), build_A(n, '+'));
  int lo = (5 * n) / 2 - 2;
  return {"d(A_n^-, A_n^+) >= floor(5n/2)-2", n, ">=" + std::to_string(lo),
          std::to_string(d), d >= lo};
}

inline CheckResult family_increment(Context& cx, int n) {
  const FlipGraph& g = cx.graph(n, GraphMode::Full);
  const FlipGraph& gp = cx.graph(n - 1, GraphMode::Full);
  int d = graph_distance(g, build_A(n, '-'), build_A(n, '+'));
  int dp = n - 1 == 1 ? 0 : graph_distance(gp, build_A(n - 1, '-'), build_A(n - 1, '+'));
  return {"d(A_n^-, A_n^+) >= d(A_{n-1}^-, A_{n-1}^+) + 2", n,
          ">=" + std::to_string(dp + 2), std::to_string(d), d >= dp + 2};
}

inline CheckResult diameter_monotone(Context& cx, int nMax) {
  bool ok = true;
  std::string obs;
  int prev = 0;
  for (int n = 1; n <= nMax; ++n) {
    int d = cx.diameter(n, GraphMode::Full).value;
    if (d < prev) ok = false;
    obs += (n > 1 ? "," : "") + std::to_string(d);
    prev = d;
  }
  return {"diam F(M_n) is nondecreasing in n", nMax, "monotone", obs, ok};
}

// ---- central triangles -----------------------------------------------------

inline CheckResult thm_central_exists(Context& cx, int n) {
  const FlipGraph& g = cx.graph(n, GraphMode::Full);
  size_t bad = 0;
  for (size_t v = 0; v < g.vertices(); ++v) {
    Triangulation t = g.triangulation_of((int)v);
    try {
      find_central(t);
    } catch (const Error&) {
      bad++;
    }
  }
  return {"every triangulation has a central triangle", n, "0 exceptions",
          std::to_string(bad) + " exceptions", bad == 0};
}

inline CheckResult central_length_invariant(Context& cx, int n) {
  const FlipGraph& g = cx.graph(n, GraphMode::Full);
  size_t bad = 0;
  for (size_t v = 0; v < g.vertices(); ++v) {
    Triangulation T = g.triangulation_of((int)v);
    for (const Triangle& t : T.triangles()) {
      int s = triangle_length_sum(t, n);
      if (s > n) bad++;
      bool central = has_nonsep_arc(t) && s == n;
      if (central != is_central(T, t)) bad++;
    }
  }
  return {"face length sums stay <= n and centrality matches the definition", n,
          "0 exceptions", std::to_string(bad) + " exceptions", bad == 0};
}

inline CheckResult lemma_unique_central(Context& cx, int n) {
  const FlipGraph& g = cx.graph(n, GraphMode::Full);
  size_t bad = 0;
  for (size_t v = 0; v < g.vertices(); ++v) {
    Triangulation T = g.triangulation_of((int)v);
    // a vertex carrying a non-separating loop and no other non-separating arc
    for (Point u = 0; u < n; ++u) {
      if (!T.has_arc(nonsep_loop(u))) continue;
      bool other = false;
      for (const auto& c : T.interior_classes())
        if (c.is_nonsep() && !(c == nonsep_loop(u)) && c.touches(u)) other = true;
      if (other) continue;
      if (nonsep_count(T) != 1) bad++;
      int centrals = 0;
      for (const Triangle& t : T.triangles())
        if (has_nonsep_arc(t) && triangle_length_sum(t, n) == n) centrals++;
      if (centrals != 1) bad++;
    }
  }
  return {"lone non-separating loops force a unique central triangle", n, "0 exceptions",
          std::to_string(bad) + " exceptions", bad == 0};
}

// ---- constructive paths ----------------------------------------------------

inline CheckResult constructive_paths_exhaustive(Context& cx, int n) {
  const FlipGraph& g = cx.graph(n, GraphMode::Full);
  size_t bad = 0, count = 0;
  int budget = (5 * n) / 2;
  for (size_t a = 0; a < g.vertices(); ++a) {
    Triangulation ta = g.triangulation_of((int)a);
    auto dist = bfs_distances(g, (int)a);
    for (size_t b = 0; b < g.vertices(); ++b) {
      Triangulation tb = g.triangulation_of((int)b);
      FlipPath p = upper_bound_path(ta, tb);
      count++;
      if ((int)p.length() > budget || (int)p.length() < dist[b]) bad++;
    }
  }
  return {"constructive paths validate with length <= floor(5n/2), all pairs", n,
          "<=" + std::to_string(budget),
          std::to_string(bad) + " failures / " + std::to_string(count), bad == 0};
}

inline CheckResult constructive_paths_random(Context& cx, int n, int pairs) {
  std::mt19937_64 rng(cx.seed + n);
  size_t bad = 0;
  int budget = (5 * n) / 2;
  for (int i = 0; i < pairs; ++i) {
    Triangulation a = random_triangulation(n, rng);
    Triangulation b = random_triangulation(n, rng);
    FlipPath p = upper_bound_path(a, b);
    if ((int)p.length() > budget) bad++;
  }
  return {"constructive paths validate with length <= floor(5n/2), random pairs", n,
          "<=" + std::to_string(budget),
          std::to_string(bad) + " failures / " + std::to_string(pairs), bad == 0};
}

inline CheckResult connect_hub_bound(Context&, int n) {
  size_t bad = 0, count = 0;
  for (Point u = 0; u < n && u < 1; ++u) {  // hub position is symmetric; u = 0 suffices
    for (int gv = 1; gv <= n - 1; ++gv)
      for (int gw = gv; gw <= n - 1; ++gw)
        for (int gv2 = 1; gv2 <= n - 1; ++gv2)
          for (int gw2 = gv2; gw2 <= n - 1; ++gw2) {
            Triangulation c1 = build_C(n, u, imod(u + gv, n), imod(u + gw, n));
            Triangulation c2 = build_C(n, u, imod(u + gv2, n), imod(u + gw2, n));
            FlipPath p = connect_C(c1, c2);
            count++;
            if ((int)p.length() > std::max(gw, gw2) + 1) bad++;
          }
  }
  return {"hub connector length <= max(d^-(u,w), d^-(u,w')) + 1", n, "per pair",
          std::to_string(bad) + " failures / " + std::to_string(count), bad == 0};
}

// ---- simplicial ------------------------------------------------------------

inline CheckResult simplicial_empty_below5(Context& cx, int n) {
  const FlipGraph& g = cx.graph(n, GraphMode::Full);
  size_t found = 0;
  for (size_t v = 0; v < g.vertices(); ++v)
    if (is_simplicial(g.triangulation_of((int)v))) found++;
  return {"no simplicial triangulations exist", n, "0", std::to_string(found), found == 0};
}

inline CheckResult simplicial_unique_at5(Context& cx) {
  const FlipGraph& g = cx.graph(5, GraphMode::Simplicial);
  // the pentagram: the five non-separating chords between next-nearest points
  std::vector<ArcClass> pent;
  for (Point u = 0; u < 5; ++u) pent.push_back(nonsep_chord(u, imod(u + 2, 5)));
  bool match = g.vertices() == 1 &&
               g.key[0] == Triangulation::build(5, pent).key();
  return {"M_5 has exactly one simplicial triangulation, the chord pentagram", 5, "1",
          std::to_string(g.vertices()), match};
}

inline CheckResult simplicialize_sweep(Context& cx, int n) {
  const FlipGraph& g = cx.graph(n, GraphMode::Full);
  size_t bad = 0;
  for (size_t v = 0; v < g.vertices(); ++v) {
    Triangulation t = g.triangulation_of((int)v);
    FlipPath p = simplicialize(t);
    if (p.length() > 7 || !is_simplicial(p.end)) bad++;
  }
  return {"simplicialize reaches a simplicial triangulation in <= 7 flips", n, "<=7",
          std::to_string(bad) + " failures / " + std::to_string(g.vertices()), bad == 0};
}

inline CheckResult simplicial_radius(Context& cx, int n) {
  int r = radius_to_simplicial(cx.graph(n, GraphMode::Full));
  return {"graph radius to the simplicial subset <= 7", n, "<=7", std::to_string(r), r <= 7};
}

inline CheckResult simplicial_diameter_bounds(Context& cx, int n) {
  int ds = cx.diameter(n, GraphMode::Simplicial).value;
  int df = cx.diameter(n, GraphMode::Full).value;
  int lo1 = df - 14, lo2 = (5 * n) / 2 - 16;
  bool ok = ds >= lo1 && ds >= lo2;
  return {"diam F*(M_n) >= diam F(M_n) - 14 and >= floor(5n/2)-16", n,
          ">=" + std::to_string(std::max(lo1, lo2)), std::to_string(ds), ok};
}

inline CheckResult simplicial_connected(Context& cx, int n) {
  const FlipGraph& full = cx.graph(n, GraphMode::Full);
  auto mask = simplicial_mask(full);
  size_t cnt = 0;
  for (char m : mask) cnt += m;
  bool conn = induced_connected(full, mask);
  bool closure = cx.graph(n, GraphMode::Simplicial).vertices() == cnt;
  return {"F*(M_n) is connected and flip closure reaches all simplicial vertices", n,
          "connected", std::to_string(cnt) + " vertices, connected=" + std::to_string(conn),
          conn && closure};
}

inline CheckResult ear_reduction_stays_simplicial(Context& cx, int n) {
  // whenever a reduction vertex exists for a simplicial pair, the star flips
  // must stay inside the simplicial subgraph (checked inside ear_reduction)
  const FlipGraph& gs = cx.graph(n, GraphMode::Simplicial);
  size_t applied = 0, failures = 0;
  std::mt19937_64 rng(cx.seed + 77 * n);
  size_t total = gs.vertices();
  auto tryPair = [&](int a, int b) {
    Triangulation ta = gs.triangulation_of(a), tb = gs.triangulation_of(b);
    try {
      auto [pm, pp, u] = ear_reduction(ta, tb);
      applied++;
      (void)pm;
      (void)pp;
      (void)u;
    } catch (const Error& e) {
      if (e.code() != Errc::NoReductionVertex) failures++;
    }
  };
  if (total * total <= 4096) {
    for (size_t a = 0; a < total; ++a)
      for (size_t b = 0; b < total; ++b) tryPair((int)a, (int)b);
  } else {
    for (int i = 0; i < 4096; ++i)
      tryPair((int)(rng() % total), (int)(rng() % total));
  }
  return {"ear reduction keeps intermediates simplicial whenever it applies", n,
          "0 failures",
          std::to_string(failures) + " failures / " + std::to_string(applied) + " applied",
          failures == 0};
}

// ---- structural invariants --------------------------------------------------

inline CheckResult structural_sweep(Context& cx, int n) {
  const FlipGraph& g = cx.graph(n, GraphMode::Full);
  size_t bad = 0;
  for (size_t v = 0; v < g.vertices(); ++v) {
    Triangulation T = g.triangulation_of((int)v);
    if ((int)T.faces().size() != n || (int)T.interior_classes().size() != n) bad++;
    // round trip through class extraction
    if (!(Triangulation::build(n, T.interior_classes()) == T)) bad++;
    for (const Triangle& t : T.triangles()) {
      auto d = t.distinct_arcs();
      int ns = 0;
      for (const auto& a : d) ns += a.is_nonsep();
      if (d.size() < 2) bad++;
      if (d.size() == 2) {
        if (!(d[0].is_loop() && d[1].is_loop() && ns == 1)) bad++;
      } else if (d.size() == 3) {
        if (ns != 0 && ns != 2) bad++;
      }
    }
    for (const auto& cls : T.interior_classes()) {
      if (T.is_separating(cls) != !cls.is_nonsep()) bad++;
      if (!T.flippable(cls)) continue;
      auto [t2, intro] = T.flip(cls);
      auto [t3, back] = t2.flip(intro);
      if (!(t3 == T) || !(back == cls)) bad++;
    }
  }
  return {"face counts, face patterns, round trips and flip involutions hold", n,
          "0 exceptions", std::to_string(bad) + " exceptions", bad == 0};
}

inline CheckResult a_family_recursion(Context&, int nMax) {
  size_t bad = 0;
  for (int n = 2; n <= nMax; ++n) {
    if (!(build_A(n, '-').contract(a_family_alpha(n)) == build_A(n - 1, '-'))) bad++;
    if (!(build_A(n, '+').contract(a_family_alpha(n)) == build_A(n - 1, '+'))) bad++;
  }
  return {"contracting the designated arc maps A_n to A_{n-1}", nMax,
          "identity for 2<=n<=" + std::to_string(nMax),
          std::to_string(bad) + " failures", bad == 0};
}

/// Minimum number of flips incident to a boundary arc along any geodesic,
/// compared against the contracted distance.
inline CheckResult contraction_inequality(Context& cx, int n) {
  const FlipGraph& g = cx.graph(n, GraphMode::Full);
  const FlipGraph& gc = cx.graph(n - 1, GraphMode::Full);
  size_t bad = 0;
  // contracted ids and per-edge incidence masks
  std::vector<std::array<int, 16>> ctr(g.vertices());
  std::vector<Triangulation> tri;
  tri.reserve(g.vertices());
  for (size_t v = 0; v < g.vertices(); ++v) tri.push_back(g.triangulation_of((int)v));
  for (size_t v = 0; v < g.vertices(); ++v)
    for (int b = 0; b < n; ++b)
      ctr[v][b] = gc.id_of(tri[v].contract(boundary_arc(n, b)));
  // neighbor lists with incidence bitmask over boundary arcs
  struct Edge {
    int to;
    unsigned mask;
  };
  std::vector<std::vector<Edge>> adj(g.vertices());
  for (size_t v = 0; v < g.vertices(); ++v) {
    const Triangulation& T = tri[v];
    for (const auto& cls : T.interior_classes()) {
      if (!T.flippable(cls)) continue;
      auto [nt, intro] = T.flip(cls);
      int w = g.id_of(nt);
      unsigned mask = 0;
      int id = T.find_arc(cls);
      int f1 = T.arcs()[id].slot[0].face, f2 = T.arcs()[id].slot[1].face;
      for (int b = 0; b < n; ++b) {
        int bf = T.arcs()[T.find_arc(boundary_arc(n, b))].slot[0].face;
        if (bf == f1 || bf == f2) mask |= 1u << b;
      }
      adj[v].push_back({w, mask});
    }
  }
  auto cdist = [&](int a, int b) {
    auto d = bfs_distances(gc, a);
    return d[b];
  };
  std::vector<std::vector<int>> cAll(gc.vertices());
  for (size_t v = 0; v < gc.vertices(); ++v) cAll[v] = bfs_distances(gc, (int)v);
  for (size_t s = 0; s < g.vertices(); ++s) {
    auto dist = bfs_distances(g, (int)s);
    int maxd = 0;
    for (int x : dist) maxd = std::max(maxd, x);
    std::vector<std::vector<int>> order(maxd + 1);
    for (size_t v = 0; v < g.vertices(); ++v) order[dist[v]].push_back((int)v);
    for (int b = 0; b < n; ++b) {
      std::vector<int> fmin(g.vertices(), 1 << 20);
      fmin[s] = 0;
      for (int d = 0; d < maxd; ++d)
        for (int v : order[d])
          for (const Edge& e : adj[v])
            if (dist[e.to] == d + 1)
              fmin[e.to] = std::min(fmin[e.to], fmin[v] + (int)((e.mask >> b) & 1u));
      for (size_t t = 0; t < g.vertices(); ++t)
        if (dist[t] < cAll[ctr[s][b]][ctr[t][b]] + fmin[t]) bad++;
    }
  }
  (void)cdist;
  return {"d(T-,T+) >= d(T-\\b, T+\\b) + min geodesic flips at b", n, "0 exceptions",
          std::to_string(bad) + " exceptions", bad == 0};
}

}  // namespace verify
}  // namespace moebius
