#pragma once

#include <atomic>
#include <cstdint>
#include <deque>
#include <mutex>
#include <thread>
#include <unordered_map>

#include "constructions.hpp"

namespace moebius {

enum class GraphMode { Full, Simplicial };

struct EnumerateOptions {
  int jobs = 1;
  std::uint64_t memory_cap_mb = 0;  // 0 = unlimited
};

/// Loose upper bound on the number of triangulations of M_n: each one is a
/// triangulation of the cut polygon over some non-separating arc.
inline double vertex_count_bound(int n) {
  double cat = 1;  // Catalan(n)
  for (int i = 0; i < n; ++i) cat = cat * 2 * (2 * i + 1) / (i + 2);
  return (n + n * (n - 1) / 2.0) * cat;
}

/// The flip-graph F(M_n), or its simplicial subgraph F_*(M_n). Vertices are
/// canonical keys; triangulations are reconstructed on demand.
struct FlipGraph {
  int n = 0;
  GraphMode mode = GraphMode::Full;
  std::vector<std::string> key;               // id -> canonical key
  std::unordered_map<std::string, int> id;    // key -> id
  std::vector<std::vector<int>> adj;          // sorted neighbor lists
  int seed = 0;

  size_t vertices() const { return key.size(); }
  size_t edges() const {
    size_t s = 0;
    for (const auto& a : adj) s += a.size();
    return s / 2;
  }
  Triangulation triangulation_of(int v) const { return Triangulation::decode(key[v]); }
  int id_of(const Triangulation& t) const {
    auto it = id.find(t.key());
    require(it != id.end(), Errc::VertexNotInGraph, "triangulation not in graph");
    return it->second;
  }
};

/// Exhaustive closure under flips from a seed triangulation. In simplicial
/// mode edges exist only between simplicial triangulations (the induced
/// subgraph); Edelman-Reiner connectivity makes the closure exhaustive.
inline FlipGraph enumerate_graph(int n, GraphMode mode, const EnumerateOptions& opt = {}) {
  require(n >= 1, Errc::InvalidSize, "n must be positive");
  if (mode == GraphMode::Simplicial)
    require(n >= 5, Errc::EmptyGraph, "no simplicial triangulations for n <= 4");
  if (opt.memory_cap_mb > 0) {
    double bytes = vertex_count_bound(n) * (64.0 + 15.0 * n);
    require(bytes <= 1e6 * (double)opt.memory_cap_mb, Errc::BudgetExceeded,
            "estimated graph size exceeds the memory cap");
  }
  FlipGraph g;
  g.n = n;
  g.mode = mode;
  Triangulation seed = build_A(n, '-');
  if (mode == GraphMode::Simplicial) seed = simplicialize(seed).end;
  g.key.push_back(seed.key());
  g.id.emplace(seed.key(), 0);
  g.adj.emplace_back();
  g.seed = 0;

  std::vector<Triangulation> frontier{seed};
  std::vector<int> frontierIds{0};
  const int jobs = std::max(1, opt.jobs);
  while (!frontier.empty()) {
    // expand the whole layer
    std::vector<std::vector<std::pair<int, Triangulation>>> found(jobs);
    auto work = [&](int w) {
      for (size_t i = w; i < frontier.size(); i += jobs) {
        const Triangulation& t = frontier[i];
        for (const auto& cls : t.interior_classes()) {
          if (!t.flippable(cls)) continue;
          auto [nt, intro] = t.flip(cls);
          if (mode == GraphMode::Simplicial && !is_simplicial(nt)) continue;
          found[w].push_back({frontierIds[i], std::move(nt)});
        }
      }
    };
    if (jobs == 1) {
      work(0);
    } else {
      std::vector<std::thread> ths;
      for (int w = 0; w < jobs; ++w) ths.emplace_back(work, w);
      for (auto& th : ths) th.join();
    }
    // deterministic ids: new keys of this layer sorted before assignment
    std::vector<std::pair<std::string, const Triangulation*>> fresh;
    for (const auto& lst : found)
      for (const auto& [from, t] : lst)
        if (!g.id.count(t.key())) fresh.push_back({t.key(), &t});
    std::sort(fresh.begin(), fresh.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<Triangulation> next;
    std::vector<int> nextIds;
    for (const auto& [k, tp] : fresh) {
      if (g.id.count(k)) continue;
      int nid = (int)g.key.size();
      g.id.emplace(k, nid);
      g.key.push_back(k);
      g.adj.emplace_back();
      next.push_back(*tp);
      nextIds.push_back(nid);
    }
    for (const auto& lst : found)
      for (const auto& [from, t] : lst) g.adj[from].push_back(g.id.at(t.key()));
    frontier = std::move(next);
    frontierIds = std::move(nextIds);
  }
  for (auto& a : g.adj) {
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
  }
  // flip reversibility makes the graph symmetric
  for (int v = 0; v < (int)g.adj.size(); ++v)
    for (int w : g.adj[v])
      check(std::binary_search(g.adj[w].begin(), g.adj[w].end(), v),
            "flip graph adjacency must be symmetric");
  return g;
}

inline std::vector<int> bfs_distances(const FlipGraph& g, int src) {
  std::vector<int> dist(g.vertices(), -1);
  std::deque<int> q{src};
  dist[src] = 0;
  while (!q.empty()) {
    int v = q.front();
    q.pop_front();
    for (int w : g.adj[v])
      if (dist[w] < 0) {
        dist[w] = dist[v] + 1;
        q.push_back(w);
      }
  }
  return dist;
}

inline int graph_distance(const FlipGraph& g, const Triangulation& a,
                          const Triangulation& b) {
  int s = g.id_of(a), t = g.id_of(b);
  auto d = bfs_distances(g, s);
  check(d[t] >= 0, "flip graph must be connected");
  return d[t];
}

inline int eccentricity(const FlipGraph& g, int v) {
  auto d = bfs_distances(g, v);
  int e = 0;
  for (int x : d) {
    check(x >= 0, "flip graph must be connected");
    e = std::max(e, x);
  }
  return e;
}

struct DiameterResult {
  int value = 0;
  int a = 0, b = 0;  // witness pair
};

/// Exact diameter by the iFUB scheme: eccentricities are scanned from the
/// outermost BFS layers of a central root inward, stopping once the
/// remaining layers cannot beat the best value found.
inline DiameterResult graph_diameter(const FlipGraph& g, int jobs = 1) {
  DiameterResult res;
  if (g.vertices() <= 1) return res;
  auto far = [&](int v) {
    auto d = bfs_distances(g, v);
    int best = v, bd = 0;
    for (int i = 0; i < (int)d.size(); ++i)
      if (d[i] > bd) {
        bd = d[i];
        best = i;
      }
    return std::make_pair(best, bd);
  };
  auto [u0, e0] = far(0);
  auto [u1, lbv] = far(u0);
  res = {lbv, u0, u1};
  // midpoint of a geodesic u0 -> u1 as root
  int root;
  {
    auto du0 = bfs_distances(g, u0), du1 = bfs_distances(g, u1);
    root = u0;
    for (int v = 0; v < (int)g.vertices(); ++v)
      if (du0[v] + du1[v] == lbv && std::abs(2 * du0[v] - lbv) <= 1) root = v;
  }
  auto dr = bfs_distances(g, root);
  int top = 0;
  for (int x : dr) top = std::max(top, x);
  std::vector<std::vector<int>> layers(top + 1);
  for (int v = 0; v < (int)g.vertices(); ++v) layers[dr[v]].push_back(v);
  std::mutex mu;
  for (int i = top; 2 * i > res.value; --i) {
    auto scan = [&](int w) {
      for (size_t k = w; k < layers[i].size(); k += std::max(1, jobs)) {
        int v = layers[i][k];
        auto d = bfs_distances(g, v);
        int bd = 0, bw = v;
        for (int x = 0; x < (int)d.size(); ++x)
          if (d[x] > bd) {
            bd = d[x];
            bw = x;
          }
        std::lock_guard<std::mutex> lock(mu);
        if (bd > res.value) res = {bd, v, bw};
      }
    };
    if (jobs <= 1) {
      scan(0);
    } else {
      std::vector<std::thread> ths;
      for (int w = 0; w < jobs; ++w) ths.emplace_back(scan, w);
      for (auto& th : ths) th.join();
    }
  }
  return res;
}

/// All geodesics between two triangulations, capped; each is validated.
inline std::vector<FlipPath> graph_geodesics(const FlipGraph& g, const Triangulation& a,
                                             const Triangulation& b, size_t cap = 64) {
  int s = g.id_of(a), t = g.id_of(b);
  auto dist = bfs_distances(g, s);
  std::vector<FlipPath> out;
  std::vector<int> stack{t};
  // DFS over the shortest-path DAG from t back to s
  std::function<void(int)> go = [&](int v) {
    if (out.size() >= cap) return;
    if (v == s) {
      FlipPath p = empty_path(a);
      Triangulation cur = a;
      for (int i = (int)stack.size() - 2; i >= 0; --i) {
        const std::string& want = g.key[stack[i]];
        bool done = false;
        for (const auto& cls : cur.interior_classes()) {
          if (!cur.flippable(cls)) continue;
          auto [nt, intro] = cur.flip(cls);
          if (nt.key() == want) {
            p.steps.push_back({cls, intro});
            cur = std::move(nt);
            done = true;
            break;
          }
        }
        check(done, "geodesic edge is not a flip");
      }
      p.end = cur;
      validate_path(p);
      out.push_back(std::move(p));
      return;
    }
    for (int w : g.adj[v])
      if (dist[w] == dist[v] - 1) {
        stack.push_back(w);
        go(w);
        stack.pop_back();
        if (out.size() >= cap) return;
      }
  };
  go(t);
  return out;
}

inline std::vector<char> simplicial_mask(const FlipGraph& g) {
  std::vector<char> mask(g.vertices(), 0);
  for (int v = 0; v < (int)g.vertices(); ++v)
    mask[v] = is_simplicial(g.triangulation_of(v)) ? 1 : 0;
  return mask;
}

/// Max over all vertices of the distance to the nearest simplicial vertex
/// (multi-source BFS); the simplicialization lemma caps this at seven.
inline int radius_to_simplicial(const FlipGraph& full) {
  auto mask = simplicial_mask(full);
  std::vector<int> dist(full.vertices(), -1);
  std::deque<int> q;
  for (int v = 0; v < (int)full.vertices(); ++v)
    if (mask[v]) {
      dist[v] = 0;
      q.push_back(v);
    }
  require(!q.empty(), Errc::EmptyGraph, "no simplicial vertices");
  while (!q.empty()) {
    int v = q.front();
    q.pop_front();
    for (int w : full.adj[v])
      if (dist[w] < 0) {
        dist[w] = dist[v] + 1;
        q.push_back(w);
      }
  }
  int r = 0;
  for (int x : dist) {
    check(x >= 0, "full flip graph must be connected");
    r = std::max(r, x);
  }
  return r;
}

/// Connectivity of the subgraph induced by a vertex mask.
inline bool induced_connected(const FlipGraph& g, const std::vector<char>& mask) {
  int start = -1, count = 0;
  for (int v = 0; v < (int)g.vertices(); ++v)
    if (mask[v]) {
      if (start < 0) start = v;
      count++;
    }
  if (count == 0) return true;
  std::vector<char> seen(g.vertices(), 0);
  std::deque<int> q{start};
  seen[start] = 1;
  int reached = 1;
  while (!q.empty()) {
    int v = q.front();
    q.pop_front();
    for (int w : g.adj[v])
      if (mask[w] && !seen[w]) {
        seen[w] = 1;
        reached++;
        q.push_back(w);
      }
  }
  return reached == count;
}

}  // namespace moebius
