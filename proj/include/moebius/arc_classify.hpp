#pragma once

#include <algorithm>
#include <vector>

#include "surface_map.hpp"

namespace moebius {

/// Sum of lengths over the distinct arcs bounding t. An arc filling two
/// slots is counted once; that is what makes the one-triangle face of the
/// loop pocket sum to n.
inline int triangle_length_sum(const Triangle& t, int n) {
  int s = 0;
  for (const ArcClass& a : t.distinct_arcs()) s += length(a, n);
  return s;
}

inline bool has_nonsep_arc(const Triangle& t) {
  for (const auto& a : t.arcs)
    if (a.is_nonsep()) return true;
  return false;
}

/// A central triangle carries at least one non-separating arc and its
/// distinct bounding arcs have lengths summing to n.
inline bool is_central(const Triangulation& T, const Triangle& t) {
  auto ts = T.triangles();
  require(t.rank >= 0 && t.rank < (int)ts.size() && ts[t.rank].arcs == t.arcs &&
              ts[t.rank].corners == t.corners,
          Errc::TriangleNotInT, "triangle does not belong to this triangulation");
  return has_nonsep_arc(t) && triangle_length_sum(t, T.n()) == T.n();
}

/// First central triangle in canonical face order. Every triangulation of
/// M_n has one; failure here means a core bug.
inline Triangle find_central(const Triangulation& T) {
  for (const Triangle& t : T.triangles())
    if (has_nonsep_arc(t) && triangle_length_sum(t, T.n()) == T.n()) return t;
  fail(Errc::NoCentralTriangle, "no central triangle in " + std::to_string(T.n()) +
                                    "-point triangulation");
}

inline std::vector<ArcClass> loops(const Triangulation& T) {
  std::vector<ArcClass> out;
  for (const auto& c : T.interior_classes())
    if (c.is_loop()) out.push_back(c);
  return out;
}

inline int nonsep_count(const Triangulation& T) {
  int k = 0;
  for (const auto& c : T.interior_classes()) k += c.is_nonsep();
  return k;
}

/// Pairs of arcs sharing the same two vertices, boundary arcs included.
/// A triangulation has at most three such pairs.
inline std::vector<std::pair<ArcClass, ArcClass>> multiple_pairs(const Triangulation& T) {
  std::vector<ArcClass> all;
  for (const auto& r : T.arcs()) all.push_back(r.cls);
  std::sort(all.begin(), all.end());
  auto vertexPair = [](const ArcClass& a) {
    return a.u <= a.v ? std::make_pair(a.u, a.v) : std::make_pair(a.v, a.u);
  };
  std::vector<std::pair<ArcClass, ArcClass>> out;
  for (size_t i = 0; i < all.size(); ++i)
    for (size_t j = i + 1; j < all.size(); ++j)
      if (vertexPair(all[i]) == vertexPair(all[j])) out.push_back({all[i], all[j]});
  return out;
}

/// No loops and no two arcs with the same vertex pair: the triangulation is
/// a simplicial complex.
inline bool is_simplicial(const Triangulation& T) {
  return loops(T).empty() && multiple_pairs(T).empty();
}

/// Vertices of a cut disk usable for the ear-reduction step: no boundary arc
/// of their star joins two copies of the cut endpoints or joins the vertex
/// itself to such a copy.
inline std::vector<int> star_safe_positions(const DiskTriangulation& U) {
  std::vector<int> out;
  for (int p = 0; p < U.size; ++p) {
    if (U.is_cut_copy(p)) continue;
    std::vector<int> nb;  // link of p in cyclic order
    for (int d = 1; d < U.size; ++d) {
      int q = (p + d) % U.size;
      if (U.boundary_adjacent(p, q) || U.find_chord(p, q)) nb.push_back(q);
    }
    bool ok = true;
    auto isCopy = [&](int q) { return U.is_cut_copy(q); };
    for (size_t i = 0; i + 1 < nb.size(); ++i)
      if (isCopy(nb[i]) && isCopy(nb[i + 1])) ok = false;  // copy-to-copy star edge
    if (isCopy(nb.front()) || isCopy(nb.back())) ok = false;  // p-to-copy star edge
    if (ok) out.push_back(p);
  }
  return out;
}

/// Point for the ear-reduction step of the simplicial upper bound: lies in
/// both safe sets and has combined interior-arc degree at most 4 across the
/// two cut disks. Ties: smallest combined degree, then smallest index.
inline Point reduction_vertex(const DiskTriangulation& Um, const DiskTriangulation& Up) {
  std::vector<int> sm = star_safe_positions(Um), sp = star_safe_positions(Up);
  auto pointSet = [](const DiskTriangulation& U, const std::vector<int>& pos) {
    std::vector<Point> pts;
    for (int p : pos) pts.push_back(U.point_of[p]);
    std::sort(pts.begin(), pts.end());
    return pts;
  };
  std::vector<Point> a = pointSet(Um, sm), b = pointSet(Up, sp);
  std::vector<Point> both;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(both));
  Point best = -1;
  int bestDeg = 5;
  for (Point u : both) {
    int pm = -1, pp = -1;
    for (int p = 0; p < Um.size; ++p)
      if (Um.point_of[p] == u && !Um.is_cut_copy(p)) pm = p;
    for (int p = 0; p < Up.size; ++p)
      if (Up.point_of[p] == u && !Up.is_cut_copy(p)) pp = p;
    check(pm >= 0 && pp >= 0, "safe point lost its position");
    int deg = Um.degree(pm) + Up.degree(pp);
    if (deg > 4) continue;
    if (deg < bestDeg || (deg == bestDeg && u < best)) {
      bestDeg = deg;
      best = u;
    }
  }
  require(best >= 0, Errc::NoReductionVertex,
          "no common low-degree vertex outside the stars' reach");
  return best;
}

}  // namespace moebius
