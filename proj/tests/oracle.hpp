#pragma once

// Geometric model of arcs in the cross-cap disk, used by the test suite as
// an oracle that is independent of the half-edge map implementation.
//
// Points 0..n-1 sit clockwise on the boundary circle; the cross-cap is a
// central disk with antipodal identification. Separating classes stay in
// the annulus and are determined by their cut-off interval of boundary
// arcs; non-separating classes pass through the cross-cap once, entering
// at an angle that is free to rotate. Two classes are compatible when some
// placement realizes them disjointly (shared endpoints allowed).

#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "moebius/arcs.hpp"

namespace oracle {

using moebius::ArcClass;
using moebius::ArcKind;
using moebius::Point;
using moebius::cw_gap;

// Is w strictly inside the clockwise interval of boundary arcs from s to t?
inline bool strictly_inside(int n, Point w, Point s, Point t) {
  int g = cw_gap(n, s, w);
  return 0 < g && g < cw_gap(n, s, t);
}

// Is x inside the closed clockwise point-interval [from..to]?
inline bool in_closed_cw(int n, Point x, Point from, Point to) {
  return cw_gap(n, from, x) <= cw_gap(n, from, to);
}

/// Zero geometric crossing number between two distinct classes.
inline bool disjoint(int n, const ArcClass& A, const ArcClass& B) {
  if (A == B) return true;
  if (A.kind == ArcKind::Boundary || B.kind == ArcKind::Boundary) return true;
  auto kindPair = [&](const ArcClass& x, const ArcClass& y, ArcKind a, ArcKind b) {
    return x.kind == a && y.kind == b;
  };
  // order so the "larger" case analysis sees a fixed order
  const ArcClass *p = &A, *q = &B;
  if ((int)A.kind > (int)B.kind) std::swap(p, q);
  const ArcClass &X = *p, &Y = *q;  // X.kind <= Y.kind

  switch (X.kind) {
    case ArcKind::SepChord: {
      if (Y.kind == ArcKind::SepChord) {
        // cut-off disks must be nested or disjoint
        int lx = cw_gap(n, X.u, X.v), ly = cw_gap(n, Y.u, Y.v);
        auto inside = [&](Point s, int len, Point s2, int len2) {
          // is interval (s2,len2) contained in (s,len)?
          int off = cw_gap(n, s, s2);
          return off + len2 <= len;
        };
        bool nested = inside(X.u, lx, Y.u, ly) || inside(Y.u, ly, X.u, lx);
        bool disj = cw_gap(n, X.u, Y.u) >= lx && cw_gap(n, Y.u, X.u) >= ly;
        return nested || disj;
      }
      if (Y.kind == ArcKind::SepLoop)
        return !strictly_inside(n, Y.u, X.u, X.v);
      // non-separating: neither endpoint strictly inside the cut-off disk
      return !strictly_inside(n, Y.u, X.u, X.v) && !strictly_inside(n, Y.v, X.u, X.v);
    }
    case ArcKind::SepLoop: {
      if (Y.kind == ArcKind::SepLoop) return false;  // both enclose the cross-cap
      // a non-separating arc must live inside the loop's pocket: only the
      // non-separating loop at the same basepoint fits
      return Y.u == X.u && Y.v == X.u;
    }
    case ArcKind::NonSepChord: {
      if (Y.kind == ArcKind::NonSepChord) {
        // endpoints must interleave (weakly: shared endpoints allowed)
        return (in_closed_cw(n, Y.u, X.u, X.v) && in_closed_cw(n, Y.v, X.v, X.u)) ||
               (in_closed_cw(n, Y.v, X.u, X.v) && in_closed_cw(n, Y.u, X.v, X.u));
      }
      // non-separating loop vs chord: the loop basepoint must be a chord end
      return Y.u == X.u || Y.u == X.v;
    }
    case ArcKind::NonSepLoop:
      return false;  // two distinct non-separating loops always cross
    default:
      return true;
  }
}

inline std::vector<ArcClass> interior_classes(int n) {
  std::vector<ArcClass> out;
  for (const auto& c : moebius::arc_classes(n))
    if (c.is_interior()) out.push_back(c);
  return out;
}

/// Every triangulation of M_n as a set of n pairwise disjoint interior
/// classes (a maximal disjoint system), by backtracking.
inline std::vector<std::vector<ArcClass>> all_triangulations(int n) {
  auto classes = interior_classes(n);
  std::sort(classes.begin(), classes.end());
  std::vector<std::vector<ArcClass>> out;
  std::vector<ArcClass> cur;
  std::function<void(size_t)> go = [&](size_t from) {
    if ((int)cur.size() == n) {
      out.push_back(cur);
      return;
    }
    if (classes.size() - from < n - cur.size()) return;
    for (size_t i = from; i < classes.size(); ++i) {
      bool ok = true;
      for (const auto& c : cur)
        if (!disjoint(n, c, classes[i])) {
          ok = false;
          break;
        }
      if (!ok) continue;
      cur.push_back(classes[i]);
      go(i + 1);
      cur.pop_back();
    }
  };
  go(0);
  return out;
}

/// Flip-graph edges from first principles: two triangulations are adjacent
/// exactly when they share all but one arc.
inline size_t count_edges(const std::vector<std::vector<ArcClass>>& tris) {
  std::map<std::vector<ArcClass>, int> countBySubset;
  size_t edges = 0;
  for (const auto& t : tris) {
    for (size_t i = 0; i < t.size(); ++i) {
      std::vector<ArcClass> sub;
      for (size_t j = 0; j < t.size(); ++j)
        if (j != i) sub.push_back(t[j]);
      edges += countBySubset[sub]++;
    }
  }
  return edges;
}

}  // namespace oracle
