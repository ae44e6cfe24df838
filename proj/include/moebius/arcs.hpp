#pragma once

#include <cstdint>
#include <string>
#include <tuple>
#include <vector>

#include "errors.hpp"

namespace moebius {

/// Index of a marked point on the boundary circle, in [0, n). Indices run
/// clockwise and all arithmetic on them is modulo n.
using Point = int;

inline int imod(int a, int n) {
  int r = a % n;
  return r < 0 ? r + n : r;
}

/// Number of boundary arcs met walking clockwise from u to v. Zero when u == v.
inline int cw_gap(int n, Point u, Point v) { return imod(v - u, n); }

/// Clockwise distance d^-(u, v); requires u != v.
inline int d_minus(int n, Point u, Point v) {
  require(u != v, Errc::EqualPoints, "d_minus needs distinct points");
  return cw_gap(n, u, v);
}

/// Counter-clockwise distance d^+(u, v) = n - d^-(u, v).
inline int d_plus(int n, Point u, Point v) {
  require(u != v, Errc::EqualPoints, "d_plus needs distinct points");
  return n - cw_gap(n, u, v);
}

/// The boundary piece beta_{from,to}: the part of the boundary circle
/// clockwise from `from` and counter-clockwise from `to`.
struct BoundaryInterval {
  Point from = 0;
  Point to = 0;
  int arcs = 0;  // boundary arcs inside, = d^-(from, to)
};

inline BoundaryInterval boundary_interval(int n, Point from, Point to) {
  return BoundaryInterval{from, to, d_minus(n, from, to)};
}

enum class ArcKind : std::uint8_t {
  Boundary,     // arc (u, u+1) contained in the boundary circle
  SepChord,     // chord avoiding the cross-cap; cuts off a disk
  SepLoop,      // loop enclosing the cross-cap; cuts off an unmarked Moebius piece
  NonSepChord,  // chord through the cross-cap
  NonSepLoop,   // loop through the cross-cap
};

inline const char* kind_name(ArcKind k) {
  switch (k) {
    case ArcKind::Boundary: return "boundary";
    case ArcKind::SepChord: return "sep_chord";
    case ArcKind::SepLoop: return "sep_loop";
    case ArcKind::NonSepChord: return "nonsep_chord";
    case ArcKind::NonSepLoop: return "nonsep_loop";
  }
  return "?";
}

/// An isotopy class of a simple arc in M_n.
///
/// Conventions making each class unique:
///   Boundary     u, v = (u, u+1 mod n)
///   SepChord     the cut-off disk is the clockwise interval from u to v,
///                i.e. it carries the boundary arcs (u,u+1), ..., (v-1,v)
///   SepLoop      u == v, the basepoint
///   NonSepChord  u < v (one class per unordered pair)
///   NonSepLoop   u == v, the basepoint
struct ArcClass {
  ArcKind kind = ArcKind::Boundary;
  Point u = 0;
  Point v = 0;

  bool is_loop() const { return kind == ArcKind::SepLoop || kind == ArcKind::NonSepLoop; }
  bool is_boundary() const { return kind == ArcKind::Boundary; }
  bool is_interior() const { return kind != ArcKind::Boundary; }
  bool is_nonsep() const {
    return kind == ArcKind::NonSepChord || kind == ArcKind::NonSepLoop;
  }
  bool touches(Point p) const { return u == p || v == p; }

  friend bool operator==(const ArcClass&, const ArcClass&) = default;
  friend auto operator<=>(const ArcClass& a, const ArcClass& b) {
    return std::tie(a.kind, a.u, a.v) <=> std::tie(b.kind, b.u, b.v);
  }
};

inline ArcClass boundary_arc(int n, Point u) {
  return ArcClass{ArcKind::Boundary, imod(u, n), imod(u + 1, n)};
}
inline ArcClass sep_loop(Point u) { return ArcClass{ArcKind::SepLoop, u, u}; }
inline ArcClass nonsep_loop(Point u) { return ArcClass{ArcKind::NonSepLoop, u, u}; }
inline ArcClass nonsep_chord(Point u, Point v) {
  return u < v ? ArcClass{ArcKind::NonSepChord, u, v} : ArcClass{ArcKind::NonSepChord, v, u};
}
/// Separating chord whose cut-off disk is the clockwise interval [u..v].
inline ArcClass sep_chord_cw(Point u, Point v) { return ArcClass{ArcKind::SepChord, u, v}; }

inline bool valid_class(int n, const ArcClass& a) {
  if (a.u < 0 || a.u >= n || a.v < 0 || a.v >= n) return false;
  switch (a.kind) {
    case ArcKind::Boundary: return a.v == imod(a.u + 1, n);
    case ArcKind::SepChord: {
      if (a.u == a.v) return false;
      int d = cw_gap(n, a.u, a.v);
      return d >= 2;  // a side with one boundary arc is boundary-homotopic
    }
    case ArcKind::SepLoop: return a.u == a.v && n >= 2;  // at n=1 it is boundary-parallel
    case ArcKind::NonSepChord: return a.u < a.v;
    case ArcKind::NonSepLoop: return a.u == a.v;
  }
  return false;
}

/// Arc length per the boundary metric: 0 for non-separating loops,
/// min(d^-, d^+) for non-separating chords, the cut-off disk size for
/// separating chords, n for separating loops, 1 for boundary arcs.
inline int length(const ArcClass& a, int n) {
  switch (a.kind) {
    case ArcKind::Boundary: return 1;
    case ArcKind::SepChord: return cw_gap(n, a.u, a.v);
    case ArcKind::SepLoop: return n;
    case ArcKind::NonSepChord: {
      int d = cw_gap(n, a.u, a.v);
      return d < n - d ? d : n - d;
    }
    case ArcKind::NonSepLoop: return 0;
  }
  return 0;
}

/// Every arc class of M_n: the n boundary arcs plus all interior classes.
inline std::vector<ArcClass> arc_classes(int n) {
  require(n >= 1, Errc::InvalidSize, "arc_classes needs n >= 1");
  std::vector<ArcClass> out;
  for (Point u = 0; u < n; ++u) out.push_back(boundary_arc(n, u));
  for (Point u = 0; u < n; ++u)
    for (Point v = 0; v < n; ++v)
      if (valid_class(n, sep_chord_cw(u, v))) out.push_back(sep_chord_cw(u, v));
  if (n >= 2)
    for (Point u = 0; u < n; ++u) out.push_back(sep_loop(u));
  for (Point u = 0; u < n; ++u)
    for (Point v = u + 1; v < n; ++v) out.push_back(nonsep_chord(u, v));
  for (Point u = 0; u < n; ++u) out.push_back(nonsep_loop(u));
  return out;
}

inline std::string to_string(const ArcClass& a) {
  std::string s = kind_name(a.kind);
  s += "(" + std::to_string(a.u);
  if (!a.is_loop()) s += "," + std::to_string(a.v);
  s += ")";
  return s;
}

/// Point relabeling by a reflection i -> (c - i) mod n. Reflections act on
/// triangulations arc-by-arc; clockwise intervals get reversed.
inline ArcClass reflect_class(int n, const ArcClass& a, int c) {
  auto r = [&](Point p) { return imod(c - p, n); };
  switch (a.kind) {
    case ArcKind::Boundary: return boundary_arc(n, r(a.v));
    case ArcKind::SepChord: return sep_chord_cw(r(a.v), r(a.u));
    case ArcKind::SepLoop: return sep_loop(r(a.u));
    case ArcKind::NonSepChord: return nonsep_chord(r(a.u), r(a.v));
    case ArcKind::NonSepLoop: return nonsep_loop(r(a.u));
  }
  return a;
}

}  // namespace moebius
