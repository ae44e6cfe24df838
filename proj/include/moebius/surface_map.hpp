#pragma once

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "arcs.hpp"
#include "errors.hpp"

namespace moebius {

// ---------------------------------------------------------------------------
// Disk triangulations (results of cutting along a non-separating arc).
// ---------------------------------------------------------------------------

/// A triangulated polygon with back-references into M_n. Vertices are indexed
/// by position around the polygon; boundary edge i joins positions i and
/// i+1 (mod size).
struct DiskTriangulation {
  struct Chord {
    int a = 0, b = 0;                  // positions, a < b
    std::optional<ArcClass> cls;       // source arc in M_n when known
  };

  int size = 0;
  std::vector<Point> point_of;         // position -> marked point of M_n
  std::vector<int> cut_edges;          // boundary edges carrying the cut arc
  std::vector<std::optional<ArcClass>> edge_cls;  // boundary edge -> source arc
  std::vector<Chord> chords;
  std::vector<std::array<int, 3>> tris;  // position triples, sorted ascending

  bool is_cut_copy(int pos) const {
    for (int e : cut_edges)
      if (e == pos || (e + 1) % size == pos) return true;
    return false;
  }

  int degree(int pos) const {
    int d = 0;
    for (const Chord& c : chords) d += (c.a == pos || c.b == pos);
    return d;
  }

  const Chord* find_chord(int a, int b) const {
    if (a > b) std::swap(a, b);
    for (const Chord& c : chords)
      if (c.a == a && c.b == b) return &c;
    return nullptr;
  }

  bool boundary_adjacent(int a, int b) const {
    return (a + 1) % size == b || (b + 1) % size == a;
  }

  /// Flips the chord {a,b} in place; returns the introduced chord, which
  /// carries no source-arc class.
  Chord flip_chord(int a, int b) {
    if (a > b) std::swap(a, b);
    int f1 = -1, f2 = -1;
    for (int i = 0; i < (int)tris.size(); ++i) {
      const auto& t = tris[i];
      bool hasA = t[0] == a || t[1] == a || t[2] == a;
      bool hasB = t[0] == b || t[1] == b || t[2] == b;
      if (hasA && hasB) (f1 < 0 ? f1 : f2) = i;
    }
    check(f1 >= 0 && f2 >= 0, "disk flip: chord not on two faces");
    auto third = [&](int fi) {
      for (int x : tris[fi])
        if (x != a && x != b) return x;
      check(false, "disk flip: degenerate face");
      return -1;
    };
    int r = third(f1), s = third(f2);
    auto mk = [](int x, int y, int z) {
      std::array<int, 3> t{x, y, z};
      std::sort(t.begin(), t.end());
      return t;
    };
    tris[f1] = mk(a, r, s);
    tris[f2] = mk(b, r, s);
    for (auto it = chords.begin(); it != chords.end(); ++it)
      if (it->a == a && it->b == b) {
        chords.erase(it);
        break;
      }
    Chord c{std::min(r, s), std::max(r, s), std::nullopt};
    chords.push_back(c);
    return c;
  }
};

/// The star of a boundary vertex: the sub-disk formed by the triangles
/// incident to it. Fails on copies of the cut endpoints.
inline DiskTriangulation star(const DiskTriangulation& U, int pos) {
  require(pos >= 0 && pos < U.size, Errc::InvalidArgument, "star: bad vertex");
  require(!U.is_cut_copy(pos), Errc::VertexIsCutCopy, "star of a cut-endpoint copy");
  std::vector<int> nb;  // neighbors in cyclic order starting just after pos
  for (int d = 1; d < U.size; ++d) {
    int q = (pos + d) % U.size;
    if (U.boundary_adjacent(pos, q) || U.find_chord(pos, q)) nb.push_back(q);
  }
  DiskTriangulation S;
  S.size = (int)nb.size() + 1;
  S.point_of.assign(S.size, 0);
  S.edge_cls.resize(S.size);
  S.point_of[0] = U.point_of[pos];
  std::vector<int> newPos(U.size, -1);
  newPos[pos] = 0;
  for (int i = 0; i < (int)nb.size(); ++i) {
    newPos[nb[i]] = i + 1;
    S.point_of[i + 1] = U.point_of[nb[i]];
  }
  for (const auto& c : U.chords)
    if (c.a == pos || c.b == pos) {
      int other = c.a == pos ? c.b : c.a;
      if (other == nb.front() || other == nb.back()) continue;  // star boundary
      S.chords.push_back({std::min(newPos[pos], newPos[other]),
                          std::max(newPos[pos], newPos[other]), c.cls});
    }
  for (const auto& t : U.tris)
    if (t[0] == pos || t[1] == pos || t[2] == pos) {
      std::array<int, 3> s{newPos[t[0]], newPos[t[1]], newPos[t[2]]};
      std::sort(s.begin(), s.end());
      S.tris.push_back(s);
    }
  check((int)S.tris.size() == S.size - 2, "star: face count");
  return S;
}

// ---------------------------------------------------------------------------
// Triangulations of M_n as labeled combinatorial maps.
// ---------------------------------------------------------------------------

/// One face, reported in canonical order. Corner points may repeat; slots are
/// positional, not keyed by point.
struct Triangle {
  int rank = 0;
  std::array<Point, 3> corners{};
  std::array<ArcClass, 3> arcs{};

  std::vector<ArcClass> distinct_arcs() const {
    std::vector<ArcClass> d(arcs.begin(), arcs.end());
    std::sort(d.begin(), d.end());
    d.erase(std::unique(d.begin(), d.end()), d.end());
    return d;
  }
  bool bounded_by(const ArcClass& a) const {
    return arcs[0] == a || arcs[1] == a || arcs[2] == a;
  }
};

/// A triangulation of M_n stored as a labeled map: n triangular faces over
/// 2n arcs (n boundary, n interior) with an edge-pairing involution and a
/// reversal flag per pairing. A pairing is reversed when the gluing runs
/// against the two faces' stored orientations; any closed walk through the
/// cross-cap crosses an odd number of reversed pairings.
///
/// Values are immutable after construction; operations return new values.
/// Equality is canonical-key equality, which decides isotopy because the
/// mapping class group of M fixing the boundary pointwise is trivial.
class Triangulation {
 public:
  struct Slot {
    int face = -1;
    int edge = -1;
    friend bool operator==(const Slot&, const Slot&) = default;
  };
  struct Face {
    std::array<Point, 3> corner{};
    std::array<int, 3> arc{};  // edge k runs corner[k] -> corner[k+1]
  };
  struct ArcRec {
    ArcClass cls;
    int nslots = 0;
    std::array<Slot, 2> slot{};
    bool twisted = false;  // pairings only
  };

  Triangulation() = default;

  static Triangulation build(int n, std::vector<ArcClass> interior);
  static Triangulation decode(const std::string& key);

  int n() const { return n_; }
  const std::string& key() const { return key_; }
  const std::vector<Face>& faces() const { return faces_; }
  const std::vector<ArcRec>& arcs() const { return arcs_; }

  std::vector<ArcClass> interior_classes() const {
    std::vector<ArcClass> out;
    for (const auto& a : arcs_)
      if (a.cls.is_interior()) out.push_back(a.cls);
    std::sort(out.begin(), out.end());
    return out;
  }

  int find_arc(const ArcClass& c) const {
    for (int i = 0; i < (int)arcs_.size(); ++i)
      if (arcs_[i].cls == c) return i;
    return -1;
  }
  bool has_arc(const ArcClass& c) const { return find_arc(c) >= 0; }

  std::vector<Triangle> triangles() const;

  bool flippable(const ArcClass& a) const;
  std::pair<Triangulation, ArcClass> flip(const ArcClass& a) const;
  Triangulation contract(const ArcClass& b) const;
  /// Relabeling by the reflection i -> (c - i) mod n.
  Triangulation reflected(int c) const;
  Triangulation reflect() const { return reflected(0); }
  Triangulation reflect_about(Point fix) const { return reflected(imod(2 * fix, n_)); }
  DiskTriangulation cut_along(const ArcClass& a) const;

  /// Computed by map surgery (cut and count pieces). Boundary arcs report
  /// true; the separating/non-separating dichotomy needs a convention there.
  bool is_separating(const ArcClass& a) const;

  friend bool operator==(const Triangulation& a, const Triangulation& b) {
    return a.key_ == b.key_;
  }
  friend bool operator!=(const Triangulation& a, const Triangulation& b) {
    return !(a == b);
  }
  friend bool operator<(const Triangulation& a, const Triangulation& b) {
    return a.key_ < b.key_;
  }

 private:
  int n_ = 0;
  std::vector<Face> faces_;
  std::vector<ArcRec> arcs_;
  std::string key_;
  std::vector<int> canon_face_;         // rank -> face
  std::vector<int> canon_rank_;         // face -> rank
  std::vector<int> canon_entry_;        // face -> entry edge
  std::vector<signed char> canon_dir_;  // face -> +1 / -1

  enum class Finalize { DeriveInterior, VerifyInterior, TrustClasses };

  void finalize(Finalize mode);
  void structural_checks() const;
  void derive_or_verify_classes(bool verify);
  ArcClass derive_interior_class(int arcId) const;
  void canonicalize();
  std::string serialize_from(int face, int edge, int dir) const;
  void reverse_face(int f);
  std::vector<int> corner_orbits(int excludeArc) const;
  int face_components(int excludeArc, std::vector<int>& comp) const;
};

// ------------------------------ internals ---------------------------------

namespace detail {

struct Dsu {
  std::vector<int> p;
  explicit Dsu(int m) : p(m) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) {
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
  }
  void unite(int a, int b) { p[find(a)] = find(b); }
};

}  // namespace detail

inline std::vector<int> Triangulation::corner_orbits(int excludeArc) const {
  detail::Dsu dsu(3 * (int)faces_.size());
  auto cid = [](int f, int k) { return 3 * f + k; };
  for (int a = 0; a < (int)arcs_.size(); ++a) {
    if (a == excludeArc || arcs_[a].nslots != 2) continue;
    auto [f, i] = arcs_[a].slot[0];
    auto [g, j] = arcs_[a].slot[1];
    if (!arcs_[a].twisted) {
      dsu.unite(cid(f, i), cid(g, (j + 1) % 3));
      dsu.unite(cid(f, (i + 1) % 3), cid(g, j));
    } else {
      dsu.unite(cid(f, i), cid(g, j));
      dsu.unite(cid(f, (i + 1) % 3), cid(g, (j + 1) % 3));
    }
  }
  std::vector<int> rep(3 * faces_.size());
  for (int c = 0; c < (int)rep.size(); ++c) rep[c] = dsu.find(c);
  return rep;
}

inline int Triangulation::face_components(int excludeArc, std::vector<int>& comp) const {
  detail::Dsu dsu((int)faces_.size());
  for (int a = 0; a < (int)arcs_.size(); ++a) {
    if (a == excludeArc || arcs_[a].nslots != 2) continue;
    dsu.unite(arcs_[a].slot[0].face, arcs_[a].slot[1].face);
  }
  comp.assign(faces_.size(), -1);
  int cnt = 0;
  std::vector<int> label(faces_.size(), -1);
  for (int f = 0; f < (int)faces_.size(); ++f) {
    int r = dsu.find(f);
    if (label[r] < 0) label[r] = cnt++;
    comp[f] = label[r];
  }
  return cnt;
}

inline bool Triangulation::is_separating(const ArcClass& a) const {
  int id = find_arc(a);
  require(id >= 0, Errc::ArcNotInTriangulation, to_string(a));
  if (a.is_boundary()) return true;
  std::vector<int> comp;
  return face_components(id, comp) == 2;
}

inline ArcClass Triangulation::derive_interior_class(int arcId) const {
  const ArcRec& rec = arcs_[arcId];
  check(rec.nslots == 2, "interior arc must have two slots");
  Point p = faces_[rec.slot[0].face].corner[rec.slot[0].edge];
  Point q = faces_[rec.slot[0].face].corner[(rec.slot[0].edge + 1) % 3];
  std::vector<int> comp;
  int ncomp = face_components(arcId, comp);
  if (ncomp == 1) return p == q ? nonsep_loop(p) : nonsep_chord(p, q);
  check(ncomp == 2, "cutting one arc yields at most two pieces");
  // Euler characteristic per piece; the cut-off disk has chi = 1.
  auto orbits = corner_orbits(arcId);
  std::array<int, 2> F{0, 0}, E{0, 0}, V{0, 0};
  for (int f = 0; f < (int)faces_.size(); ++f) F[comp[f]]++;
  for (int a = 0; a < (int)arcs_.size(); ++a) {
    if (a == arcId) {
      E[comp[arcs_[a].slot[0].face]]++;
      E[comp[arcs_[a].slot[1].face]]++;
    } else {
      E[comp[arcs_[a].slot[0].face]]++;
    }
  }
  std::vector<char> seen(3 * faces_.size(), 0);
  for (int c = 0; c < (int)seen.size(); ++c) {
    int r = orbits[c];
    if (!seen[r]) {
      seen[r] = 1;
      V[comp[c / 3]]++;
    }
  }
  int disk = -1;
  for (int s = 0; s < 2; ++s) {
    int chi = V[s] - E[s] + F[s];
    if (chi == 1)
      disk = s;
    else
      check(chi == 0, "separating cut must yield a disk and a Moebius piece");
  }
  check(disk >= 0, "no disk piece after separating cut");
  std::vector<char> inDisk(n_, 0);
  int cnt = 0;
  for (const auto& r : arcs_)
    if (r.cls.is_boundary() && comp[r.slot[0].face] == disk) {
      inDisk[r.cls.u] = 1;
      cnt++;
    }
  if (cnt == n_) {
    check(p == q, "separating arc cutting off all boundary arcs must be a loop");
    return sep_loop(p);
  }
  int s0 = -1;
  for (int u = 0; u < n_; ++u)
    if (inDisk[u] && !inDisk[imod(u - 1, n_)]) {
      check(s0 < 0, "cut-off boundary arcs must form one interval");
      s0 = u;
    }
  check(s0 >= 0 && cnt >= 2, "bad cut-off interval");
  for (int d = 0; d < cnt; ++d) check(inDisk[imod(s0 + d, n_)], "cut-off interval gap");
  ArcClass out = sep_chord_cw(s0, imod(s0 + cnt, n_));
  check((out.u == p && out.v == q) || (out.u == q && out.v == p),
        "separating chord endpoints disagree with its cut-off interval");
  return out;
}

inline void Triangulation::structural_checks() const {
  check((int)faces_.size() == n_, "face count must equal n");
  int nb = 0, ni = 0;
  std::vector<char> bseen(n_, 0);
  std::vector<std::array<char, 3>> covered(faces_.size(), {0, 0, 0});
  for (const auto& r : arcs_) {
    if (r.cls.is_boundary()) {
      check(r.nslots == 1, "boundary arc has one slot");
      check(r.cls.u >= 0 && r.cls.u < n_ && !bseen[r.cls.u], "boundary arc naming");
      bseen[r.cls.u] = 1;
      nb++;
    } else {
      check(r.nslots == 2, "interior arc has two slots");
      ni++;
    }
    for (int s = 0; s < r.nslots; ++s) {
      auto [f, e] = r.slot[s];
      check(f >= 0 && f < (int)faces_.size() && e >= 0 && e < 3, "slot range");
      check(!covered[f][e], "face slot claimed twice");
      covered[f][e] = 1;
    }
  }
  check(nb == n_ && ni == n_, "arc counts must be n boundary + n interior");
  for (int f = 0; f < (int)faces_.size(); ++f)
    for (int e = 0; e < 3; ++e)
      check(covered[f][e] && faces_[f].arc[e] >= 0 &&
                faces_[f].arc[e] < (int)arcs_.size(),
            "face slot without arc");
  for (int a = 0; a < (int)arcs_.size(); ++a)
    for (int s = 0; s < arcs_[a].nslots; ++s)
      check(faces_[arcs_[a].slot[s].face].arc[arcs_[a].slot[s].edge] == a,
            "face arc table disagrees with slots");
}

inline void Triangulation::derive_or_verify_classes(bool verify) {
  for (int a = 0; a < (int)arcs_.size(); ++a) {
    if (arcs_[a].cls.is_boundary()) continue;
    ArcClass d = derive_interior_class(a);
    if (verify)
      check(d == arcs_[a].cls, "class mismatch: stored " + to_string(arcs_[a].cls) +
                                   ", derived " + to_string(d));
    else
      arcs_[a].cls = d;
  }
  for (const auto& r : arcs_)
    for (int s = 0; s < r.nslots; ++s) {
      Point x = faces_[r.slot[s].face].corner[r.slot[s].edge];
      Point y = faces_[r.slot[s].face].corner[(r.slot[s].edge + 1) % 3];
      bool ok = (x == r.cls.u && y == r.cls.v) || (x == r.cls.v && y == r.cls.u);
      check(ok, "slot endpoints disagree with class " + to_string(r.cls));
    }
}

inline void Triangulation::finalize(Finalize mode) {
  structural_checks();
  if (mode != Finalize::TrustClasses)
    derive_or_verify_classes(mode == Finalize::VerifyInterior);
  canonicalize();
}

// Canonical key: a breadth-first serialization anchored at the half-edge of
// boundary arc (0,1) on its interior side, traversed from point 0 to point 1.
// Frames flip across reversed pairings, so the key does not depend on the
// stored face orientations or orderings.
inline std::string Triangulation::serialize_from(int startFace, int startEdge,
                                                 int startDir) const {
  std::vector<int> rank(faces_.size(), -1), entry(faces_.size(), -1);
  std::vector<signed char> dir(faces_.size(), 0);
  std::vector<int> order;
  std::string out;
  out.push_back((char)n_);
  auto canonPos = [&](int f, int e) {
    return dir[f] > 0 ? (e - entry[f] + 3) % 3 : (entry[f] - e + 3) % 3;
  };
  auto visit = [&](int f, int e, int d) {
    rank[f] = (int)order.size();
    order.push_back(f);
    entry[f] = e;
    dir[f] = (signed char)d;
  };
  visit(startFace, startEdge, startDir);
  for (size_t qi = 0; qi < order.size(); ++qi) {
    int f = order[qi];
    for (int p = 0; p < 3; ++p) {
      int e = dir[f] > 0 ? (entry[f] + p) % 3 : (entry[f] - p + 3) % 3;
      Point tail = dir[f] > 0 ? faces_[f].corner[e] : faces_[f].corner[(e + 1) % 3];
      out.push_back((char)tail);
      int a = faces_[f].arc[e];
      const ArcRec& rec = arcs_[a];
      if (rec.nslots == 1) {
        out.push_back((char)0xFF);
        continue;
      }
      Slot other =
          (rec.slot[0].face == f && rec.slot[0].edge == e) ? rec.slot[1] : rec.slot[0];
      int g = other.face, e2 = other.edge;
      if (rank[g] < 0) {
        bool fwd = dir[f] > 0;
        bool fwd2 = rec.twisted ? !fwd : fwd;
        visit(g, e2, fwd2 ? +1 : -1);
      }
      bool rel = rec.twisted ^ (dir[f] < 0) ^ (dir[g] < 0);
      out.push_back((char)1);
      out.push_back((char)rank[g]);
      out.push_back((char)canonPos(g, e2));
      out.push_back((char)(rel ? 1 : 0));
    }
  }
  check((int)order.size() == (int)faces_.size(), "map must be connected");
  return out;
}

inline void Triangulation::canonicalize() {
  int b0 = find_arc(boundary_arc(n_, 0));
  check(b0 >= 0, "boundary arc (0,1) missing");
  auto [f, e] = arcs_[b0].slot[0];
  int d0;
  if (n_ >= 2) {
    d0 = faces_[f].corner[e] == 0 ? +1 : -1;
    key_ = serialize_from(f, e, d0);
  } else {
    std::string k1 = serialize_from(f, e, +1);
    std::string k2 = serialize_from(f, e, -1);
    d0 = k1 <= k2 ? +1 : -1;
    key_ = k1 <= k2 ? k1 : k2;
  }
  // replay to record canonical frames
  canon_face_.assign(faces_.size(), -1);
  canon_rank_.assign(faces_.size(), -1);
  canon_entry_.assign(faces_.size(), -1);
  canon_dir_.assign(faces_.size(), 0);
  std::vector<int> order;
  auto visit = [&](int ff, int ee, int dd) {
    canon_rank_[ff] = (int)order.size();
    canon_face_[order.size()] = ff;
    order.push_back(ff);
    canon_entry_[ff] = ee;
    canon_dir_[ff] = (signed char)dd;
  };
  visit(f, e, d0);
  for (size_t qi = 0; qi < order.size(); ++qi) {
    int ff = order[qi];
    for (int p = 0; p < 3; ++p) {
      int ee =
          canon_dir_[ff] > 0 ? (canon_entry_[ff] + p) % 3 : (canon_entry_[ff] - p + 3) % 3;
      int a = faces_[ff].arc[ee];
      const ArcRec& rec = arcs_[a];
      if (rec.nslots != 2) continue;
      Slot other =
          (rec.slot[0].face == ff && rec.slot[0].edge == ee) ? rec.slot[1] : rec.slot[0];
      if (canon_rank_[other.face] < 0) {
        bool fwd = canon_dir_[ff] > 0;
        bool fwd2 = rec.twisted ? !fwd : fwd;
        visit(other.face, other.edge, fwd2 ? +1 : -1);
      }
    }
  }
}

inline std::vector<Triangle> Triangulation::triangles() const {
  std::vector<Triangle> out(faces_.size());
  for (int r = 0; r < (int)faces_.size(); ++r) {
    int f = canon_face_[r];
    Triangle t;
    t.rank = r;
    for (int p = 0; p < 3; ++p) {
      int e =
          canon_dir_[f] > 0 ? (canon_entry_[f] + p) % 3 : (canon_entry_[f] - p + 3) % 3;
      t.corners[p] = canon_dir_[f] > 0 ? faces_[f].corner[e] : faces_[f].corner[(e + 1) % 3];
      t.arcs[p] = arcs_[faces_[f].arc[e]].cls;
    }
    out[r] = t;
  }
  return out;
}

inline void Triangulation::reverse_face(int f) {
  Face& fc = faces_[f];
  fc = Face{{fc.corner[0], fc.corner[2], fc.corner[1]},
            {fc.arc[2], fc.arc[1], fc.arc[0]}};
  for (auto& rec : arcs_) {
    int touched = 0;
    for (int s = 0; s < rec.nslots; ++s)
      if (rec.slot[s].face == f) {
        rec.slot[s].edge = 2 - rec.slot[s].edge;
        touched++;
      }
    if (rec.nslots == 2 && (touched % 2)) rec.twisted = !rec.twisted;
  }
}

inline bool Triangulation::flippable(const ArcClass& a) const {
  int id = find_arc(a);
  require(id >= 0 && a.is_interior(), Errc::ArcNotInTriangulation, to_string(a));
  return arcs_[id].slot[0].face != arcs_[id].slot[1].face;
}

inline std::pair<Triangulation, ArcClass> Triangulation::flip(const ArcClass& a) const {
  int id = find_arc(a);
  require(id >= 0 && a.is_interior(), Errc::ArcNotInTriangulation, to_string(a));
  require(arcs_[id].slot[0].face != arcs_[id].slot[1].face, Errc::NotFlippable,
          to_string(a) + " bounds a single triangle");
  Triangulation t(*this);
  if (t.arcs_[id].twisted) t.reverse_face(t.arcs_[id].slot[1].face);
  check(!t.arcs_[id].twisted, "flip normalization failed");
  auto [f, i] = t.arcs_[id].slot[0];
  auto [g, j] = t.arcs_[id].slot[1];
  // Quad around the diagonal: f = (A, C, B) read from edge i, g = (C, A, D).
  Point A = t.faces_[f].corner[i];
  Point C = t.faces_[f].corner[(i + 1) % 3];
  Point B = t.faces_[f].corner[(i + 2) % 3];
  Point D = t.faces_[g].corner[(j + 2) % 3];
  check(t.faces_[g].corner[j] == C && t.faces_[g].corner[(j + 1) % 3] == A,
        "untwisted pairing must match head-to-tail");
  int fe1 = t.faces_[f].arc[(i + 1) % 3];  // C -> B
  int fe2 = t.faces_[f].arc[(i + 2) % 3];  // B -> A
  int ge1 = t.faces_[g].arc[(j + 1) % 3];  // A -> D
  int ge2 = t.faces_[g].arc[(j + 2) % 3];  // D -> C
  struct Move {
    Slot from, to;
  };
  const std::array<Move, 4> moves{{{Slot{f, (i + 1) % 3}, Slot{g, 1}},
                                   {Slot{f, (i + 2) % 3}, Slot{f, 0}},
                                   {Slot{g, (j + 1) % 3}, Slot{f, 1}},
                                   {Slot{g, (j + 2) % 3}, Slot{g, 0}}}};
  for (auto& rec : t.arcs_)
    for (int s = 0; s < rec.nslots; ++s)
      for (const auto& m : moves)
        if (rec.slot[s] == m.from) {
          rec.slot[s] = m.to;
          break;
        }
  t.faces_[f] = Face{{B, A, D}, {fe2, ge1, id}};
  t.faces_[g] = Face{{D, C, B}, {ge2, fe1, id}};
  t.arcs_[id].slot = {Slot{f, 2}, Slot{g, 2}};
  t.arcs_[id].twisted = false;
  // Kind of the introduced diagonal from the mod-2 relative homology class:
  // the edges of each face sum to zero and non-separating arcs carry the
  // nontrivial class.
  bool h = t.arcs_[fe2].cls.is_nonsep() ^ t.arcs_[ge1].cls.is_nonsep();
  ArcClass cls;
  if (h) {
    cls = (B == D) ? nonsep_loop(B) : nonsep_chord(B, D);
  } else {
    cls = t.derive_interior_class(id);
  }
  t.arcs_[id].cls = cls;
  t.finalize(Finalize::TrustClasses);
  return {std::move(t), cls};
}

inline Triangulation Triangulation::contract(const ArcClass& b) const {
  require(n_ >= 2, Errc::SizeTooSmall, "cannot contract M_1");
  require(b.is_boundary(), Errc::NotABoundaryArc, to_string(b));
  int idB = find_arc(b);
  require(idB >= 0, Errc::NotABoundaryArc, to_string(b));
  Triangulation t(*this);
  const Slot bslot = t.arcs_[idB].slot[0];
  const int tf = bslot.face, ts = bslot.edge;
  int e1 = t.faces_[tf].arc[(ts + 1) % 3];
  int e2 = t.faces_[tf].arc[(ts + 2) % 3];
  check(e1 != e2 && e1 != idB && e2 != idB, "degenerate contraction triangle");
  auto otherSlot = [&](int arc, int edgeOnT) {
    const ArcRec& r = t.arcs_[arc];
    check(r.nslots == 2, "contraction edge lost its pairing");
    Slot s = (r.slot[0].face == tf && r.slot[0].edge == edgeOnT) ? r.slot[1] : r.slot[0];
    check(!(s.face == tf), "contraction edge doubled on the triangle");
    return s;
  };
  int removed;
  if (t.arcs_[e1].cls.is_boundary() || t.arcs_[e2].cls.is_boundary()) {
    int bd = t.arcs_[e1].cls.is_boundary() ? e1 : e2;
    int in = (bd == e1) ? e2 : e1;
    check(!t.arcs_[in].cls.is_boundary(), "triangle with two boundary edges plus b");
    int inEdge = (bd == e1) ? (ts + 2) % 3 : (ts + 1) % 3;
    Slot keep = otherSlot(in, inEdge);
    t.arcs_[in].nslots = 1;
    t.arcs_[in].slot = {keep, Slot{}};
    t.arcs_[in].twisted = false;
    t.arcs_[in].cls = t.arcs_[bd].cls;  // relabeled below
    removed = bd;
  } else {
    Slot s1 = otherSlot(e1, (ts + 1) % 3);
    Slot s2 = otherSlot(e2, (ts + 2) % 3);
    bool tw = t.arcs_[e1].twisted ^ t.arcs_[e2].twisted;
    t.arcs_[e1].slot = {s1, s2};
    t.arcs_[e1].twisted = tw;
    t.faces_[s2.face].arc[s2.edge] = e1;
    removed = e2;
  }
  // Drop face tf and the two dead arc records; compact indices.
  std::vector<int> faceMap(t.faces_.size());
  {
    std::vector<Face> nf;
    for (int f = 0; f < (int)t.faces_.size(); ++f) {
      faceMap[f] = (f == tf) ? -1 : (int)nf.size();
      if (f != tf) nf.push_back(t.faces_[f]);
    }
    t.faces_ = std::move(nf);
  }
  std::vector<int> arcMap(t.arcs_.size());
  {
    std::vector<ArcRec> na;
    for (int a = 0; a < (int)t.arcs_.size(); ++a) {
      arcMap[a] = (a == idB || a == removed) ? -1 : (int)na.size();
      if (arcMap[a] >= 0) na.push_back(t.arcs_[a]);
    }
    t.arcs_ = std::move(na);
  }
  for (auto& rec : t.arcs_)
    for (int s = 0; s < rec.nslots; ++s) {
      rec.slot[s].face = faceMap[rec.slot[s].face];
      check(rec.slot[s].face >= 0, "contract: slot on removed face");
    }
  for (auto& fc : t.faces_)
    for (int e = 0; e < 3; ++e) {
      fc.arc[e] = arcMap[fc.arc[e]];
      check(fc.arc[e] >= 0, "contract: face slot on removed arc");
    }
  // Relabel: b's endpoints merge, and the boundary numbering reverses
  // across the collapse position (the strip's drawing flips over when a cap
  // is contracted; without the reversal the far-apart families cannot
  // satisfy their contraction recursion literally).
  const int k = b.u;
  const int nn = n_ - 1;
  const int merged = (k == n_ - 1) ? 0 : k;
  auto newLabel = [&](Point p) {
    int c = (k == n_ - 1) ? (p == n_ - 1 ? 0 : p) : (p > k ? p - 1 : p);
    return imod(2 * merged + 1 - c, nn);
  };
  for (auto& fc : t.faces_)
    for (auto& c : fc.corner) c = newLabel(c);
  for (auto& rec : t.arcs_)
    if (rec.cls.is_boundary())
      rec.cls = boundary_arc(nn, newLabel(rec.cls.v));  // reversal swaps ends
  t.n_ = nn;
  t.finalize(Finalize::DeriveInterior);
  return t;
}

inline DiskTriangulation Triangulation::cut_along(const ArcClass& a) const {
  int id = find_arc(a);
  require(id >= 0 && a.is_interior(), Errc::ArcNotInTriangulation, to_string(a));
  require(a.is_nonsep(), Errc::NotNonSeparating, to_string(a));
  {
    std::vector<int> comp;
    check(face_components(id, comp) == 1, "non-separating cut must stay connected");
  }
  auto orbits = corner_orbits(id);
  std::vector<Point> labelOfOrbit(3 * faces_.size(), -1);
  for (int c = 0; c < 3 * (int)faces_.size(); ++c)
    labelOfOrbit[orbits[c]] = faces_[c / 3].corner[c % 3];
  struct BEdge {
    Slot s;
    int arc;
  };
  std::vector<BEdge> bedges;
  for (int x = 0; x < (int)arcs_.size(); ++x) {
    if (arcs_[x].cls.is_boundary()) bedges.push_back({arcs_[x].slot[0], x});
    if (x == id) {
      bedges.push_back({arcs_[x].slot[0], x});
      bedges.push_back({arcs_[x].slot[1], x});
    }
  }
  const int m = n_ + 2;
  check((int)bedges.size() == m, "disk boundary edge count");
  auto cid = [](Slot s) { return 3 * s.face + s.edge; };
  auto tailOrb = [&](const BEdge& e) { return orbits[cid(e.s)]; };
  auto headOrb = [&](const BEdge& e) {
    return orbits[3 * e.s.face + (e.s.edge + 1) % 3];
  };
  std::map<int, std::vector<int>> atOrbit;
  for (int i = 0; i < m; ++i) {
    atOrbit[tailOrb(bedges[i])].push_back(i);
    atOrbit[headOrb(bedges[i])].push_back(i);
  }
  check((int)atOrbit.size() == m, "cut disk must have n+2 boundary vertices");
  for (auto& [o, v] : atOrbit) check(v.size() == 2, "boundary vertex degree");
  std::vector<int> cycEdge(m), cycOrb(m);
  {
    int e = 0, orb = tailOrb(bedges[0]);
    for (int i = 0; i < m; ++i) {
      cycEdge[i] = e;
      cycOrb[i] = orb;
      int next = headOrb(bedges[e]) == orb ? tailOrb(bedges[e]) : headOrb(bedges[e]);
      const auto& two = atOrbit[next];
      e = (two[0] == e) ? two[1] : two[0];
      orb = next;
    }
    check(orb == tailOrb(bedges[0]) && e == 0, "boundary walk must close");
  }
  // Candidate readings place one cut-arc copy as the closing edge; pick the
  // lexicographically smallest structure for determinism.
  struct Reading {
    std::vector<int> orbs, edges;
  };
  auto makeReading = [&](int startPos, int dirn) {
    Reading r;
    r.orbs.resize(m);
    r.edges.resize(m);
    for (int i = 0; i < m; ++i) {
      int idx = imod(startPos + dirn * i, m);
      r.orbs[i] = cycOrb[idx];
      r.edges[i] = dirn > 0 ? cycEdge[idx] : cycEdge[imod(idx - 1, m)];
    }
    return r;
  };
  std::vector<Reading> candidates;
  for (int i = 0; i < m; ++i) {
    if (bedges[cycEdge[i]].arc != id) continue;
    candidates.push_back(makeReading(imod(i + 1, m), +1));
    candidates.push_back(makeReading(i, -1));
  }
  check(!candidates.empty(), "cut edges missing from the boundary walk");
  auto buildDisk = [&](const Reading& r) {
    DiskTriangulation D;
    D.size = m;
    D.point_of.resize(m);
    D.edge_cls.resize(m);
    std::map<int, int> pos;
    for (int i = 0; i < m; ++i) {
      pos[r.orbs[i]] = i;
      D.point_of[i] = labelOfOrbit[r.orbs[i]];
      D.edge_cls[i] = arcs_[bedges[r.edges[i]].arc].cls;
    }
    for (int i = 0; i < m; ++i)
      if (bedges[r.edges[i]].arc == id) D.cut_edges.push_back(i);
    for (int x = 0; x < (int)arcs_.size(); ++x) {
      if (!arcs_[x].cls.is_interior() || x == id) continue;
      Slot s = arcs_[x].slot[0];
      int pa = pos.at(orbits[cid(s)]);
      int pb = pos.at(orbits[3 * s.face + (s.edge + 1) % 3]);
      check(pa != pb, "chord with equal disk endpoints");
      D.chords.push_back({std::min(pa, pb), std::max(pa, pb), arcs_[x].cls});
    }
    std::sort(D.chords.begin(), D.chords.end(),
              [](const DiskTriangulation::Chord& x, const DiskTriangulation::Chord& y) {
                return std::tie(x.a, x.b) < std::tie(y.a, y.b);
              });
    for (int f = 0; f < (int)faces_.size(); ++f) {
      std::array<int, 3> t{pos.at(orbits[3 * f]), pos.at(orbits[3 * f + 1]),
                           pos.at(orbits[3 * f + 2])};
      std::sort(t.begin(), t.end());
      D.tris.push_back(t);
    }
    std::sort(D.tris.begin(), D.tris.end());
    return D;
  };
  auto sig = [](const DiskTriangulation& D) {
    std::vector<int> s = D.point_of;
    s.push_back(-1);
    for (int e : D.cut_edges) s.push_back(e);
    s.push_back(-1);
    for (const auto& c : D.chords) {
      s.push_back(c.a);
      s.push_back(c.b);
    }
    return s;
  };
  DiskTriangulation best = buildDisk(candidates[0]);
  std::vector<int> bestSig = sig(best);
  for (size_t i = 1; i < candidates.size(); ++i) {
    DiskTriangulation d = buildDisk(candidates[i]);
    auto s = sig(d);
    if (s < bestSig) {
      bestSig = std::move(s);
      best = std::move(d);
    }
  }
  check((int)best.cut_edges.size() == 2, "two copies of the cut arc");
  return best;
}

inline Triangulation Triangulation::reflected(int c) const {
  std::vector<ArcClass> cls;
  for (const auto& r : arcs_)
    if (r.cls.is_interior()) cls.push_back(reflect_class(n_, r.cls, c));
  return build(n_, std::move(cls));
}

// ------------------------------- build ------------------------------------

inline Triangulation Triangulation::build(int n, std::vector<ArcClass> interior) {
  require(n >= 1, Errc::InvalidSize, "n must be positive");
  std::sort(interior.begin(), interior.end());
  for (size_t i = 0; i + 1 < interior.size(); ++i)
    require(!(interior[i] == interior[i + 1]), Errc::DuplicateArc,
            to_string(interior[i]));
  for (const auto& c : interior)
    require(c.is_interior() && valid_class(n, c), Errc::InvalidArgument,
            "not a valid interior class for this n: " + to_string(c));
  require((int)interior.size() >= n, Errc::NotMaximal,
          "a triangulation of M_n has exactly n interior arcs");
  require((int)interior.size() <= n, Errc::CrossingArcs,
          "more than n interior classes cannot be pairwise disjoint");

  ArcClass alpha{};
  bool found = false;
  for (const auto& c : interior)
    if (c.is_nonsep()) {
      alpha = c;
      found = true;
      break;
    }
  // Any system of n pairwise disjoint interior arcs contains an arc through
  // the cross-cap; a purely separating family of size n must self-cross.
  require(found, Errc::CrossingArcs, "no non-separating arc in the system");

  const int m = n + 2;
  const bool loopCut = alpha.is_loop();
  const Point a = alpha.u, b = alpha.v;
  const int D = loopCut ? 0 : cw_gap(n, b, a);
  std::vector<Point> poly(m);
  std::vector<int> bedgeU(m, -1);  // boundary edge position -> boundary arc u
  int eA, eB;                      // cut edge positions
  if (!loopCut) {
    for (int i = 0; i <= D; ++i) poly[i] = imod(b + i, n);
    poly[D + 1] = b;
    for (int j = 1; j <= n - D; ++j) poly[D + 1 + j] = imod(b - j, n);
    for (int i = 0; i < D; ++i) bedgeU[i] = imod(b + i, n);
    for (int k = D + 1; k <= n; ++k) bedgeU[k] = imod(b - (k - D), n);
    eA = D;
    eB = n + 1;
  } else {
    for (int i = 0; i < n; ++i) {
      poly[i] = imod(a + i, n);
      bedgeU[i] = imod(a + i, n);
    }
    poly[n] = a;
    poly[n + 1] = a;
    eA = n;
    eB = n + 1;
  }

  auto defR = [&](Point x) { return !loopCut && cw_gap(n, b, x) <= D; };
  auto posR = [&](Point x) { return cw_gap(n, b, x); };
  auto defB = [&](Point x) { return !loopCut && cw_gap(n, x, b) <= n - D; };
  auto posB = [&](Point x) { return D + 1 + cw_gap(n, x, b); };

  std::map<std::pair<int, int>, ArcClass> chordCls;
  for (const auto& c : interior) {
    if (c == alpha) continue;
    int i = -1, j = -1;
    switch (c.kind) {
      case ArcKind::SepLoop: {
        require(loopCut && c.u == a, Errc::CrossingArcs,
                to_string(c) + " crosses " + to_string(alpha));
        i = 0;
        j = n;
        break;
      }
      case ArcKind::NonSepChord:
      case ArcKind::NonSepLoop: {
        if (loopCut) {
          require(!c.is_loop() && c.touches(a), Errc::CrossingArcs,
                  to_string(c) + " crosses " + to_string(alpha));
          Point z = (c.u == a) ? c.v : c.u;
          i = cw_gap(n, a, z);
          j = n + 1;
        } else {
          Point x = c.u, y = c.v;
          if (defR(x) && defB(y)) {
            i = posR(x);
            j = posB(y);
          } else if (defB(x) && defR(y)) {
            i = posB(x);
            j = posR(y);
          } else {
            fail(Errc::CrossingArcs, to_string(c) + " crosses " + to_string(alpha));
          }
        }
        break;
      }
      case ArcKind::SepChord: {
        Point s = c.u, t = c.v;
        int len = cw_gap(n, s, t);
        auto strictlyInside = [&](Point w) {
          int g = cw_gap(n, s, w);
          return 0 < g && g < len;
        };
        if (loopCut) {
          require(!strictlyInside(a), Errc::CrossingArcs,
                  to_string(c) + " crosses " + to_string(alpha));
          i = (s == a) ? 0 : cw_gap(n, a, s);
          j = (t == a) ? n : cw_gap(n, a, t);
        } else {
          require(!strictlyInside(a) && !strictlyInside(b), Errc::CrossingArcs,
                  to_string(c) + " crosses " + to_string(alpha));
          if (defR(s) && defR(t) && posR(s) < posR(t)) {
            i = posR(s);
            j = posR(t);
          } else if (defB(s) && defB(t) && posB(t) < posB(s)) {
            i = posB(t);
            j = posB(s);
          } else {
            fail(Errc::CrossingArcs, to_string(c) + " crosses " + to_string(alpha));
          }
        }
        break;
      }
      case ArcKind::Boundary: check(false, "boundary class in interior list");
    }
    if (i > j) std::swap(i, j);
    check(0 <= i && i < j && j < m, "chord placement out of range");
    check(j - i >= 2 && !(i == 0 && j == m - 1), "class mapped onto a polygon edge");
    check(!chordCls.count({i, j}), "two classes mapped to one chord");
    chordCls[{i, j}] = c;
  }

  // Pairwise non-crossing in the polygon (shared endpoints allowed).
  {
    std::vector<std::pair<int, int>> cs(chordCls.size());
    size_t z = 0;
    for (const auto& [pq, c] : chordCls) cs[z++] = pq;
    for (size_t x = 0; x < cs.size(); ++x)
      for (size_t y = x + 1; y < cs.size(); ++y) {
        auto [i1, j1] = cs[x];
        auto [i2, j2] = cs[y];
        bool cross = (i1 < i2 && i2 < j1 && j1 < j2) || (i2 < i1 && i1 < j2 && j2 < j1);
        require(!cross, Errc::CrossingArcs, to_string(chordCls[cs[x]]) + " crosses " +
                                                to_string(chordCls[cs[y]]));
      }
  }

  // Extract polygon faces; with n-1 pairwise non-crossing chords every
  // region is a triangle.
  auto present = [&](int x, int y) {
    return y - x == 1 || (x == 0 && y == m - 1) || chordCls.count({x, y}) > 0;
  };
  std::vector<std::array<int, 3>> ptris;
  std::function<void(int, int)> solveRegion = [&](int lo, int hi) {
    if (hi - lo <= 1) return;
    int k = -1;
    for (int t = lo + 1; t < hi; ++t)
      if (present(lo, t) && present(t, hi)) {
        k = t;
        break;
      }
    check(k >= 0, "polygon region without an ear");
    ptris.push_back({lo, k, hi});
    solveRegion(lo, k);
    solveRegion(k, hi);
  };
  solveRegion(0, m - 1);
  check((int)ptris.size() == n, "polygon face count");

  // Assemble the map.
  Triangulation t;
  t.n_ = n;
  t.faces_.resize(n);
  std::map<std::pair<int, int>, int> arcIdOfSeg;  // polygon segment -> arc id
  auto segOfEdge = [&](int f, int e) {
    int x = ptris[f][e], y = ptris[f][(e + 1) % 3];
    if (x > y) std::swap(x, y);
    return std::make_pair(x, y);
  };
  // arc records: boundary (by u), then interior classes in canonical order
  std::vector<ArcClass> order;
  for (int u = 0; u < n; ++u) order.push_back(boundary_arc(n, u));
  for (const auto& c : interior) order.push_back(c);
  for (const auto& c : order) t.arcs_.push_back(ArcRec{c, 0, {}, false});
  auto idOfClass = [&](const ArcClass& c) {
    int id = t.find_arc(c);
    check(id >= 0, "arc record missing");
    return id;
  };
  for (int f = 0; f < n; ++f) {
    for (int e = 0; e < 3; ++e) {
      auto [x, y] = segOfEdge(f, e);
      int arcId;
      if (y - x == 1 || (x == 0 && y == m - 1)) {
        int p = (y - x == 1) ? x : m - 1;  // boundary edge position
        arcId = (p == eA || p == eB) ? idOfClass(alpha) : idOfClass(boundary_arc(n, bedgeU[p]));
      } else {
        arcId = idOfClass(chordCls.at({x, y}));
      }
      t.faces_[f].corner[e] = poly[ptris[f][e]];
      t.faces_[f].arc[e] = arcId;
      ArcRec& rec = t.arcs_[arcId];
      check(rec.nslots < 2, "arc with more than two slots");
      rec.slot[rec.nslots++] = Slot{f, e};
    }
  }
  // The re-gluing of the two cut-arc copies runs against the coherent
  // orientation of the polygon faces; every other pairing is straight.
  t.arcs_[idOfClass(alpha)].twisted = true;
  t.finalize(Finalize::VerifyInterior);
  return t;
}

// ------------------------------- decode -----------------------------------

inline Triangulation Triangulation::decode(const std::string& key) {
  size_t p = 0;
  auto byte = [&]() -> int {
    require(p < key.size(), Errc::ParseError, "truncated key");
    return (unsigned char)key[p++];
  };
  int n = byte();
  require(n >= 1 && n <= 120, Errc::ParseError, "bad size in key");
  Triangulation t;
  t.n_ = n;
  t.faces_.resize(n);
  struct Ref {
    int g = -1, pos = -1, tw = 0;
  };
  std::vector<std::array<Ref, 3>> refs(n);
  std::vector<std::array<bool, 3>> isBoundary(n, {false, false, false});
  for (int f = 0; f < n; ++f)
    for (int e = 0; e < 3; ++e) {
      int tail = byte();
      require(tail >= 0 && tail < n, Errc::ParseError, "bad corner label");
      t.faces_[f].corner[e] = tail;
      int tag = byte();
      if (tag == 0xFF) {
        isBoundary[f][e] = true;
        continue;
      }
      require(tag == 1, Errc::ParseError, "bad slot tag");
      Ref r;
      r.g = byte();
      r.pos = byte();
      r.tw = byte();
      require(r.g >= 0 && r.g < n && r.pos >= 0 && r.pos < 3 && (r.tw == 0 || r.tw == 1),
              Errc::ParseError, "bad pairing reference");
      refs[f][e] = r;
    }
  require(p == key.size(), Errc::ParseError, "trailing bytes in key");
  require(isBoundary[0][0], Errc::ParseError, "key must start at a boundary slot");
  // Pairings.
  std::vector<std::array<int, 3>> arcAt(n, {-1, -1, -1});
  for (int f = 0; f < n; ++f)
    for (int e = 0; e < 3; ++e) {
      if (isBoundary[f][e] || arcAt[f][e] >= 0) continue;
      const Ref& r = refs[f][e];
      const Ref& back = refs[r.g][r.pos];
      require(back.g == f && back.pos == e && back.tw == r.tw, Errc::ParseError,
              "pairing references disagree");
      require(!(r.g == f && r.pos == e), Errc::ParseError, "self-paired slot");
      ArcRec rec;
      rec.cls = nonsep_loop(0);  // derived below
      rec.nslots = 2;
      rec.slot = {Slot{f, e}, Slot{r.g, r.pos}};
      rec.twisted = r.tw == 1;
      int id = (int)t.arcs_.size();
      t.arcs_.push_back(rec);
      arcAt[f][e] = id;
      arcAt[r.g][r.pos] = id;
    }
  // Boundary naming: the anchor slot is boundary arc (0,1); walk the circle.
  std::vector<Slot> bslots;
  for (int f = 0; f < n; ++f)
    for (int e = 0; e < 3; ++e)
      if (isBoundary[f][e]) bslots.push_back(Slot{f, e});
  require((int)bslots.size() == n, Errc::ParseError, "boundary arc count");
  {
    // temporary records so corner orbits see the pairings
    for (const auto& fc : t.faces_) (void)fc;
    Triangulation tmp = t;  // arcs_ so far are the pairings only
    // orbit computation needs complete slot coverage; emulate with a local DSU
    detail::Dsu dsu(3 * n);
    auto cidL = [](int f, int k) { return 3 * f + k; };
    for (const auto& rec : t.arcs_) {
      auto [f, i] = rec.slot[0];
      auto [g, j] = rec.slot[1];
      if (!rec.twisted) {
        dsu.unite(cidL(f, i), cidL(g, (j + 1) % 3));
        dsu.unite(cidL(f, (i + 1) % 3), cidL(g, j));
      } else {
        dsu.unite(cidL(f, i), cidL(g, j));
        dsu.unite(cidL(f, (i + 1) % 3), cidL(g, (j + 1) % 3));
      }
    }
    std::map<int, std::vector<int>> slotsAtOrbit;  // orbit -> indices into bslots
    auto tailO = [&](Slot s) { return dsu.find(cidL(s.face, s.edge)); };
    auto headO = [&](Slot s) { return dsu.find(cidL(s.face, (s.edge + 1) % 3)); };
    for (int i = 0; i < n; ++i) {
      slotsAtOrbit[tailO(bslots[i])].push_back(i);
      slotsAtOrbit[headO(bslots[i])].push_back(i);
    }
    std::vector<int> nameOf(n, -1);  // bslot index -> boundary u
    int cur = 0;  // anchor: slot (0,0) named boundary(0)
    for (int i = 0; i < n; ++i)
      if (bslots[i] == Slot{0, 0}) cur = i;
    nameOf[cur] = 0;
    int curOrbit = headO(bslots[cur]);  // endpoint labeled 1 for n >= 2
    if (n >= 2 && t.faces_[0].corner[0] != 0) curOrbit = tailO(bslots[cur]);
    for (int u = 1; u < n; ++u) {
      const auto& two = slotsAtOrbit[curOrbit];
      require(two.size() == 2, Errc::ParseError, "boundary walk degree");
      int nxt = (nameOf[two[0]] < 0) ? two[0] : two[1];
      require(nameOf[nxt] < 0, Errc::ParseError, "boundary walk stuck");
      nameOf[nxt] = u;
      curOrbit = (tailO(bslots[nxt]) == curOrbit) ? headO(bslots[nxt]) : tailO(bslots[nxt]);
    }
    for (int i = 0; i < n; ++i) {
      ArcRec rec;
      rec.cls = boundary_arc(n, nameOf[i]);
      rec.nslots = 1;
      rec.slot = {bslots[i], Slot{}};
      t.arcs_.push_back(rec);
    }
    (void)tmp;
  }
  for (int f = 0; f < n; ++f)
    for (int e = 0; e < 3; ++e)
      if (!isBoundary[f][e]) t.faces_[f].arc[e] = arcAt[f][e];
  for (const auto& rec : t.arcs_)
    if (rec.cls.is_boundary()) {
      // fill boundary arc ids into faces
    }
  for (int i = 0; i < (int)t.arcs_.size(); ++i)
    for (int s = 0; s < t.arcs_[i].nslots; ++s)
      t.faces_[t.arcs_[i].slot[s].face].arc[t.arcs_[i].slot[s].edge] = i;
  t.finalize(Finalize::DeriveInterior);
  require(t.key_ == key, Errc::ParseError, "key does not canonicalize to itself");
  return t;
}

}  // namespace moebius
