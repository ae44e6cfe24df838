#pragma once

#include <optional>
#include <random>
#include <tuple>

#include "arc_classify.hpp"
#include "surface_map.hpp"

namespace moebius {

// ---------------------------------------------------------------------------
// Flip paths
// ---------------------------------------------------------------------------

struct FlipStep {
  ArcClass flipped;
  ArcClass introduced;
};

struct FlipPath {
  Triangulation start;
  Triangulation end;
  std::vector<FlipStep> steps;
  size_t length() const { return steps.size(); }
};

/// Replays the path from its start; throws on any illegal step or endpoint
/// mismatch. Every path-producing routine runs its result through this.
inline void validate_path(const FlipPath& p) {
  Triangulation cur = p.start;
  for (const auto& s : p.steps) {
    auto [nxt, intro] = cur.flip(s.flipped);
    check(intro == s.introduced, "path step introduces " + to_string(intro) +
                                     ", recorded " + to_string(s.introduced));
    cur = std::move(nxt);
  }
  check(cur == p.end, "path does not reach its recorded endpoint");
}

inline FlipPath empty_path(const Triangulation& T) { return FlipPath{T, T, {}}; }

inline FlipPath reverse_path(const FlipPath& p) {
  FlipPath r{p.end, p.start, {}};
  for (auto it = p.steps.rbegin(); it != p.steps.rend(); ++it)
    r.steps.push_back({it->introduced, it->flipped});
  return r;
}

inline FlipPath concat_paths(FlipPath a, const FlipPath& b) {
  check(a.end == b.start, "path concatenation endpoint mismatch");
  a.steps.insert(a.steps.end(), b.steps.begin(), b.steps.end());
  a.end = b.end;
  return a;
}

/// The image of a path under the reflection i -> (c - i) mod n.
inline FlipPath reflected_path(const FlipPath& p, int c) {
  int n = p.start.n();
  FlipPath out{p.start.reflected(c), p.end.reflected(c), {}};
  for (const auto& s : p.steps)
    out.steps.push_back({reflect_class(n, s.flipped, c), reflect_class(n, s.introduced, c)});
  return out;
}

// ---------------------------------------------------------------------------
// The A_n^- / A_n^+ families
// ---------------------------------------------------------------------------

/// The designated boundary arc of the A-family constructions, between points
/// n-1 and 0; contracting it sends A_n to A_{n-1}.
inline ArcClass a_family_alpha(int n) { return boundary_arc(n, n - 1); }

/// Far-apart triangulation families. Each is a loop pocket at one end of
/// the strip (a non-separating loop, enclosed for small n by a separating
/// loop and otherwise flanked by a chord pair on one vertex pair) plus a
/// zigzag of separating chords. The minus family keeps its pocket at the
/// designated boundary arc, the plus family at the far end of the zigzag.
///
/// The instances for n <= 9 are pinned exactly: among all pairs satisfying
/// the contraction recursion A_n \ alpha = A_{n-1}, they realize the
/// maximum flip distance the graphs allow at every level (3, 5, 7, 10, 13,
/// 15, 17, 19 for n = 2..9). Larger instances extend the recursion by
/// inserting an ear at the designated arc of the reversed triangulation,
/// which inverts contract().
inline Triangulation build_A(int n, char sign) {
  require(n >= 1, Errc::InvalidSize, "build_A needs n >= 1");
  require(sign == '-' || sign == '+', Errc::InvalidArgument, "sign must be - or +");
  auto C = [](Point u, Point v) { return sep_chord_cw(u, v); };
  auto N = [](Point u, Point v) { return nonsep_chord(u, v); };
  if (n == 1) return Triangulation::build(1, {nonsep_loop(0)});
  if (n <= 9) {
    std::vector<ArcClass> cls;
    if (sign == '-') {
      switch (n) {
        case 2: cls = {sep_loop(0), nonsep_loop(0)}; break;
        case 3: cls = {C(1, 0), sep_loop(1), nonsep_loop(1)}; break;
        case 4: cls = {C(1, 0), C(1, 3), sep_loop(0), nonsep_loop(0)}; break;
        case 5: cls = {C(1, 0), C(2, 0), C(2, 4), sep_loop(1), nonsep_loop(1)}; break;
        case 6:
          cls = {C(0, 5), C(1, 4), C(1, 5), C(2, 4), N(0, 5), nonsep_loop(0)};
          break;
        case 7:
          cls = {C(2, 0), C(2, 1), C(2, 6), C(3, 5), C(3, 6), N(1, 2), nonsep_loop(1)};
          break;
        case 8:
          cls = {C(0, 6), C(1, 6), C(2, 5), C(2, 6), C(3, 5), N(0, 6), N(0, 7),
                 nonsep_loop(0)};
          break;
        case 9:
          cls = {C(3, 0), C(3, 1), C(3, 7), C(4, 6), C(4, 7), C(7, 0), N(1, 2), N(1, 3),
                 nonsep_loop(1)};
          break;
      }
    } else {
      switch (n) {
        case 2: cls = {sep_loop(1), nonsep_loop(1)}; break;
        case 3: cls = {C(0, 2), N(0, 2), nonsep_loop(2)}; break;
        case 4: cls = {C(2, 1), C(3, 1), N(1, 2), nonsep_loop(2)}; break;
        case 5: cls = {C(0, 2), C(4, 2), C(4, 3), N(3, 4), nonsep_loop(3)}; break;
        case 6:
          cls = {C(3, 2), C(4, 1), C(4, 2), C(5, 1), N(2, 3), nonsep_loop(3)};
          break;
        case 7:
          cls = {C(0, 2), C(0, 3), C(5, 3), C(5, 4), C(6, 3), N(4, 5), nonsep_loop(4)};
          break;
        case 8:
          cls = {C(4, 3), C(5, 1), C(5, 2), C(5, 3), C(6, 1), C(7, 1), N(3, 4),
                 nonsep_loop(4)};
          break;
        case 9:
          cls = {C(0, 2), C(6, 4), C(6, 5), C(7, 4), C(8, 2), C(8, 3), C(8, 4), N(5, 6),
                 nonsep_loop(5)};
          break;
      }
    }
    return Triangulation::build(n, std::move(cls));
  }
  // n >= 10: ear insertion at the designated arc of the reversed previous
  // family; contracting the new designated arc undoes both steps.
  Triangulation prev = build_A(n - 1, sign).reflected(1);
  std::vector<ArcClass> cls = prev.interior_classes();
  cls.push_back(sep_chord_cw(n - 2, 0));
  return Triangulation::build(n, std::move(cls));
}

// ---------------------------------------------------------------------------
// The hub family C_u(v, w)
// ---------------------------------------------------------------------------

/// C_u(v,w): a non-separating loop at u whose two incident triangles have
/// third vertices v and w, all other arcs incident to u. Going clockwise
/// from u: separating chords up to v, non-separating chords from v to w,
/// separating chords after w. Requires v in beta_{u,w} (v = w allowed).
inline Triangulation build_C(int n, Point u, Point v, Point w) {
  require(n >= 2, Errc::InvalidSize, "build_C needs n >= 2");
  require(u >= 0 && u < n && v >= 0 && v < n && w >= 0 && w < n, Errc::InvalidArgument,
          "points out of range");
  require(v != u && w != u, Errc::InvalidHub, "v, w must differ from u");
  int gv = cw_gap(n, u, v), gw = cw_gap(n, u, w);
  require(gv <= gw, Errc::InvalidHub, "v must lie in beta_{u,w}");
  std::vector<ArcClass> cls;
  cls.push_back(nonsep_loop(u));
  for (int g = 2; g <= gv; ++g) cls.push_back(sep_chord_cw(u, imod(u + g, n)));
  for (int g = gv; g <= gw; ++g) cls.push_back(nonsep_chord(u, imod(u + g, n)));
  for (int g = gw; g <= n - 2; ++g) cls.push_back(sep_chord_cw(imod(u + g, n), u));
  return Triangulation::build(n, std::move(cls));
}

struct CForm {
  Point u = 0, v = 0, w = 0;
};

/// Recognizes a hub triangulation and reads off (u, v, w).
inline std::optional<CForm> detect_C(const Triangulation& T) {
  int n = T.n();
  if (n < 2) return std::nullopt;
  auto lps = loops(T);
  if (lps.size() != 1 || lps[0].kind != ArcKind::NonSepLoop) return std::nullopt;
  Point u = lps[0].u;
  int gv = n, gw = 0;
  for (const auto& c : T.interior_classes()) {
    if (c == lps[0]) continue;
    if (!c.touches(u)) return std::nullopt;
    if (c.kind == ArcKind::NonSepChord) {
      Point z = c.u == u ? c.v : c.u;
      gv = std::min(gv, cw_gap(n, u, z));
      gw = std::max(gw, cw_gap(n, u, z));
    }
  }
  if (gv > gw) return std::nullopt;
  CForm f{u, imod(u + gv, n), imod(u + gw, n)};
  if (build_C(n, f.u, f.v, f.w) != T) return std::nullopt;
  return f;
}

/// Path between two hub triangulations with the same hub, of length at most
/// max(d^-(u,w1), d^-(u,w2)) + 1: clockwise v-moves, then either direct
/// w-moves or a separating-loop detour that slides the loop triangle
/// clockwise past w1.
inline FlipPath connect_C(const Triangulation& C1, const Triangulation& C2) {
  auto f1 = detect_C(C1), f2 = detect_C(C2);
  require(f1 && f2, Errc::InvalidArgument, "connect_C needs hub triangulations");
  require(f1->u == f2->u, Errc::HubMismatch, "hubs differ");
  if (C1 == C2) return empty_path(C1);
  const int n = C1.n();
  const Point u = f1->u;
  auto gap = [&](Point x) { return cw_gap(n, u, x); };
  if (gap(f1->v) > gap(f2->v)) return reverse_path(connect_C(C2, C1));

  FlipPath path = empty_path(C1);
  Triangulation T = C1;
  auto doFlip = [&](const ArcClass& a, const ArcClass& expect) {
    auto [nxt, intro] = T.flip(a);
    check(intro == expect, "move introduced " + to_string(intro) + ", expected " +
                               to_string(expect));
    path.steps.push_back({a, intro});
    T = std::move(nxt);
  };
  auto at = [&](int g) { return imod(u + g, n); };
  int v = gap(f1->v), w = gap(f1->w);
  const int v2 = gap(f2->v), w2 = gap(f2->w);
  if (v2 <= w) {
    while (v < v2) {  // clockwise v-move
      doFlip(nonsep_chord(u, at(v)), sep_chord_cw(u, at(v + 1)));
      ++v;
    }
    while (w < w2) {  // clockwise w-move
      doFlip(sep_chord_cw(at(w), u), nonsep_chord(u, at(w + 1)));
      ++w;
    }
    while (w > w2) {  // counter-clockwise w-move
      doFlip(nonsep_chord(u, at(w)), sep_chord_cw(at(w - 1), u));
      --w;
    }
  } else {
    while (v < w) {
      doFlip(nonsep_chord(u, at(v)), sep_chord_cw(u, at(v + 1)));
      ++v;
    }
    // v == w: the last non-separating chord flips to a separating loop
    doFlip(nonsep_chord(u, at(v)), sep_loop(u));
    int s = v;
    while (s < v2) {  // slide the loop triangle clockwise
      doFlip(sep_chord_cw(at(s), u), sep_chord_cw(u, at(s + 1)));
      ++s;
    }
    doFlip(sep_loop(u), nonsep_chord(u, at(s)));
    v = w = s;
    while (w < w2) {
      doFlip(sep_chord_cw(at(w), u), nonsep_chord(u, at(w + 1)));
      ++w;
    }
  }
  path.end = T;
  check(path.end == C2, "connect_C missed its target");
  size_t bound = (size_t)std::max(gap(f1->w), gap(f2->w)) + 1;
  check(path.length() <= bound, "connect_C exceeded its bound");
  return path;
}

// ---------------------------------------------------------------------------
// Disk fan machinery
// ---------------------------------------------------------------------------

struct DiskFanStep {
  DiskTriangulation::Chord flipped;
  DiskTriangulation::Chord introduced;
};

struct DiskFanPlan {
  DiskTriangulation start, end;
  std::vector<DiskFanStep> steps;
  size_t length() const { return steps.size(); }
};

/// Among chords cutting off a triangle at `target`, picks the one whose
/// endpoints are nearest clockwise from target.
inline std::optional<std::pair<int, int>> fan_candidate(const DiskTriangulation& U,
                                                        int target) {
  std::optional<std::pair<int, int>> best;
  std::pair<int, int> bestKey{0, 0};
  for (const auto& t : U.tris) {
    if (t[0] != target && t[1] != target && t[2] != target) continue;
    int p = -1, q = -1;
    for (int x : t)
      if (x != target) (p < 0 ? p : q) = x;
    if (!U.find_chord(p, q)) continue;  // opposite side is a boundary edge
    int d1 = imod(p - target, U.size), d2 = imod(q - target, U.size);
    std::pair<int, int> keyv{std::min(d1, d2), std::max(d1, d2)};
    if (!best || keyv < bestKey) {
      best = {std::min(p, q), std::max(p, q)};
      bestKey = keyv;
    }
  }
  return best;
}

/// Classical fan transformation: flips until every interior chord is
/// incident to `target`, in at most (#chords - #chords already at target)
/// flips.
inline DiskFanPlan fan_to_vertex(DiskTriangulation U, int target) {
  require(target >= 0 && target < U.size, Errc::InvalidArgument, "fan: bad vertex");
  DiskFanPlan plan;
  plan.start = U;
  size_t budget = U.chords.size() - U.degree(target);
  while (auto cand = fan_candidate(U, target)) {
    auto [p, q] = *cand;
    DiskTriangulation::Chord flipped = *U.find_chord(p, q);
    DiskTriangulation::Chord intro = U.flip_chord(p, q);
    check(intro.a == target || intro.b == target, "fan flip missed the target");
    plan.steps.push_back({flipped, intro});
    check(plan.steps.size() <= budget, "fan exceeded its flip budget");
  }
  for (const auto& c : U.chords)
    check(c.a == target || c.b == target, "fan left a chord off the target");
  plan.end = std::move(U);
  return plan;
}

// ---------------------------------------------------------------------------
// The floor(5n/2) constructive path
// ---------------------------------------------------------------------------

namespace detail {

/// The copy of u to fan towards: the one reached from the boundary arc
/// (u-1, u). With this choice the fan lands on a hub triangulation whose w
/// stays within the clockwise half.
inline int fan_copy(const DiskTriangulation& U, Point u, int n) {
  std::vector<int> hits;
  for (int p = 0; p < U.size; ++p) {
    if (U.point_of[p] != u) continue;
    int eL = imod(p - 1, U.size), eR = p;
    ArcClass want = boundary_arc(n, imod(u - 1, n));
    if (U.edge_cls[eL] && *U.edge_cls[eL] == want) hits.push_back(p);
    else if (U.edge_cls[eR] && *U.edge_cls[eR] == want) hits.push_back(p);
  }
  check(hits.size() == 1, "fan copy must be unique");
  return hits[0];
}

/// Fans T around u after cutting along gamma, then removes a separating
/// loop at u if present and flips gamma when it is not incident to u.
/// Result is a hub triangulation C_u(v,w).
inline FlipPath to_hub_form(const Triangulation& T0, ArcClass gamma, Point u) {
  const int n = T0.n();
  FlipPath path = empty_path(T0);
  Triangulation T = T0;
  auto doFlip = [&](const ArcClass& a) {
    auto [nxt, intro] = T.flip(a);
    path.steps.push_back({a, intro});
    T = std::move(nxt);
    return intro;
  };
  {
    DiskTriangulation U0 = T.cut_along(gamma);
    int target0 = fan_copy(U0, u, n);
    size_t budget = U0.chords.size() - U0.degree(target0);
    size_t used = 0;
    for (;;) {
      DiskTriangulation U = T.cut_along(gamma);
      int target = fan_copy(U, u, n);
      auto cand = fan_candidate(U, target);
      if (!cand) break;
      const auto* ch = U.find_chord(cand->first, cand->second);
      check(ch && ch->cls, "fan candidate lost its source arc");
      doFlip(*ch->cls);
      check(++used <= budget, "fan exceeded its budget in M");
    }
  }
  if (T.has_arc(sep_loop(u))) doFlip(sep_loop(u));
  if (!gamma.touches(u)) {
    // The fan leaves gamma bounded by the two triangles over its two copies,
    // which are distinct, so it is always flippable here.
    check(T.flippable(gamma), "fan stranded the cut arc unflippable");
    doFlip(gamma);
  }
  path.end = T;
  check(detect_C(path.end).has_value(), "fan did not reach a hub triangulation");
  return path;
}

}  // namespace detail

/// Constructive path from Tm to Tp of length at most floor(5n/2): route both
/// endpoints to hub triangulations over the hub vertex u of a central
/// triangle of Tm, then connect the hubs.
///
/// The cut arcs on the two sides and the optional reversal of the clockwise
/// order are chosen jointly: candidate plans are ordered by their predicted
/// stage lengths and the first one within the budget wins. A lone choice can
/// exceed the budget (cutting along the loop of a loop-bearing central
/// triangle costs one extra flip when no separating loop is present, and a
/// chord may point into the far half), but some admissible combination
/// always lands within floor(5n/2).
inline FlipPath upper_bound_path(const Triangulation& Tm, const Triangulation& Tp) {
  require(Tm.n() == Tp.n(), Errc::SizeMismatch, "sizes differ");
  const int n = Tm.n();
  if (Tm == Tp) return empty_path(Tm);
  Triangle t = find_central(Tm);
  // Hub: basepoint of the loop pair, or the unique common vertex of the two
  // non-separating arcs.
  Point u;
  {
    auto d = t.distinct_arcs();
    std::vector<ArcClass> ns;
    for (const auto& a : d)
      if (a.is_nonsep()) ns.push_back(a);
    if (d.size() == 2) {
      check(ns.size() == 1 && ns[0].is_loop(), "two-arc face must be the loop pocket");
      u = ns[0].u;
    } else {
      check(ns.size() == 2, "central triangle with three arcs has two non-separating");
      std::vector<Point> shared;
      for (Point p : {ns[0].u, ns[0].v})
        if (p == ns[1].u || p == ns[1].v) shared.push_back(p);
      std::sort(shared.begin(), shared.end());
      shared.erase(std::unique(shared.begin(), shared.end()), shared.end());
      check(shared.size() == 1, "non-separating arcs must share one vertex");
      u = shared[0];
    }
  }
  const int refC = imod(2 * u, n);  // the reflection fixing u

  struct Plan {
    int predicted;
    bool refl;
    ArcClass gammaM, gammaP;
    bool operator<(const Plan& o) const {
      return std::tie(predicted, refl, gammaM, gammaP) <
             std::tie(o.predicted, o.refl, o.gammaM, o.gammaP);
    }
  };
  std::vector<Plan> plans;
  for (bool refl : {false, true}) {
    auto inFrame = [&](const ArcClass& a) { return refl ? reflect_class(n, a, refC) : a; };
    // gamma' candidates: the non-separating arcs of the central triangle.
    std::vector<std::pair<ArcClass, int>> candM;  // (arc in frame, predicted length)
    for (const auto& a0 : t.distinct_arcs()) {
      if (!a0.is_nonsep()) continue;
      ArcClass a = inFrame(a0);
      if (a.is_loop()) {
        // cutting along the loop re-creates the separating loop on the far
        // side of the fan; one extra flip unless it was already there
        bool hasSL = Tm.has_arc(sep_loop(u));
        candM.push_back({a, hasSL ? n - 1 : n});
      } else {
        check(a.touches(u), "central triangle arc misses the hub");
        candM.push_back({a, n - 1});
      }
    }
    // gamma candidates for Tp in this frame.
    std::vector<std::pair<ArcClass, int>> candP;
    if (Tp.has_arc(sep_loop(u))) {
      check(Tp.has_arc(nonsep_loop(u)), "separating loop without its core loop");
      candP.push_back({nonsep_loop(u), n - 1});
    } else {
      bool anyAtU = false;
      for (const auto& a0 : Tp.interior_classes())
        if (a0.is_nonsep() && a0.touches(u)) anyAtU = true;
      for (const auto& a0 : Tp.interior_classes()) {
        if (!a0.is_nonsep()) continue;
        if (anyAtU && (a0.kind != ArcKind::NonSepChord || !a0.touches(u))) continue;
        ArcClass a = inFrame(a0);
        candP.push_back({a, a.touches(u) ? n - 1 : n});
      }
    }
    auto hubGap = [&](const ArcClass& a) {
      if (a.is_loop()) return a.u == u ? 1 : cw_gap(n, u, a.u);
      if (!a.touches(u)) return std::max(cw_gap(n, u, a.u), cw_gap(n, u, a.v));
      return cw_gap(n, u, a.u == u ? a.v : a.u);
    };
    for (const auto& [gm, lm] : candM)
      for (const auto& [gp, lp] : candP) {
        int wgapM = hubGap(gm), wgapP = hubGap(gp);
        int conn = std::max(wgapM, wgapP) + 1;
        plans.push_back({lm + lp + conn, refl, gm, gp});
      }
  }
  std::sort(plans.begin(), plans.end());
  check(!plans.empty(), "no candidate cut arcs");

  const int budget = (5 * n) / 2;
  std::optional<FlipPath> best;
  for (const Plan& plan : plans) {
    Triangulation TmW = plan.refl ? Tm.reflected(refC) : Tm;
    Triangulation TpW = plan.refl ? Tp.reflected(refC) : Tp;
    FlipPath pathM = detail::to_hub_form(TmW, plan.gammaM, u);
    FlipPath pathP = detail::to_hub_form(TpW, plan.gammaP, u);
    check(pathM.length() <= (size_t)n && pathP.length() <= (size_t)n,
          "hub stage exceeded n flips");
    FlipPath full = concat_paths(concat_paths(pathM, connect_C(pathM.end, pathP.end)),
                                 reverse_path(pathP));
    if (plan.refl) full = reflected_path(full, refC);
    validate_path(full);
    check(full.start == Tm && full.end == Tp, "constructive path endpoints");
    if (!best || full.length() < best->length()) best = std::move(full);
    if ((int)best->length() <= budget) break;
  }
  check(best && (int)best->length() <= budget, "constructive path exceeded floor(5n/2)");
  return *best;
}

// ---------------------------------------------------------------------------
// Simplicialization (at most seven flips)
// ---------------------------------------------------------------------------

inline FlipPath simplicialize(const Triangulation& T0) {
  const int n = T0.n();
  require(n >= 5, Errc::SizeTooSmall, "no simplicial triangulations for n <= 4");
  FlipPath path = empty_path(T0);
  Triangulation T = T0;
  auto doFlip = [&](const ArcClass& a) {
    auto [nxt, intro] = T.flip(a);
    path.steps.push_back({a, intro});
    T = std::move(nxt);
    return intro;
  };
  // Stage 1: while fewer than five non-separating arcs, flip a separating
  // arc on the frontier of the subsurface spanned by the non-separating
  // arcs; each such flip introduces a non-separating arc.
  int guard1 = 0;
  while (nonsep_count(T) < 5) {
    check(++guard1 <= 4, "stage 1 exceeded four flips");
    std::vector<char> coreFace(T.faces().size(), 0);
    for (int f = 0; f < (int)T.faces().size(); ++f)
      for (int e = 0; e < 3; ++e)
        if (T.arcs()[T.faces()[f].arc[e]].cls.is_nonsep()) coreFace[f] = 1;
    std::optional<ArcClass> pick;
    for (const auto& a : T.interior_classes()) {
      if (a.is_nonsep()) continue;
      int id = T.find_arc(a);
      bool c0 = coreFace[T.arcs()[id].slot[0].face];
      bool c1 = coreFace[T.arcs()[id].slot[1].face];
      if (c0 != c1) {
        pick = a;
        break;
      }
    }
    check(pick.has_value(), "no frontier arc while separating arcs remain");
    ArcClass intro = doFlip(*pick);
    check(intro.is_nonsep(), "stage 1 flip must introduce a non-separating arc");
  }
  // Stage 2: at most one loop remains and it is non-separating; one flip
  // removes it without losing non-separating arcs.
  {
    auto lp = loops(T);
    check(lp.size() <= 1, "two loops with five non-separating arcs");
    if (!lp.empty()) {
      check(lp[0].kind == ArcKind::NonSepLoop, "separating loop after stage 1");
      ArcClass intro = doFlip(lp[0]);
      check(intro.is_nonsep() && !intro.is_loop(), "stage 2 must introduce a chord");
      check(loops(T).empty(), "loop survived stage 2");
    }
  }
  // Stage 3: at most two same-vertex-pair conflicts remain; flipping the
  // non-separating member of a pair resolves it.
  int guard3 = 0;
  for (;;) {
    auto mp = multiple_pairs(T);
    if (mp.empty()) break;
    check(++guard3 <= 2, "stage 3 exceeded two flips");
    auto [x, y] = mp.front();
    ArcClass beta = x.is_nonsep() ? x : y;
    check(beta.is_nonsep() && !(x.is_nonsep() && y.is_nonsep()),
          "a conflicting pair holds exactly one non-separating arc");
    ArcClass intro = doFlip(beta);
    check(intro.is_nonsep() && !intro.is_loop(), "stage 3 must introduce a chord");
    check((int)multiple_pairs(T).size() < (int)mp.size(), "stage 3 made no progress");
  }
  check(is_simplicial(T), "simplicialize failed");
  check(path.length() <= 7, "simplicialize exceeded seven flips");
  path.end = T;
  validate_path(path);
  return path;
}

// ---------------------------------------------------------------------------
// Ear reduction (the step behind the simplicial diameter recursion)
// ---------------------------------------------------------------------------

/// Flips away the stars of a common low-degree vertex u in both cut disks,
/// making u an ear of both ends while staying simplicial throughout. Arcs at
/// copies of the cut endpoints are flipped first.
inline std::tuple<FlipPath, FlipPath, Point> ear_reduction(const Triangulation& Tm,
                                                           const Triangulation& Tp) {
  require(Tm.n() == Tp.n(), Errc::SizeMismatch, "sizes differ");
  require(is_simplicial(Tm) && is_simplicial(Tp), Errc::InvalidArgument,
          "ear_reduction needs simplicial triangulations");
  auto firstNonsep = [](const Triangulation& T) {
    for (const auto& cls : T.interior_classes())
      if (cls.is_nonsep()) return cls;
    fail(Errc::Internal, "triangulation without non-separating arcs");
  };
  ArcClass am = firstNonsep(Tm), ap = firstNonsep(Tp);
  DiskTriangulation Um = Tm.cut_along(am), Up = Tp.cut_along(ap);
  Point u = reduction_vertex(Um, Up);
  auto flipStar = [&](const Triangulation& T0, const DiskTriangulation& U) {
    int pos = -1;
    for (int p = 0; p < U.size; ++p)
      if (U.point_of[p] == u && !U.is_cut_copy(p)) pos = p;
    check(pos >= 0, "reduction vertex lost in the disk");
    std::vector<ArcClass> order;
    for (const auto& ch : U.chords)
      if ((ch.a == pos || ch.b == pos)) {
        check(ch.cls.has_value(), "star chord without source arc");
        order.push_back(*ch.cls);
      }
    std::stable_sort(order.begin(), order.end());
    std::stable_partition(order.begin(), order.end(), [&](const ArcClass& cls) {
      // arcs reaching a copy of a cut endpoint go first
      for (const auto& ch : U.chords)
        if (ch.cls == cls) return U.is_cut_copy(ch.a == pos ? ch.b : ch.a);
      return false;
    });
    FlipPath p = empty_path(T0);
    Triangulation T = T0;
    for (const auto& cls : order) {
      auto [nxt, intro] = T.flip(cls);
      p.steps.push_back({cls, intro});
      T = std::move(nxt);
      check(is_simplicial(T), "ear reduction left the simplicial subgraph");
      check(!intro.touches(u), "ear reduction flip re-attached u");
    }
    p.end = T;
    for (const auto& cls : p.end.interior_classes())
      check(!cls.touches(u), "u is not an ear after the star flips");
    validate_path(p);
    return p;
  };
  FlipPath pm = flipStar(Tm, Um), pp = flipStar(Tp, Up);
  check(pm.length() + pp.length() <= 4, "combined star degree exceeded four");
  return {pm, pp, u};
}

// ---------------------------------------------------------------------------
// Random triangulations (for randomized sweeps)
// ---------------------------------------------------------------------------

/// Uniform triangulation of the cut polygon glued along a uniformly chosen
/// non-separating arc. Covers every triangulation with positive probability.
inline Triangulation random_triangulation(int n, std::mt19937_64& rng) {
  require(n >= 1, Errc::InvalidSize, "n must be positive");
  std::vector<ArcClass> nonsep;
  for (Point x = 0; x < n; ++x) nonsep.push_back(nonsep_loop(x));
  for (Point x = 0; x < n; ++x)
    for (Point y = x + 1; y < n; ++y) nonsep.push_back(nonsep_chord(x, y));
  ArcClass alpha = nonsep[std::uniform_int_distribution<size_t>(0, nonsep.size() - 1)(rng)];

  const int m = n + 2;
  // polygon pattern for alpha, as in Triangulation::build
  const bool loopCut = alpha.is_loop();
  const Point a = alpha.u, b = alpha.v;
  const int D = loopCut ? 0 : cw_gap(n, b, a);
  std::vector<Point> poly(m);
  std::vector<int> bedgeU(m, -1);
  int eA, eB;
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
  // uniform polygon triangulation via Catalan-weighted apex choice
  std::vector<double> cat(m);
  cat[0] = cat[1] = 1;
  for (int i = 2; i < m; ++i) {
    cat[i] = 0;
    for (int j = 0; j < i; ++j) cat[i] += cat[j] * cat[i - 1 - j];
  }
  std::vector<std::pair<int, int>> chords;
  std::function<void(int, int)> split = [&](int lo, int hi) {
    if (hi - lo <= 1) return;
    int gaps = hi - lo - 1;
    double total = cat[gaps], r = std::uniform_real_distribution<>(0.0, total)(rng);
    int k = lo + 1;
    for (; k < hi; ++k) {
      double wgt = cat[k - lo - 1] * cat[hi - k - 1];
      if (r < wgt || k == hi - 1) break;
      r -= wgt;
    }
    if (k - lo >= 2) chords.push_back({lo, k});
    if (hi - k >= 2) chords.push_back({k, hi});
    split(lo, k);
    split(k, hi);
  };
  split(0, m - 1);
  // map polygon chords back to arc classes
  std::vector<ArcClass> cls{alpha};
  for (auto [i, j] : chords) {
    bool inA = i <= eA && eA < j;
    bool inB = i <= eB && eB < j;
    if (inA != inB) {
      Point p = poly[i], q = poly[j];
      cls.push_back(p == q ? nonsep_loop(p) : nonsep_chord(p, q));
    } else {
      // the side without the cut edges is the cut-off disk
      std::vector<int> side;
      if (!inA) {
        for (int e = i; e < j; ++e) side.push_back(bedgeU[e]);
      } else {
        for (int e = 0; e < m; ++e)
          if ((e < i || e >= j) && e != eA && e != eB) side.push_back(bedgeU[e]);
      }
      int cnt = (int)side.size();
      check(cnt >= 2, "separating chord cutting off one arc");
      if (cnt == n) {
        cls.push_back(sep_loop(poly[i]));
      } else {
        std::vector<char> in(n, 0);
        for (int x : side) in[x] = 1;
        int s0 = -1;
        for (int x = 0; x < n; ++x)
          if (in[x] && !in[imod(x - 1, n)]) s0 = x;
        check(s0 >= 0, "cut-off side not an interval");
        cls.push_back(sep_chord_cw(s0, imod(s0 + cnt, n)));
      }
    }
  }
  return Triangulation::build(n, std::move(cls));
}

}  // namespace moebius
