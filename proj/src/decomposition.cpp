#include "bmmn/decomposition.hpp"

#include <algorithm>
#include <map>

namespace bmmn {

namespace {

#define BMMN_CHECK(cond, msg) \
  do {                        \
    if (!(cond)) throw std::logic_error(std::string("invariant violated: ") + (msg)); \
  } while (0)

// Signed view of a frame point: sigma=+1 is the identity, sigma=-1 the
// 180-degree rotation. Componentwise order in the signed view corresponds
// to membership in the cone C_k(origin) of the matching orientation.
Point signed_pt(const Point& p, int sigma) { return sigma > 0 ? p : -p; }

bool leq(const Point& a, const Point& b) { return a.x <= b.x && a.y <= b.y; }

}  // namespace

std::vector<std::pair<int, int>> pairs_in_direction(const UnitBall& ball,
                                                    const std::vector<Point>& terminals, int k) {
  std::vector<std::pair<int, int>> out;
  const int n = static_cast<int>(terminals.size());
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      auto dirs = classify_pair(ball, terminals[i], terminals[j]);
      if (std::find(dirs.begin(), dirs.end(), k) != dirs.end()) out.push_back({i, j});
    }
  }
  return out;
}

std::vector<std::pair<int, int>> atomic_pairs_in_direction(const UnitBall& ball,
                                                           const DirGrid& grid, int k) {
  (void)ball;
  (void)k;
  const auto& fpts = grid.fpts;
  const int n = static_cast<int>(fpts.size());
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      // Frame order: the pair is in F_k iff comparable componentwise.
      if (!leq(fpts[i], fpts[j])) continue;
      bool atomic = true;
      for (int w = 0; w < n && atomic; ++w) {
        if (w == i || w == j) continue;
        if (leq(fpts[i], fpts[w]) && leq(fpts[w], fpts[j])) atomic = false;
      }
      if (atomic) out.push_back({i, j});
    }
  }
  return out;
}

namespace {

// One family's view of the frame: "line coordinate" is the coordinate that
// is constant along the family's grid lines (beta for horizontal strips,
// alpha for vertical), "along" the other one.
struct FamilyView {
  StripFamily family;
  bool horizontal;

  Rat line(const Point& f) const { return horizontal ? f.y : f.x; }
  Rat along(const Point& f) const { return horizontal ? f.x : f.y; }
};

}  // namespace

std::vector<Strip> find_strips(const UnitBall& ball, const std::vector<Point>& terminals,
                               const DirGrid& grid, int k) {
  const int m = ball.m();
  const auto& fpts = grid.fpts;
  const int n = static_cast<int>(fpts.size());
  std::vector<Strip> out;

  for (FamilyView view : {FamilyView{StripFamily::Horizontal, true},
                          FamilyView{StripFamily::Vertical, false}}) {
    const int side_dir = view.horizontal ? k : (k + 1) % m;
    const std::vector<Rat>& levels = view.horizontal ? grid.lines_k : grid.lines_k1;

    auto make_strip = [&](int i, int j, bool degenerate) {
      // Terminal order: componentwise-lower first.
      if (!leq(fpts[i], fpts[j])) std::swap(i, j);
      Strip s;
      s.pair = {i, j};
      s.family = view.family;
      s.degenerate = degenerate;
      s.region = interval(ball, terminals[i], terminals[j]);
      s.a_lo = min(fpts[i].x, fpts[j].x);
      s.a_hi = max(fpts[i].x, fpts[j].x);
      s.b_lo = min(fpts[i].y, fpts[j].y);
      s.b_hi = max(fpts[i].y, fpts[j].y);
      const Frame& fr = grid.frame;
      if (degenerate) {
        s.side_low = s.side_high = LegalSegment{terminals[i], terminals[j], side_dir};
      } else if (view.horizontal) {
        s.side_low = {fr.to_world({s.a_lo, s.b_lo}), fr.to_world({s.a_hi, s.b_lo}), side_dir};
        s.side_high = {fr.to_world({s.a_lo, s.b_hi}), fr.to_world({s.a_hi, s.b_hi}), side_dir};
      } else {
        s.side_low = {fr.to_world({s.a_lo, s.b_lo}), fr.to_world({s.a_lo, s.b_hi}), side_dir};
        s.side_high = {fr.to_world({s.a_hi, s.b_lo}), fr.to_world({s.a_hi, s.b_hi}), side_dir};
      }
      out.push_back(std::move(s));
    };

    // Degenerated strips: consecutive terminals on a common family line.
    std::map<Rat, std::vector<int>> by_line;
    for (int i = 0; i < n; ++i) by_line[view.line(fpts[i])].push_back(i);
    struct DegSeg {
      Rat line, lo, hi;
    };
    std::vector<DegSeg> degs;
    for (auto& [line, idx] : by_line) {
      std::sort(idx.begin(), idx.end(), [&](int a, int b) {
        return view.along(fpts[a]) < view.along(fpts[b]);
      });
      for (std::size_t t = 0; t + 1 < idx.size(); ++t) {
        int i = idx[t], j = idx[t + 1];
        degs.push_back({line, view.along(fpts[i]), view.along(fpts[j])});
        make_strip(i, j, true);
      }
    }

    // Non-degenerate strips: pairs on two consecutive family lines whose
    // rectangle avoids every degenerated same-family strip except at the
    // pair's own terminals. Zero-area candidates are not strips.
    for (std::size_t li = 0; li + 1 < levels.size(); ++li) {
      const Rat& l1 = levels[li];
      const Rat& l2 = levels[li + 1];
      auto it1 = by_line.find(l1);
      auto it2 = by_line.find(l2);
      if (it1 == by_line.end() || it2 == by_line.end()) continue;
      for (int i : it1->second) {
        for (int j : it2->second) {
          // Pair must lie in F_k: the frame deltas share a sign. The line
          // coordinate increases from l1 to l2; zero-area candidates are
          // excluded.
          Rat da = view.along(fpts[j]) - view.along(fpts[i]);
          if (da.sign() <= 0) continue;
          const Rat& alo = view.along(fpts[i]);
          const Rat& ahi = view.along(fpts[j]);
          bool ok = true;
          for (const DegSeg& d : degs) {
            if (d.line != l1 && d.line != l2) continue;
            Rat lo = max(d.lo, alo), hi = min(d.hi, ahi);
            if (lo > hi) continue;
            if (lo < hi) {
              ok = false;
              break;
            }
            // Single-point overlap: must be the pair's own terminal on
            // that line.
            int own = d.line == l1 ? i : j;
            if (lo != view.along(fpts[own])) {
              ok = false;
              break;
            }
          }
          if (ok) make_strip(i, j, false);
        }
      }
    }
  }
  return out;
}

namespace {

// Relative-interior projection of a strip region onto one frame axis.
struct AxisProj {
  Rat lo, hi;
  bool open;  // open interval when lo < hi, a single point otherwise
};

AxisProj proj(const Strip& s, bool alpha_axis) {
  Rat lo = alpha_axis ? s.a_lo : s.b_lo;
  Rat hi = alpha_axis ? s.a_hi : s.b_hi;
  bool open = lo < hi;
  return {std::move(lo), std::move(hi), open};
}

bool relint_meet(const AxisProj& p, const AxisProj& q) {
  if (!p.open && !q.open) return p.lo == q.lo;
  if (!p.open) return q.lo < p.lo && p.lo < q.hi;
  if (!q.open) return p.lo < q.lo && q.lo < p.hi;
  return max(p.lo, q.lo) < min(p.hi, q.hi);
}

}  // namespace

std::vector<Crossing> find_crossings(const DirGrid& grid, const std::vector<Strip>& strips) {
  std::vector<Crossing> out;
  for (std::size_t vi = 0; vi < strips.size(); ++vi) {
    if (strips[vi].family != StripFamily::Vertical) continue;
    for (std::size_t hi = 0; hi < strips.size(); ++hi) {
      if (strips[hi].family != StripFamily::Horizontal) continue;
      const Strip& v = strips[vi];
      const Strip& h = strips[hi];
      // A pair's own horizontal and vertical strips share the whole
      // rectangle; they do not cross each other.
      if (v.pair == h.pair) continue;
      if (!relint_meet(proj(v, true), proj(h, true))) continue;
      if (!relint_meet(proj(v, false), proj(h, false))) continue;
      Crossing c;
      c.vertical = static_cast<int>(vi);
      c.horizontal = static_cast<int>(hi);
      c.a_lo = max(v.a_lo, h.a_lo);
      c.a_hi = min(v.a_hi, h.a_hi);
      c.b_lo = max(v.b_lo, h.b_lo);
      c.b_hi = min(v.b_hi, h.b_hi);
      c.o_frame = {c.a_hi, c.b_hi};
      c.oprime_frame = {c.a_lo, c.b_lo};
      c.o_world = grid.frame.to_world(c.o_frame);
      c.oprime_world = grid.frame.to_world(c.oprime_frame);
      // Cone avoidance: C_k(o) and -C_k(o') must miss both strips'
      // two-dimensional interiors.
      for (const Strip* s : {&v, &h}) {
        if (s->a_lo < s->a_hi && s->b_lo < s->b_hi) {
          BMMN_CHECK(!(c.a_hi < s->a_hi && c.b_hi < s->b_hi),
                     "crossing corner o enters a strip interior");
          BMMN_CHECK(!(c.a_lo > s->a_lo && c.b_lo > s->b_lo),
                     "crossing corner o' enters a strip interior");
        }
      }
      out.push_back(std::move(c));
    }
  }
  return out;
}

std::vector<Staircase> build_staircases(const UnitBall& ball, const std::vector<Point>& terminals,
                                        const DirGrid& grid, const std::vector<Strip>& strips,
                                        const std::vector<Crossing>& crossings) {
  (void)ball;
  (void)terminals;
  const auto& fpts = grid.fpts;
  const int n = static_cast<int>(fpts.size());
  std::vector<Staircase> out;

  for (std::size_t ci = 0; ci < crossings.size(); ++ci) {
    const Crossing& c = crossings[ci];
    const Strip& v = strips[c.vertical];
    const Strip& h = strips[c.horizontal];
    for (int sigma : {+1, -1}) {
      Staircase st;
      st.crossing = static_cast<int>(ci);
      st.at_o = sigma > 0;
      st.origin_frame = sigma > 0 ? c.o_frame : c.oprime_frame;
      st.origin_world = sigma > 0 ? c.o_world : c.oprime_world;
      // When the corner coincides with a terminal the staircase collapses:
      // every pair through it splits into two smaller pairs at that
      // terminal, so it generates nothing new and is skipped.
      bool corner_is_terminal = false;
      for (int l = 0; l < n; ++l) corner_is_terminal |= fpts[l] == st.origin_frame;
      if (corner_is_terminal) continue;
      // Base terminals inside the cone at the origin, and their opposites.
      int vi_near = sigma > 0 ? v.pair.second : v.pair.first;
      int vi_far = sigma > 0 ? v.pair.first : v.pair.second;
      int hj_near = sigma > 0 ? h.pair.second : h.pair.first;
      int hj_far = sigma > 0 ? h.pair.first : h.pair.second;
      st.base_near = {vi_near, hj_near};
      st.base_far = {vi_far, hj_far};
      Point org = signed_pt(st.origin_frame, sigma);
      BMMN_CHECK(leq(org, signed_pt(fpts[vi_near], sigma)), "near vertical base outside cone");
      BMMN_CHECK(leq(org, signed_pt(fpts[hj_near], sigma)), "near horizontal base outside cone");

      // Staircase terminals: in the cone at the origin, excluding the near
      // bases, with no other terminal in -C_k(t_l) \ -C_k(origin).
      for (int l = 0; l < n; ++l) {
        if (l == vi_near || l == hj_near) continue;
        Point tl = signed_pt(fpts[l], sigma);
        if (!leq(org, tl)) continue;
        bool qualified = true;
        for (int u = 0; u < n && qualified; ++u) {
          if (u == l) continue;
          Point tu = signed_pt(fpts[u], sigma);
          if (leq(tu, tl) && !leq(tu, org)) qualified = false;
        }
        if (qualified) st.terms.push_back(l);
      }
      std::sort(st.terms.begin(), st.terms.end(), [&](int a, int b) {
        return signed_pt(fpts[a], sigma).x < signed_pt(fpts[b], sigma).x;
      });
      // Qualified terminals form a strict antichain: increasing in the
      // cone-outward alpha, decreasing in beta.
      for (std::size_t t = 0; t + 1 < st.terms.size(); ++t) {
        Point a = signed_pt(fpts[st.terms[t]], sigma);
        Point b = signed_pt(fpts[st.terms[t + 1]], sigma);
        BMMN_CHECK(a.x < b.x && a.y > b.y, "staircase terminals are not an antichain");
      }

      if (!st.terms.empty()) {
        // Region check: terminals inside the union of intervals to the
        // origin are exactly the staircase terminals.
        for (int u = 0; u < n; ++u) {
          Point tu = signed_pt(fpts[u], sigma);
          bool inside = false;
          for (int l : st.terms)
            inside = inside || (leq(org, tu) && leq(tu, signed_pt(fpts[l], sigma)));
          if (inside)
            BMMN_CHECK(std::find(st.terms.begin(), st.terms.end(), u) != st.terms.end(),
                       "foreign terminal inside staircase region");
        }
        // Forbidden regions: Q' between the far vertical side, the
        // origin's horizontal line and the highest terminal's line; Q''
        // mirrored through the far horizontal side and the rightmost
        // terminal's line.
        Rat v_far_line = sigma > 0 ? v.a_lo : -v.a_hi;
        Rat h_far_line = sigma > 0 ? h.b_lo : -h.b_hi;
        Point first = signed_pt(fpts[st.terms.front()], sigma);
        Point last = signed_pt(fpts[st.terms.back()], sigma);
        for (int u = 0; u < n; ++u) {
          Point tu = signed_pt(fpts[u], sigma);
          bool in_qp = v_far_line < tu.x && tu.x < org.x && org.y < tu.y && tu.y < first.y;
          bool in_qpp = org.x < tu.x && tu.x < last.x && h_far_line < tu.y && tu.y < org.y;
          BMMN_CHECK(!in_qp && !in_qpp, "terminal inside forbidden staircase region");
        }
      }
      out.push_back(std::move(st));
    }
  }
  return out;
}

std::set<std::pair<int, int>> generating_set(const std::vector<Strip>& strips,
                                             const std::vector<Staircase>& staircases) {
  std::set<std::pair<int, int>> f;
  auto norm_pair = [](int a, int b) { return a < b ? std::pair{a, b} : std::pair{b, a}; };
  for (const Strip& s : strips) f.insert(norm_pair(s.pair.first, s.pair.second));
  for (const Staircase& st : staircases) {
    for (int l : st.terms) f.insert(norm_pair(st.base_far.second, l));
  }
  return f;
}

Decomposition decompose(const UnitBall& ball, const std::vector<Point>& terminals, int k) {
  DirGrid grid = build_grid(ball, terminals, k);
  std::vector<Strip> strips = find_strips(ball, terminals, grid, k);
  std::vector<Crossing> crossings = find_crossings(grid, strips);
  std::vector<Staircase> staircases = build_staircases(ball, terminals, grid, strips, crossings);
  return {k, std::move(grid), std::move(strips), std::move(crossings), std::move(staircases)};
}

}  // namespace bmmn
