#include "bmmn/completion.hpp"

#include <algorithm>
#include <map>

namespace bmmn {

namespace {

#define BMMN_CHECK(cond, msg) \
  do {                        \
    if (!(cond)) throw std::logic_error(std::string("invariant violated: ") + (msg)); \
  } while (0)

// Linear maps taking the frame onto the canonical completion picture, in
// which the available sides are the lower sides of horizontal strips and
// the strip paths belong to vertical strips. All four are involutions.
struct CanonMap {
  bool swap = false;  // exchange the two frame coordinates (strip families)
  bool neg = false;   // rotate by 180 degrees (lower vs upper sides)

  Point apply(const Point& p) const {
    Point q = swap ? Point{p.y, p.x} : p;
    return neg ? -q : q;
  }
};

CanonMap map_for(SideTag tag) {
  switch (tag) {
    case SideTag::H1: return {false, false};
    case SideTag::H2: return {false, true};
    case SideTag::V2: return {true, false};
    case SideTag::V1: return {true, true};
  }
  return {};
}

// Canonical picture of one candidate strip path: two vertical lines and a
// switch level. The path runs along xi_right above the switch and xi_left
// below it, between eta bottom and top.
struct PiView {
  Rat xi_left, xi_right;
  Rat switch_eta;
  Rat top_eta, bot_eta;
};

struct DpTermRow {
  Rat xi, eta;
  int terminal;  // -1 when unknown (standalone use)
};

// Merged intervals keyed by a line coordinate. Used for the available
// shelf sides (horizontal) and for the forced segments of degenerated
// vertical strips, which every completion contains and may reuse.
struct IntervalSet {
  std::map<Rat, std::vector<std::pair<Rat, Rat>>> by_line;

  void add(Rat line, Rat lo, Rat hi) {
    if (hi < lo) std::swap(lo, hi);
    by_line[std::move(line)].push_back({std::move(lo), std::move(hi)});
  }
  void normalize() {
    for (auto& [line, iv] : by_line) {
      std::sort(iv.begin(), iv.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
      std::vector<std::pair<Rat, Rat>> merged;
      for (auto& p : iv) {
        if (!merged.empty() && p.first <= merged.back().second) {
          if (merged.back().second < p.second) merged.back().second = p.second;
        } else {
          merged.push_back(p);
        }
      }
      iv = std::move(merged);
    }
  }
  Rat overlap(const Rat& line, const Rat& lo, const Rat& hi) const {
    Rat total(0);
    auto it = by_line.find(line);
    if (it == by_line.end()) return total;
    for (const auto& [a, b] : it->second) {
      Rat x = max(a, lo), y = min(b, hi);
      if (x < y) total += y - x;
    }
    return total;
  }
  // Parts of [lo,hi] on the line not already covered.
  std::vector<std::pair<Rat, Rat>> subtract(const Rat& line, const Rat& lo, const Rat& hi) const {
    std::vector<std::pair<Rat, Rat>> rest;
    Rat cur = lo;
    auto it = by_line.find(line);
    if (it != by_line.end()) {
      for (const auto& [a, b] : it->second) {
        if (b <= cur) continue;
        if (a >= hi) break;
        if (cur < a) rest.push_back({cur, min(a, hi)});
        cur = max(cur, b);
        if (cur >= hi) break;
      }
    }
    if (cur < hi) rest.push_back({cur, hi});
    return rest;
  }
};

// One staircase as one completion sees it: terms strictly increasing in
// xi and decreasing in eta, a shelf segment below them, and the vertical
// strip path to the left.
struct DpInstance {
  std::vector<DpTermRow> terms;
  Rat shelf_eta;
  Rat shelf_right_xi;
  CanonMap mu;           // frame -> instance coordinates (involution)
  bool view_negated = false;  // instance view is the negation of the tag view
  int staircase = -1;
  const IntervalSet* forced_vertical = nullptr;  // in instance coordinates
};

struct DpChoice {
  signed char kind = -1;  // 0: top drop, 1: bottom run, 2: split
  int split = -1;
};

// Memoized three-case recurrence over contiguous term ranges [a..b]. The
// left highway of a range starting at a>0 is the drop of term a-1; the
// shelf of a range ending at b<n-1 is the run of term b+1. Only ranges
// with a==0 consult the strip path.
struct DpTables {
  int n = 0;
  // Shared, path-independent states (a >= 1).
  std::vector<std::optional<Rat>> shared_cost;
  std::vector<DpChoice> shared_choice;
  // Per-path states (a == 0).
  std::vector<std::optional<Rat>> row0_cost;
  std::vector<DpChoice> row0_choice;

  int idx(int a, int b) const { return a * n + b; }
};

class StaircaseDp {
 public:
  StaircaseDp(const DpInstance& inst) : inst_(inst) {
    t_.n = static_cast<int>(inst.terms.size());
    t_.shared_cost.assign(static_cast<std::size_t>(t_.n) * t_.n, std::nullopt);
    t_.shared_choice.assign(static_cast<std::size_t>(t_.n) * t_.n, {});
    shared_ready_ = false;
  }

  // Cost of the optimal completion under the given strip path; nullopt if
  // no valid completion exists (degenerate guards).
  std::optional<Rat> solve(const PiView& pi, bool fast) {
    pi_ = &pi;
    const int n = t_.n;
    if (n == 0) return Rat(0);
    if (!fast || !shared_ready_) {
      // (Re)compute the shared states; in fast mode they are kept across
      // strip-path candidates, in baseline mode recomputed every time.
      for (int len = 1; len <= n; ++len) {
        for (int a = 1; a + len - 1 < n; ++a) {
          int b = a + len - 1;
          compute(a, b);
        }
      }
      shared_ready_ = fast;
    }
    t_.row0_cost.assign(n, std::nullopt);
    t_.row0_choice.assign(n, {});
    for (int b = 0; b < n; ++b) compute(0, b);
    return cost(0, n - 1);
  }

  // Segments of the solved completion, in instance coordinates.
  std::vector<std::pair<Point, Point>> extract() const {
    std::vector<std::pair<Point, Point>> segs;
    if (t_.n == 0) return segs;
    extract_range(0, t_.n - 1, segs);
    return segs;
  }

 private:
  std::optional<Rat> cost(int a, int b) const {
    if (a > b) return Rat(0);
    return a == 0 ? t_.row0_cost[b] : t_.shared_cost[t_.idx(a, b)];
  }
  DpChoice choice(int a, int b) const {
    return a == 0 ? t_.row0_choice[b] : t_.shared_choice[t_.idx(a, b)];
  }

  Rat shelf_level(int b) const {
    return b == t_.n - 1 ? inst_.shelf_eta : inst_.terms[b + 1].eta;
  }

  // Horizontal connector of term l within range start a; invalid when the
  // strip path does not reach the term's level.
  std::optional<Rat> run_cost(int l, int a) const {
    const DpTermRow& t = inst_.terms[l];
    if (a == 0) {
      if (t.eta > pi_->top_eta) return std::nullopt;
      Rat left = t.eta >= pi_->switch_eta ? pi_->xi_right : pi_->xi_left;
      return t.xi - left;
    }
    return t.xi - inst_.terms[a - 1].xi;
  }

  // Coverage of the drop of term d by forced degenerated-strip segments;
  // those segments are present in every completion, so the covered part
  // costs nothing.
  Rat drop_covered(int d, int b) const {
    if (!inst_.forced_vertical) return Rat(0);
    const DpTermRow& t = inst_.terms[d];
    Rat lo = shelf_level(b), hi = t.eta;
    if (inst_.view_negated) {
      return inst_.forced_vertical->overlap(-t.xi, -hi, -lo);
    }
    return inst_.forced_vertical->overlap(t.xi, lo, hi);
  }

  // Vertical connector of term d within range end b; invalid when the base
  // shelf does not extend under the term.
  std::optional<Rat> drop_cost(int d, int b) const {
    const DpTermRow& t = inst_.terms[d];
    if (b == t_.n - 1 && t.xi > inst_.shelf_right_xi) return std::nullopt;
    return t.eta - shelf_level(b) - drop_covered(d, b);
  }

  void compute(int a, int b) {
    std::optional<Rat> best;
    DpChoice bc;
    auto consider = [&](std::optional<Rat> c, DpChoice ch) {
      if (!c) return;
      if (!best || *c < *best) {
        best = std::move(c);
        bc = ch;
      }
    };
    // (a) the highest terminal drops to the shelf
    if (auto dv = drop_cost(a, b)) {
      auto rest = cost(a + 1, b);
      if (rest) consider(*dv + *rest, {0, -1});
    }
    // (c) consecutive split: l runs to the left highway, l+1 drops
    for (int l = a; l < b; ++l) {
      auto hr = run_cost(l, a);
      auto dv = drop_cost(l + 1, b);
      if (!hr || !dv) continue;
      auto top = cost(a, l - 1);
      auto bot = cost(l + 2, b);
      if (top && bot) consider(*hr + *dv + *top + *bot, {2, l});
    }
    // (b) the lowest terminal runs to the left highway
    if (auto hr = run_cost(b, a)) {
      auto rest = cost(a, b - 1);
      if (rest) consider(*hr + *rest, {1, -1});
    }
    if (a == 0) {
      t_.row0_cost[b] = best;
      t_.row0_choice[b] = bc;
    } else {
      t_.shared_cost[t_.idx(a, b)] = best;
      t_.shared_choice[t_.idx(a, b)] = bc;
    }
  }

  void extract_range(int a, int b, std::vector<std::pair<Point, Point>>& segs) const {
    if (a > b) return;
    DpChoice ch = choice(a, b);
    BMMN_CHECK(ch.kind >= 0, "staircase completion has no valid choice");
    auto left_of = [&](int l) {
      if (a == 0) {
        return inst_.terms[l].eta >= pi_->switch_eta ? pi_->xi_right : pi_->xi_left;
      }
      return inst_.terms[a - 1].xi;
    };
    auto emit_drop = [&](int d) {
      const DpTermRow& t = inst_.terms[d];
      Rat lo = shelf_level(b), hi = t.eta;
      if (!inst_.forced_vertical) {
        segs.push_back({{t.xi, lo}, {t.xi, hi}});
        return;
      }
      // Emit only the parts not already provided by forced segments.
      std::vector<std::pair<Rat, Rat>> pieces;
      if (inst_.view_negated) {
        for (auto& [a2, b2] : inst_.forced_vertical->subtract(-t.xi, -hi, -lo))
          pieces.push_back({-b2, -a2});
      } else {
        pieces = inst_.forced_vertical->subtract(t.xi, lo, hi);
      }
      for (auto& [y1, y2] : pieces) segs.push_back({{t.xi, y1}, {t.xi, y2}});
    };
    if (ch.kind == 0) {
      emit_drop(a);
      extract_range(a + 1, b, segs);
    } else if (ch.kind == 1) {
      const DpTermRow& t = inst_.terms[b];
      segs.push_back({{left_of(b), t.eta}, {t.xi, t.eta}});
      extract_range(a, b - 1, segs);
    } else {
      int l = ch.split;
      const DpTermRow& tr = inst_.terms[l];
      segs.push_back({{left_of(l), tr.eta}, {tr.xi, tr.eta}});
      emit_drop(l + 1);
      extract_range(a, l - 1, segs);
      extract_range(l + 2, b, segs);
    }
  }

  const DpInstance& inst_;
  const PiView* pi_ = nullptr;
  DpTables t_;
  bool shared_ready_ = false;
};

}  // namespace

const char* side_tag_name(SideTag tag) {
  switch (tag) {
    case SideTag::H1: return "H1";
    case SideTag::H2: return "H2";
    case SideTag::V1: return "V1";
    case SideTag::V2: return "V2";
  }
  return "?";
}

std::array<SideNetwork, 4> side_networks(const UnitBall& ball, const std::vector<Strip>& strips) {
  std::array<SideNetwork, 4> nets = {SideNetwork{SideTag::H1, Network(ball)},
                                     SideNetwork{SideTag::H2, Network(ball)},
                                     SideNetwork{SideTag::V1, Network(ball)},
                                     SideNetwork{SideTag::V2, Network(ball)}};
  for (const Strip& s : strips) {
    if (s.family == StripFamily::Horizontal) {
      nets[0].net.add(s.side_low);
      nets[1].net.add(s.side_high);
    } else {
      nets[2].net.add(s.side_high);  // V1: right sides
      nets[3].net.add(s.side_low);   // V2: left sides
    }
  }
  return nets;
}

namespace {

struct CanonStrip {
  int index;            // index into d.strips
  bool h_role;          // horizontal role in the canonical picture
  Rat xi_lo, xi_hi;     // canonical bounds
  Rat eta_lo, eta_hi;
  bool degenerate;
  int low_term, high_term;  // canonical componentwise lower/upper terminal
};

}  // namespace

Completion complete(const UnitBall& ball, const Decomposition& d, SideTag tag,
                    const CompletionOptions& options) {
  const CanonMap cm = map_for(tag);
  const Frame& frame = d.grid.frame;
  const auto& fpts = d.grid.fpts;
  const int m = ball.m();
  const int k = d.k;

  auto canon = [&](const Point& f) { return cm.apply(f); };
  auto canon_of_terminal = [&](int i) { return cm.apply(fpts[i]); };
  // Canonical -> world, for materializing segments.
  auto to_world = [&](const Point& c) { return frame.to_world(cm.apply(c)); };
  auto world_dir = [&](bool canon_horizontal) {
    bool frame_horizontal = canon_horizontal != cm.swap;
    return frame_horizontal ? k : (k + 1) % m;
  };

  // Canonical strips.
  std::vector<CanonStrip> cstrips(d.strips.size());
  for (std::size_t i = 0; i < d.strips.size(); ++i) {
    const Strip& s = d.strips[i];
    Point c1 = canon({s.a_lo, s.b_lo});
    Point c2 = canon({s.a_hi, s.b_hi});
    CanonStrip cs;
    cs.index = static_cast<int>(i);
    cs.h_role = (s.family == StripFamily::Horizontal) == !cm.swap;
    cs.xi_lo = min(c1.x, c2.x);
    cs.xi_hi = max(c1.x, c2.x);
    cs.eta_lo = min(c1.y, c2.y);
    cs.eta_hi = max(c1.y, c2.y);
    cs.degenerate = s.degenerate;
    cs.low_term = cm.neg ? s.pair.second : s.pair.first;
    cs.high_term = cm.neg ? s.pair.first : s.pair.second;
    cstrips[i] = std::move(cs);
  }

  // The base network: available sides of all canonical-horizontal strips.
  Network base(ball);
  IntervalSet shelf_set;      // per eta level, xi intervals of the base
  IntervalSet forced_vertical;  // per xi line, eta intervals of degenerated
                                // vertical strips (forced in every completion)
  for (const CanonStrip& cs : cstrips) {
    if (cs.h_role) {
      const Strip& s = d.strips[cs.index];
      const LegalSegment& side = cm.neg ? s.side_high : s.side_low;
      base.add(side);
      shelf_set.add(cs.eta_lo, cs.xi_lo, cs.xi_hi);
    } else if (cs.degenerate) {
      forced_vertical.add(cs.xi_lo, cs.eta_lo, cs.eta_hi);
    }
  }
  shelf_set.normalize();
  forced_vertical.normalize();

  // DP instances, one per surviving staircase.
  std::vector<DpInstance> instances;
  std::vector<std::vector<int>> by_vstrip(d.strips.size());  // canonical-vertical strip -> instances
  std::map<std::pair<int, bool>, int> instance_at;           // (crossing, at_o) -> instance
  for (std::size_t si = 0; si < d.staircases.size(); ++si) {
    const Staircase& st = d.staircases[si];
    const Crossing& c = d.crossings[st.crossing];
    int v_idx = cm.swap ? c.horizontal : c.vertical;
    DpInstance inst;
    inst.staircase = static_cast<int>(si);
    inst.mu = CanonMap{cm.swap, !st.at_o};
    inst.view_negated = inst.mu.neg != cm.neg;
    // Terms were stored ordered by the cone-outward frame alpha; under a
    // swapped map the canonical xi order is the reverse.
    std::vector<int> ordered = st.terms;
    if (cm.swap) std::reverse(ordered.begin(), ordered.end());
    for (int l : ordered) {
      Point p = inst.mu.apply(fpts[l]);
      inst.terms.push_back({p.x, p.y, l});
    }
    // Shelf: the available side of the horizontal-role base strip.
    const CanonStrip& hb = cstrips[cm.swap ? c.vertical : c.horizontal];
    const Strip& hs = d.strips[hb.index];
    Point e1 = inst.mu.apply(frame.to_frame((cm.neg ? hs.side_high : hs.side_low).a));
    Point e2 = inst.mu.apply(frame.to_frame((cm.neg ? hs.side_high : hs.side_low).b));
    BMMN_CHECK(e1.y == e2.y, "shelf side is not horizontal in instance view");
    inst.shelf_eta = e1.y;
    inst.shelf_right_xi = max(e1.x, e2.x);
    inst.forced_vertical = &forced_vertical;
    for (const DpTermRow& t : inst.terms) {
      BMMN_CHECK(inst.shelf_eta <= t.eta, "shelf above a staircase terminal");
      BMMN_CHECK(t.xi <= inst.shelf_right_xi, "staircase terminal beyond the shelf end");
    }
    for (std::size_t t = 0; t + 1 < inst.terms.size(); ++t)
      BMMN_CHECK(inst.terms[t].xi < inst.terms[t + 1].xi && inst.terms[t].eta > inst.terms[t + 1].eta,
                 "instance terms not an antichain");
    instance_at[{st.crossing, st.at_o}] = static_cast<int>(instances.size());
    by_vstrip[v_idx].push_back(static_cast<int>(instances.size()));
    instances.push_back(std::move(inst));
  }

  // Extensions: for each non-degenerate canonical-horizontal strip with
  // crossings, the staircase at the rightmost eligible corner absorbs the
  // strip's upper terminal; strips with no crossing get a direct switch.
  // A rightmost corner that coincides with a terminal needs nothing: the
  // pair is realized through that terminal's own shortest paths.
  Network extras(ball);
  Rat extras_cost(0);
  const bool eligible_at_o = !cm.neg;  // instance view matches the tag view
  for (const CanonStrip& hb : cstrips) {
    if (!hb.h_role || hb.degenerate) continue;
    // Find the rightmost eligible corner over this strip's crossings.
    int best_crossing = -1;
    Point best_corner;
    int best_near = -1;
    for (std::size_t ci = 0; ci < d.crossings.size(); ++ci) {
      const Crossing& c = d.crossings[ci];
      int h_idx = cm.swap ? c.vertical : c.horizontal;
      if (h_idx != hb.index) continue;
      Point corner = canon(eligible_at_o ? c.o_frame : c.oprime_frame);
      int near = cstrips[cm.swap ? c.horizontal : c.vertical].high_term;
      bool better = best_crossing < 0 || corner.x > best_corner.x ||
                    (corner.x == best_corner.x &&
                     (corner.y > best_corner.y ||
                      (corner.y == best_corner.y && near < best_near)));
      if (better) {
        best_crossing = static_cast<int>(ci);
        best_corner = corner;
        best_near = near;
      }
    }
    if (best_crossing < 0) {
      // No crossing. If the pair also forms a vertical strip, its chosen
      // path realizes it; otherwise a single switch segment from the upper
      // terminal down to the available side does, reusing any forced
      // degenerated segments on that line.
      const Strip& hs = d.strips[hb.index];
      bool has_vertical_twin = false;
      for (const CanonStrip& cs : cstrips) {
        if (!cs.h_role && d.strips[cs.index].pair == hs.pair) has_vertical_twin = true;
      }
      if (has_vertical_twin) continue;
      Point top = canon_of_terminal(hb.high_term);
      for (const auto& [y1, y2] : forced_vertical.subtract(top.x, hb.eta_lo, top.y)) {
        extras.add_segment(to_world({top.x, y1}), to_world({top.x, y2}));
        extras_cost += y2 - y1;
      }
      continue;
    }
    auto it = instance_at.find({best_crossing, eligible_at_o});
    if (it == instance_at.end()) continue;  // corner is a terminal; nothing to add
    DpInstance& inst = instances[it->second];
    Point tj = inst.mu.apply(fpts[hb.high_term]);
    if (!inst.terms.empty()) {
      BMMN_CHECK(inst.terms.back().xi < tj.x && inst.terms.back().eta > tj.y,
                 "extension terminal does not extend the antichain");
    }
    inst.terms.push_back({tj.x, tj.y, hb.high_term});
  }

  // Per vertical-role strip: pick the cheapest strip path, charging path
  // pieces already present in the base to nothing.
  Network added(ball);
  Rat added_cost(0);
  for (const CanonStrip& vs : cstrips) {
    if (vs.h_role) continue;
    std::vector<Rat> switch_levels;
    if (vs.degenerate) {
      switch_levels.push_back(vs.eta_lo);
    } else {
      // Canonical eta levels of the crossing family within the strip.
      const std::vector<Rat>& frame_levels = cm.swap ? d.grid.lines_k1 : d.grid.lines_k;
      for (const Rat& fl : frame_levels) {
        Rat lvl = cm.neg ? -fl : fl;
        if (vs.eta_lo <= lvl && lvl <= vs.eta_hi) switch_levels.push_back(lvl);
      }
      std::sort(switch_levels.begin(), switch_levels.end());
    }

    std::vector<StaircaseDp> dps;
    std::vector<int> dp_inst;
    for (int ii : by_vstrip[vs.index]) {
      if (instances[ii].terms.empty()) continue;
      dps.emplace_back(instances[ii]);
      dp_inst.push_back(ii);
    }

    std::optional<Rat> best_total;
    Rat best_level;
    for (const Rat& s : switch_levels) {
      Rat total = (vs.eta_hi - vs.eta_lo) + (vs.xi_hi - vs.xi_lo);
      total -= shelf_set.overlap(s, vs.xi_lo, vs.xi_hi);
      bool valid = true;
      for (std::size_t di = 0; di < dps.size(); ++di) {
        const DpInstance& inst = instances[dp_inst[di]];
        PiView pv = inst.view_negated
                        ? PiView{-vs.xi_hi, -vs.xi_lo, -s, -vs.eta_lo, -vs.eta_hi}
                        : PiView{vs.xi_lo, vs.xi_hi, s, vs.eta_hi, vs.eta_lo};
        auto c = dps[di].solve(pv, options.fast_dp);
        if (!c) {
          valid = false;
          break;
        }
        total += *c;
      }
      if (valid && (!best_total || total < *best_total)) {
        best_total = total;
        best_level = s;
      }
    }
    BMMN_CHECK(best_total.has_value(), "no valid completion for a vertical strip");

    // Materialize the winning path and completions.
    const Rat& s = best_level;
    Point top = canon_of_terminal(vs.high_term);
    Point bot = canon_of_terminal(vs.low_term);
    if (top.y != s) added.add_segment(to_world({vs.xi_hi, top.y}), to_world({vs.xi_hi, s}));
    if (bot.y != s) added.add_segment(to_world({vs.xi_lo, s}), to_world({vs.xi_lo, bot.y}));
    for (const auto& [x1, x2] : shelf_set.subtract(s, vs.xi_lo, vs.xi_hi))
      added.add_segment(to_world({x1, s}), to_world({x2, s}));
    for (std::size_t di = 0; di < dps.size(); ++di) {
      const DpInstance& inst = instances[dp_inst[di]];
      PiView pv = inst.view_negated
                      ? PiView{-vs.xi_hi, -vs.xi_lo, -s, -vs.eta_lo, -vs.eta_hi}
                      : PiView{vs.xi_lo, vs.xi_hi, s, vs.eta_hi, vs.eta_lo};
      auto c = dps[di].solve(pv, options.fast_dp);
      BMMN_CHECK(c.has_value(), "winning strip path lost its completion");
      for (const auto& [p, q] : dps[di].extract()) {
        Point wp = frame.to_world(inst.mu.apply(p));
        Point wq = frame.to_world(inst.mu.apply(q));
        if (wp != wq) added.add_segment(wp, wq);
      }
    }
    added_cost += *best_total;
  }

  added.merge(extras);
  added_cost += extras_cost;

  // Degenerate configurations can orphan an atomic pair: a candidate strip
  // rejected by a degenerated-strip overlap on its boundary leaves its
  // pair with no strip and no staircase. Realize any pair not structurally
  // covered by the cheapest monotone grid completion, reusing segments
  // already present.
  {
    std::set<std::pair<int, int>> realized;
    auto norm_pair = [](int a, int b) { return a < b ? std::pair{a, b} : std::pair{b, a}; };
    for (const Strip& s : d.strips) realized.insert(norm_pair(s.pair.first, s.pair.second));
    for (const Staircase& st : d.staircases) {
      for (int l : st.terms) {
        realized.insert(norm_pair(st.base_far.second, l));  // F'' pair
        realized.insert(norm_pair(st.base_far.first, l));   // via the strip path
      }
    }
    for (const Crossing& c : d.crossings) {
      const Strip& v = d.strips[c.vertical];
      const Strip& h = d.strips[c.horizontal];
      realized.insert(norm_pair(v.pair.first, h.pair.second));
      realized.insert(norm_pair(v.pair.second, h.pair.first));
    }
    std::vector<std::pair<int, int>> candidates;
    for (auto [lo, hi] : atomic_pairs_in_direction(ball, d.grid, k)) {
      if (!realized.count(norm_pair(lo, hi))) candidates.push_back({lo, hi});
    }
    if (!candidates.empty()) {
      // Coverage of the current construction by frame line, split into the
      // two segment families.
      IntervalSet horiz, vert;
      auto index_net = [&](const Network& n) {
        for (const LegalSegment& s : n.segments()) {
          Point fa = frame.to_frame(s.a), fb = frame.to_frame(s.b);
          if (fa.y == fb.y) horiz.add(fa.y, min(fa.x, fb.x), max(fa.x, fb.x));
          else vert.add(fa.x, min(fa.y, fb.y), max(fa.y, fb.y));
        }
      };
      index_net(base);
      index_net(added);
      horiz.normalize();
      vert.normalize();
      std::sort(candidates.begin(), candidates.end());
      for (auto [lo_i, hi_i] : candidates) {
        const Point& plo = fpts[lo_i];
        const Point& phi = fpts[hi_i];
        // Grid levels inside the pair's rectangle.
        std::vector<Rat> as, bs;
        for (const Rat& a : d.grid.lines_k1)
          if (plo.x <= a && a <= phi.x) as.push_back(a);
        for (const Rat& b : d.grid.lines_k)
          if (plo.y <= b && b <= phi.y) bs.push_back(b);
        const int na = static_cast<int>(as.size());
        const int nb = static_cast<int>(bs.size());
        // Cheapest monotone path over the sub-lattice, charging covered
        // edge parts nothing.
        std::vector<Rat> cost(static_cast<std::size_t>(na) * nb, Rat(0));
        std::vector<signed char> from(static_cast<std::size_t>(na) * nb, 0);
        auto id = [&](int i, int j) { return i * nb + j; };
        for (int i = 0; i < na; ++i) {
          for (int j = 0; j < nb; ++j) {
            if (i == 0 && j == 0) continue;
            std::optional<Rat> best;
            signed char dir = 0;
            if (i > 0) {
              Rat step = as[i] - as[i - 1] - horiz.overlap(bs[j], as[i - 1], as[i]);
              best = cost[id(i - 1, j)] + step;
              dir = 1;
            }
            if (j > 0) {
              Rat step = bs[j] - bs[j - 1] - vert.overlap(as[i], bs[j - 1], bs[j]);
              Rat c = cost[id(i, j - 1)] + step;
              if (!best || c < *best) {
                best = std::move(c);
                dir = 2;
              }
            }
            cost[id(i, j)] = *best;
            from[id(i, j)] = dir;
          }
        }
        if (cost[id(na - 1, nb - 1)].sign() == 0) continue;  // already realized
        int i = na - 1, j = nb - 1;
        while (i != 0 || j != 0) {
          if (from[id(i, j)] == 1) {
            for (const auto& [x1, x2] : horiz.subtract(bs[j], as[i - 1], as[i])) {
              added.add_segment(frame.to_world({x1, bs[j]}), frame.to_world({x2, bs[j]}));
              added_cost += x2 - x1;
            }
            horiz.add(bs[j], as[i - 1], as[i]);
            --i;
          } else {
            for (const auto& [y1, y2] : vert.subtract(as[i], bs[j - 1], bs[j])) {
              added.add_segment(frame.to_world({as[i], y1}), frame.to_world({as[i], y2}));
              added_cost += y2 - y1;
            }
            vert.add(as[i], bs[j - 1], bs[j]);
            --j;
          }
        }
        horiz.normalize();
        vert.normalize();
      }
    }
  }

  Network full = base;
  full.merge(added);
  Rat total = full.length();
  if (options.check_invariants) {
    // Disjointness accounting: completion pieces never overlap each other
    // or the base, so union length equals the additive cost.
    BMMN_CHECK(total == base.length() + added_cost, "completion overlap detected");
  }
  return {tag, std::move(added), std::move(total)};
}

StaircaseDpResult staircase_dp(const UnitBall& ball, const Decomposition& d, const Staircase& st,
                               const SwitchPath& pi, const LegalSegment& shelf,
                               const std::vector<Point>& extended_terms) {
  const Frame& frame = d.grid.frame;
  auto shelf_dir_is_k = legal_dir(ball, shelf.a, shelf.b);
  BMMN_CHECK(shelf_dir_is_k.has_value(), "shelf is not a legal segment");
  bool swap = *shelf_dir_is_k != d.k;  // vertical shelf: transposed picture

  DpInstance inst;
  inst.mu = CanonMap{swap, !st.at_o};
  for (const Point& w : extended_terms) {
    Point p = inst.mu.apply(frame.to_frame(w));
    inst.terms.push_back({p.x, p.y, -1});
  }
  Point e1 = inst.mu.apply(frame.to_frame(shelf.a));
  Point e2 = inst.mu.apply(frame.to_frame(shelf.b));
  BMMN_CHECK(e1.y == e2.y, "shelf not axis-aligned in instance view");
  inst.shelf_eta = e1.y;
  inst.shelf_right_xi = max(e1.x, e2.x);

  // Path view from the polyline.
  std::vector<Point> poly;
  for (const Point& w : pi.polyline) poly.push_back(inst.mu.apply(frame.to_frame(w)));
  PiView pv;
  pv.xi_left = pv.xi_right = poly.front().x;
  pv.top_eta = pv.bot_eta = poly.front().y;
  for (const Point& p : poly) {
    pv.xi_left = min(pv.xi_left, p.x);
    pv.xi_right = max(pv.xi_right, p.x);
    pv.top_eta = max(pv.top_eta, p.y);
    pv.bot_eta = min(pv.bot_eta, p.y);
  }
  pv.switch_eta = pv.bot_eta;
  for (std::size_t i = 0; i + 1 < poly.size(); ++i) {
    if (poly[i].y == poly[i + 1].y && poly[i].x != poly[i + 1].x) pv.switch_eta = poly[i].y;
  }

  StaircaseDp dp(inst);
  auto c = dp.solve(pv, false);
  BMMN_CHECK(c.has_value(), "staircase has no valid completion for the given path");
  StaircaseDpResult res{*c, {}};
  for (const auto& [p, q] : dp.extract()) {
    Point wp = frame.to_world(inst.mu.apply(p));
    Point wq = frame.to_world(inst.mu.apply(q));
    if (wp != wq) res.segments.push_back(make_segment(ball, wp, wq));
  }
  return res;
}

std::pair<Network, DirStats> solve_1dmmn(const UnitBall& ball, const std::vector<Point>& terminals,
                                         int k, const CompletionOptions& options) {
  Decomposition d = decompose(ball, terminals, k);

  std::array<std::optional<Completion>, 4> completions;
  std::array<Rat, 4> totals;
  for (int i = 0; i < 4; ++i) {
    completions[i] = complete(ball, d, kSideTags[i], options);
    totals[i] = completions[i]->total;
  }

  int best = 0;
  for (int i = 1; i < 4; ++i)
    if (totals[i] < totals[best]) best = i;

  auto sides = side_networks(ball, d.strips);
  DirStats stats;
  stats.lambda_h = sides[0].net.length();
  stats.lambda_v = sides[2].net.length();
  stats.side_totals = totals;
  stats.chosen = kSideTags[best];
  if (options.check_invariants) {
    BMMN_CHECK(sides[0].net.length() == sides[1].net.length(), "lambda_h accounting mismatch");
    BMMN_CHECK(sides[2].net.length() == sides[3].net.length(), "lambda_v accounting mismatch");
  }

  Network net = sides[best].net;
  net.merge(completions[best]->added);
  for (const Point& t : terminals) net.register_terminal(t);

  if (options.check_invariants) {
    // Admissibility: every pair of this direction is connected by a path
    // of exactly the gauge distance.
    auto pairs = pairs_in_direction(ball, terminals, k);
    for (auto [i, j] : pairs) {
      auto r = net.shortest_path(terminals[i], terminals[j]);
      BMMN_CHECK(r.has_value() && r->length == distance(ball, terminals[i], terminals[j]),
                 "one-directional network misses a required pair");
    }
  }
  return {std::move(net), std::move(stats)};
}

}  // namespace bmmn
