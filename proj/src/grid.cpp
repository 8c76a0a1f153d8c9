#include "bmmn/grid.hpp"

#include "bmmn/decomposition.hpp"

#include <algorithm>

namespace bmmn {

DirGrid build_grid(const UnitBall& ball, const std::vector<Point>& terminals, int k) {
  DirGrid g{k, Frame(ball, k), {}, {}, {}};
  g.fpts.reserve(terminals.size());
  for (const Point& t : terminals) g.fpts.push_back(g.frame.to_frame(t));
  for (const Point& f : g.fpts) {
    g.lines_k.push_back(f.y);
    g.lines_k1.push_back(f.x);
  }
  auto dedup = [](std::vector<Rat>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  };
  dedup(g.lines_k);
  dedup(g.lines_k1);
  return g;
}

std::vector<SwitchPath> enumerate_strip_paths(const DirGrid& grid, const UnitBall& ball,
                                              const Strip& strip) {
  std::vector<SwitchPath> out;
  const Point lo = grid.fpts[strip.pair.first];
  const Point hi = grid.fpts[strip.pair.second];

  auto emit = [&](std::optional<Rat> level, std::vector<Point> fpoly) {
    // Drop repeated corners (switch at an endpoint level).
    std::vector<Point> poly;
    for (Point& f : fpoly) {
      Point w = grid.frame.to_world(f);
      if (poly.empty() || poly.back() != w) poly.push_back(std::move(w));
    }
    SwitchPath sp{strip.pair, std::move(level), std::move(poly), Rat(0)};
    for (std::size_t i = 0; i + 1 < sp.polyline.size(); ++i)
      sp.length += distance(ball, sp.polyline[i], sp.polyline[i + 1]);
    out.push_back(std::move(sp));
  };

  if (strip.degenerate) {
    emit(std::nullopt, {lo, hi});
    return out;
  }
  if (strip.family == StripFamily::Vertical) {
    for (const Rat& s : grid.lines_k) {
      if (s < strip.b_lo || s > strip.b_hi) continue;
      emit(s, {lo, {lo.x, s}, {hi.x, s}, hi});
    }
  } else {
    for (const Rat& s : grid.lines_k1) {
      if (s < strip.a_lo || s > strip.a_hi) continue;
      emit(s, {lo, {s, lo.y}, {s, hi.y}, hi});
    }
  }
  return out;
}

}  // namespace bmmn
