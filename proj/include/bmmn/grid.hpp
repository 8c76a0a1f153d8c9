#pragma once

#include "bmmn/ball.hpp"

#include <optional>
#include <vector>

namespace bmmn {

struct Strip;  // decomposition.hpp

/// Per-direction grid Gamma_k: the lines through terminals parallel to l_k
/// (frame-horizontal, the beta levels) and l_{k+1} (frame-vertical, the
/// alpha levels). Vertices are all pairwise line intersections; edges the
/// consecutive sub-segments along each line.
struct DirGrid {
  int k = 0;
  Frame frame;
  std::vector<Point> fpts;       // frame coordinates per terminal
  std::vector<Rat> lines_k;      // sorted unique beta levels (set L_k)
  std::vector<Rat> lines_k1;     // sorted unique alpha levels (set L_{k+1})

  std::size_t vertex_count() const { return lines_k.size() * lines_k1.size(); }
  std::size_t edge_count() const {
    if (lines_k.empty() || lines_k1.empty()) return 0;
    return lines_k.size() * (lines_k1.size() - 1) + lines_k1.size() * (lines_k.size() - 1);
  }
};

DirGrid build_grid(const UnitBall& ball, const std::vector<Point>& terminals, int k);

/// One in-grid shortest path between the terminals of a strip: along one
/// side to the switch line, across, along the other side. Degenerate strips
/// have a single path (the segment) and no switch line.
struct SwitchPath {
  std::pair<int, int> endpoints;     // terminal indices, componentwise-lower first
  std::optional<Rat> switch_level;   // frame coordinate of the switch line
  std::vector<Point> polyline;       // world coordinates
  Rat length;
};

/// All in-grid shortest paths between the strip's terminals; strips span
/// consecutive grid lines, so every such path switches lines exactly once.
std::vector<SwitchPath> enumerate_strip_paths(const DirGrid& grid, const UnitBall& ball,
                                              const Strip& strip);

}  // namespace bmmn
