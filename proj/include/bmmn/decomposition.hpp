#pragma once

#include "bmmn/grid.hpp"
#include "bmmn/network.hpp"

#include <set>
#include <utility>
#include <vector>

namespace bmmn {

enum class StripFamily {
  Horizontal,  // k-strip: sides are k-segments (frame-horizontal)
  Vertical     // (k+1)-strip: sides are (k+1)-segments (frame-vertical)
};

/// A one-directional strip: a terminal pair on the same grid line
/// (degenerate) or on two consecutive lines of its family, whose interval
/// meets degenerated same-family strips only in the pair's terminals, and
/// whose pair belongs to F_k.
struct Strip {
  std::pair<int, int> pair;  // terminal indices, componentwise-lower first (in frame)
  StripFamily family = StripFamily::Horizontal;
  bool degenerate = false;
  Interval region;                  // world coordinates
  LegalSegment side_low, side_high; // by beta for horizontal, by alpha for vertical
  // Frame-coordinate bounding rectangle of the region.
  Rat a_lo, a_hi, b_lo, b_hi;
};

/// An intersecting (vertical, horizontal) 1-strip pair. The corners o and
/// o' of the cell are the componentwise max/min in frame coordinates; the
/// cones C_k(o) and -C_k(o') avoid both strip interiors.
struct Crossing {
  int vertical = 0, horizontal = 0;  // strip indices
  Rat a_lo, a_hi, b_lo, b_hi;        // cell, frame coordinates
  Point o_frame, oprime_frame;
  Point o_world, oprime_world;
};

/// A one-directional staircase at a crossing corner: the terminals whose
/// intervals to the origin are free of other terminals, ordered so the
/// cone-outward coordinate increases. Orientation at_o means the origin is
/// the componentwise-max corner.
struct Staircase {
  int crossing = 0;
  bool at_o = true;
  Point origin_frame;
  Point origin_world;
  std::vector<int> terms;            // ordered terminal indices; may be empty
  std::pair<int, int> base_near;     // (vertical, horizontal) terminals inside cone(origin)
  std::pair<int, int> base_far;      // the opposite pair (i', j')
};

std::vector<std::pair<int, int>> pairs_in_direction(const UnitBall& ball,
                                                    const std::vector<Point>& terminals, int k);

/// Pairs of F_k with no third terminal inside their interval. Realizing all
/// atomic pairs realizes every pair of F_k: a pair with an interior
/// terminal splits into two shorter monotone pieces through it.
std::vector<std::pair<int, int>> atomic_pairs_in_direction(const UnitBall& ball,
                                                           const DirGrid& grid, int k);

std::vector<Strip> find_strips(const UnitBall& ball, const std::vector<Point>& terminals,
                               const DirGrid& grid, int k);

std::vector<Crossing> find_crossings(const DirGrid& grid, const std::vector<Strip>& strips);

std::vector<Staircase> build_staircases(const UnitBall& ball, const std::vector<Point>& terminals,
                                        const DirGrid& grid, const std::vector<Strip>& strips,
                                        const std::vector<Crossing>& crossings);

/// The generating set F = F'_k union F''_k: all strip pairs plus, per
/// staircase, the far horizontal-base terminal paired with each staircase
/// terminal.
std::set<std::pair<int, int>> generating_set(const std::vector<Strip>& strips,
                                             const std::vector<Staircase>& staircases);

struct Decomposition {
  int k = 0;
  DirGrid grid;
  std::vector<Strip> strips;
  std::vector<Crossing> crossings;
  std::vector<Staircase> staircases;
};

Decomposition decompose(const UnitBall& ball, const std::vector<Point>& terminals, int k);

}  // namespace bmmn
