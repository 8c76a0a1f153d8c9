#pragma once

#include "bmmn/ball.hpp"

#include <random>
#include <vector>

namespace bmmn::testing {

inline UnitBall square_ball() {
  return UnitBall::validate({{1, 0}, {0, 1}, {-1, 0}, {0, -1}});
}

inline UnitBall hexagon_ball() {
  return UnitBall::validate({{1, 0}, {Rat(1, 2), 1}, {Rat(-1, 2), 1},
                             {-1, 0}, {Rat(-1, 2), -1}, {Rat(1, 2), -1}});
}

inline UnitBall octagon_ball() {
  std::vector<Point> half = {{1, 0}, {Rat(3, 4), Rat(3, 4)}, {0, 1}, {Rat(-3, 4), Rat(3, 4)}};
  std::vector<Point> all = half;
  for (const Point& p : half) all.push_back(-p);
  return UnitBall::validate(all);
}

/// Uniform random rational with numerator in [-max_num, max_num] and
/// denominator in [1, max_den]; deterministic for a fixed engine state.
inline Rat random_rat(std::mt19937& rng, long max_num = 20, long max_den = 4) {
  std::uniform_int_distribution<long> num(-max_num, max_num);
  std::uniform_int_distribution<long> den(1, max_den);
  return Rat(num(rng), den(rng));
}

inline Point random_point(std::mt19937& rng, long max_num = 20, long max_den = 4) {
  Rat x = random_rat(rng, max_num, max_den);
  Rat y = random_rat(rng, max_num, max_den);
  return {x, y};
}

inline std::vector<Point> random_terminals(std::mt19937& rng, int n, long max_num = 20,
                                           long max_den = 2) {
  std::vector<Point> pts;
  while (static_cast<int>(pts.size()) < n) {
    Point p = random_point(rng, max_num, max_den);
    bool dup = false;
    for (const Point& q : pts) dup = dup || q == p;
    if (!dup) pts.push_back(p);
  }
  return pts;
}

}  // namespace bmmn::testing
