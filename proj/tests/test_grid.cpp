#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bmmn/decomposition.hpp"
#include "support.hpp"

using namespace bmmn;
using namespace bmmn::testing;

namespace {

const Strip* find_strip(const std::vector<Strip>& strips, StripFamily fam, int i, int j) {
  for (const Strip& s : strips) {
    if (s.family == fam && ((s.pair.first == i && s.pair.second == j) ||
                            (s.pair.first == j && s.pair.second == i)))
      return &s;
  }
  return nullptr;
}

}  // namespace

TEST_CASE("build_grid counts lines, vertices and edges") {
  UnitBall sq = square_ball();
  DirGrid g1 = build_grid(sq, {{0, 0}, {2, 3}}, 0);
  CHECK(g1.lines_k.size() == 2);
  CHECK(g1.lines_k1.size() == 2);
  CHECK(g1.vertex_count() == 4);
  CHECK(g1.edge_count() == 4);

  DirGrid g2 = build_grid(sq, {{0, 0}, {2, 3}, {5, 3}}, 0);
  CHECK(g2.lines_k == std::vector<Rat>{Rat(0), Rat(3)});
  CHECK(g2.lines_k1 == std::vector<Rat>{Rat(0), Rat(2), Rat(5)});
  CHECK(g2.vertex_count() == 6);

  UnitBall hex = hexagon_ball();
  DirGrid g3 = build_grid(hex, {{0, 0}, {3, 2}}, 0);
  CHECK(g3.lines_k.size() == 2);
  CHECK(g3.lines_k1.size() == 2);
  CHECK(g3.vertex_count() == 4);
}

TEST_CASE("enumerate_strip_paths lists one switch path per crossing line") {
  UnitBall sq = square_ball();
  std::vector<Point> T = {{0, 0}, {1, 6}, {8, 2}, {9, 3}, {7, 4}};
  DirGrid g = build_grid(sq, T, 0);
  auto strips = find_strips(sq, T, g, 0);
  const Strip* vs = find_strip(strips, StripFamily::Vertical, 0, 1);
  REQUIRE(vs != nullptr);
  auto paths = enumerate_strip_paths(g, sq, *vs);
  // Switch candidates: grid y-lines meeting [0,6] = {0, 2, 3, 4, 6}.
  CHECK(paths.size() == 5);
  for (const auto& p : paths) {
    CHECK(p.length == distance(sq, T[0], T[1]));
    CHECK(is_shortest_legal_path(sq, p.polyline));
  }
}

TEST_CASE("two-terminal strip has exactly the two boundary paths") {
  UnitBall sq = square_ball();
  std::vector<Point> T = {{0, 0}, {1, 6}};
  DirGrid g = build_grid(sq, T, 0);
  auto strips = find_strips(sq, T, g, 0);
  const Strip* vs = find_strip(strips, StripFamily::Vertical, 0, 1);
  REQUIRE(vs != nullptr);
  auto paths = enumerate_strip_paths(g, sq, *vs);
  CHECK(paths.size() == 2);
}

TEST_CASE("degenerate strips yield the segment as the single path") {
  UnitBall sq = square_ball();
  std::vector<Point> T = {{0, 0}, {2, 3}, {5, 3}};
  DirGrid g = build_grid(sq, T, 0);
  auto strips = find_strips(sq, T, g, 0);
  const Strip* ds = nullptr;
  for (const Strip& s : strips)
    if (s.degenerate) ds = &s;
  REQUIRE(ds != nullptr);
  auto paths = enumerate_strip_paths(g, sq, *ds);
  REQUIRE(paths.size() == 1);
  CHECK(!paths[0].switch_level.has_value());
  CHECK(paths[0].length == Rat(3));
}

TEST_CASE("every switch path is accepted by is_shortest_legal_path") {
  std::mt19937 rng(41);
  for (const UnitBall& ball : {square_ball(), hexagon_ball()}) {
    for (int it = 0; it < 20; ++it) {
      std::vector<Point> T = random_terminals(rng, 6, 10, 2);
      for (int k = 0; k < ball.m(); ++k) {
        DirGrid g = build_grid(ball, T, k);
        auto strips = find_strips(ball, T, g, k);
        for (const Strip& s : strips) {
          for (const auto& p : enumerate_strip_paths(g, ball, s)) {
            CHECK(is_shortest_legal_path(ball, p.polyline));
            CHECK(p.length == distance(ball, T[s.pair.first], T[s.pair.second]));
          }
        }
      }
    }
  }
}

TEST_CASE("grid vertex count is bounded by n^2 + n") {
  std::mt19937 rng(43);
  for (int it = 0; it < 20; ++it) {
    std::vector<Point> T = random_terminals(rng, 8, 10, 2);
    UnitBall hex = hexagon_ball();
    for (int k = 0; k < hex.m(); ++k) {
      DirGrid g = build_grid(hex, T, k);
      CHECK(g.vertex_count() <= T.size() * T.size() + T.size());
    }
  }
}
