#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bmmn/network.hpp"
#include "support.hpp"

#include <random>

using namespace bmmn;
using namespace bmmn::testing;

TEST_CASE("length has union semantics") {
  Network net(square_ball());
  CHECK(net.length() == Rat(0));

  net.add_segment({0, 0}, {2, 0});
  net.add_segment({1, 0}, {3, 0});
  CHECK(net.length() == Rat(3));

  Network two(square_ball());
  two.add_segment({0, 0}, {2, 0});
  two.add_segment({2, 0}, {2, 3});
  CHECK(two.length() == Rat(5));
}

TEST_CASE("shortest_path on an L and unreachable pairs") {
  Network net(square_ball());
  net.add_segment({0, 0}, {2, 0});
  net.add_segment({2, 0}, {2, 3});
  net.register_terminal({0, 0});
  net.register_terminal({2, 3});
  auto r = net.shortest_path({0, 0}, {2, 3});
  REQUIRE(r.has_value());
  CHECK(r->length == Rat(5));

  Network part(square_ball());
  part.add_segment({0, 0}, {2, 0});
  part.register_terminal({0, 0});
  part.register_terminal({2, 3});
  CHECK(!part.shortest_path({0, 0}, {2, 3}).has_value());
}

TEST_CASE("strip sides plus both switch segments realize the distance") {
  // Vertical strip (0,0)-(1,6): both sides and both switch segments; the
  // two candidate monotone paths both attain the distance 7.
  Network net(square_ball());
  net.add_segment({0, 0}, {0, 6});
  net.add_segment({1, 0}, {1, 6});
  net.add_segment({0, 0}, {1, 0});
  net.add_segment({0, 6}, {1, 6});
  net.register_terminal({0, 0});
  net.register_terminal({1, 6});
  auto r = net.shortest_path({0, 0}, {1, 6});
  REQUIRE(r.has_value());
  CHECK(r->length == distance(net.ball(), {0, 0}, {1, 6}));
}

TEST_CASE("verify_manhattan reports exact feasibility") {
  std::vector<Point> T = {{0, 0}, {2, 3}};
  Network good(square_ball());
  good.add_segment({0, 0}, {2, 0});
  good.add_segment({2, 0}, {2, 3});
  CHECK(good.verify_manhattan(T).ok);

  Network bad(square_ball());
  bad.add_segment({0, 0}, {2, 0});
  VerifyReport rep = bad.verify_manhattan(T);
  CHECK(!rep.ok);
  REQUIRE(rep.failures.size() == 1);
  CHECK(rep.failures[0].i == 0);
  CHECK(rep.failures[0].j == 1);
  CHECK(!rep.failures[0].best.has_value());
}

TEST_CASE("length is monotone under insertion and invariant under splits") {
  std::mt19937 rng(31);
  for (int it = 0; it < 50; ++it) {
    UnitBall ball = it % 2 == 0 ? square_ball() : hexagon_ball();
    Network net(ball);
    Rat prev(0);
    for (int s = 0; s < 8; ++s) {
      Point a = random_point(rng, 10, 2);
      std::uniform_int_distribution<int> dir(0, 2 * ball.m() - 1);
      std::uniform_int_distribution<long> len(1, 5);
      Vec d = ball.vertex(dir(rng));
      Rat t(len(rng), 2);
      Point b = a + Point{t * d.x, t * d.y};
      net.add_segment(a, b);
      Rat cur = net.length();
      CHECK(cur >= prev);
      prev = cur;

      // Splitting the same segment into halves must not change the length.
      Network split(ball);
      Point mid = a + Point{t / Rat(2) * d.x, t / Rat(2) * d.y};
      split.add_segment(a, mid);
      split.add_segment(mid, b);
      CHECK(split.length() == norm_of(ball, b - a));
    }
  }
}

TEST_CASE("in-network shortest paths never beat the gauge distance") {
  std::mt19937 rng(37);
  for (int it = 0; it < 30; ++it) {
    UnitBall ball = it % 2 == 0 ? square_ball() : hexagon_ball();
    Network net(ball);
    std::vector<Point> pts = random_terminals(rng, 4, 8, 2);
    for (int s = 0; s < 6; ++s) {
      Point a = random_point(rng, 8, 2);
      std::uniform_int_distribution<int> dir(0, 2 * ball.m() - 1);
      std::uniform_int_distribution<long> len(1, 6);
      Vec d = ball.vertex(dir(rng));
      Rat t(len(rng), 1);
      net.add_segment(a, a + Point{t * d.x, t * d.y});
    }
    for (const Point& p : pts) net.register_terminal(p);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      for (std::size_t j = i + 1; j < pts.size(); ++j) {
        auto r = net.shortest_path(pts[i], pts[j]);
        if (r) CHECK(r->length >= distance(ball, pts[i], pts[j]));
      }
    }
  }
}

TEST_CASE("verification is invariant under adding segments") {
  std::vector<Point> T = {{0, 0}, {2, 3}, {5, 3}};
  Network net(square_ball());
  net.add_segment({0, 0}, {2, 0});
  net.add_segment({2, 0}, {2, 3});
  net.add_segment({2, 3}, {5, 3});
  CHECK(net.verify_manhattan(T).ok);
  net.add_segment({-4, 1}, {9, 1});
  net.add_segment({0, 0}, {0, 6});
  CHECK(net.verify_manhattan(T).ok);
}
