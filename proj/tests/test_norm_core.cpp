#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bmmn/ball.hpp"
#include "support.hpp"

#include <random>

using namespace bmmn;
using namespace bmmn::testing;

TEST_CASE("validate_ball accepts the l1 square and hexagon") {
  UnitBall sq = square_ball();
  CHECK(sq.m() == 2);
  UnitBall hex = hexagon_ball();
  CHECK(hex.m() == 3);
  CHECK(hex.vertex(4) == Point(Rat(-1, 2), Rat(-1)));
}

TEST_CASE("validate_ball rejects invalid vertex lists") {
  CHECK_THROWS_AS(UnitBall::validate({{1, 0}, {0, 1}, {1, 1}, {-1, 0}, {0, -1}, {-1, -1}}),
                  BallValidationError);
  try {
    UnitBall::validate({{1, 0}, {0, 1}, {1, 1}, {-1, 0}, {0, -1}, {-1, -1}});
  } catch (const BallValidationError& e) {
    CHECK(e.code() == BallError::NotConvex);
  }

  // Clockwise square.
  try {
    UnitBall::validate({{1, 0}, {0, -1}, {-1, 0}, {0, 1}});
    CHECK(false);
  } catch (const BallValidationError& e) {
    CHECK(e.code() == BallError::NotCounterclockwise);
  }

  // Symmetry violation.
  try {
    UnitBall::validate({{1, 0}, {0, 1}, {-1, 0}, {0, -2}});
    CHECK(false);
  } catch (const BallValidationError& e) {
    CHECK(e.code() == BallError::NotSymmetric);
  }

  // Odd/short lists.
  CHECK_THROWS_AS(UnitBall::validate({{1, 0}, {-1, 0}}), std::invalid_argument);

  // Double-wound octagram: left turns everywhere but winding number 2.
  CHECK_THROWS_AS(UnitBall::validate({{5, 0}, {-3, 4}, {0, -5}, {3, 4},
                                      {-5, 0}, {3, -4}, {0, 5}, {-3, -4}}),
                  BallValidationError);
}

TEST_CASE("norm matches the gauge on the frozen examples") {
  UnitBall sq = square_ball();
  UnitBall hex = hexagon_ball();
  CHECK(norm_of(sq, {3, 4}) == Rat(7));
  CHECK(norm_of(hex, {Rat(3, 2), 1}) == Rat(2));
  CHECK(norm_of(sq, {0, 0}) == Rat(0));
}

TEST_CASE("distance examples") {
  UnitBall sq = square_ball();
  UnitBall hex = hexagon_ball();
  CHECK(distance(sq, {0, 0}, {2, 3}) == Rat(5));
  CHECK(distance(hex, {1, 1}, {1, 1}) == Rat(0));
  // (3,2) = 2*(1,0) + 2*(1/2,1).
  CHECK(distance(hex, {0, 0}, {3, 2}) == Rat(4));
}

TEST_CASE("cone_of locates cones and boundary rays") {
  UnitBall sq = square_ball();
  ConeLocation a = cone_of(sq, {2, 3});
  CHECK(!a.on_ray);
  CHECK(a.index == 0);
  ConeLocation b = cone_of(sq, {-1, 2});
  CHECK(!b.on_ray);
  CHECK(b.index == 1);
  ConeLocation c = cone_of(sq, {3, 0});
  CHECK(c.on_ray);
  CHECK(c.index == 0);
  CHECK_THROWS_AS(cone_of(sq, {0, 0}), std::invalid_argument);
}

TEST_CASE("interval produces exact parallelograms") {
  UnitBall sq = square_ball();
  Interval r = interval(sq, {0, 0}, {2, 3});
  REQUIRE(!r.degenerate);
  CHECK(r.cone == 0);
  CHECK(r.corners[0] == Point(0, 0));
  CHECK(r.corners[1] == Point(2, 0));
  CHECK(r.corners[2] == Point(2, 3));
  CHECK(r.corners[3] == Point(0, 3));

  Interval d = interval(sq, {0, 0}, {4, 0});
  CHECK(d.degenerate);

  UnitBall hex = hexagon_ball();
  Interval h = interval(hex, {0, 0}, {3, 2});
  REQUIRE(!h.degenerate);
  CHECK(h.corners[0] == Point(0, 0));
  CHECK(h.corners[1] == Point(2, 0));
  CHECK(h.corners[2] == Point(3, 2));
  CHECK(h.corners[3] == Point(1, 2));
}

TEST_CASE("in_interval frozen examples") {
  UnitBall sq = square_ball();
  CHECK(in_interval(sq, {0, 0}, {2, 3}, {1, 1}));
  CHECK(!in_interval(sq, {0, 0}, {2, 3}, {3, 0}));
  UnitBall hex = hexagon_ball();
  CHECK(in_interval(hex, {0, 0}, {3, 2}, {Rat(3, 2), 1}));
}

TEST_CASE("classify_pair: cones and extremal lines") {
  UnitBall sq = square_ball();
  CHECK(classify_pair(sq, {0, 0}, {2, 3}) == std::vector<int>{0});
  CHECK(classify_pair(sq, {0, 0}, {-1, 2}) == std::vector<int>{1});
  auto both = classify_pair(sq, {0, 0}, {3, 0});
  REQUIRE(both.size() == 2);
  CHECK(((both[0] == 0 && both[1] == 1) || (both[0] == 1 && both[1] == 0)));
  CHECK_THROWS_AS(classify_pair(sq, {1, 1}, {1, 1}), std::invalid_argument);
}

TEST_CASE("is_shortest_legal_path frozen examples") {
  UnitBall sq = square_ball();
  std::vector<Point> good = {{0, 0}, {2, 0}, {2, 3}};
  CHECK(is_shortest_legal_path(sq, good));
  std::vector<Point> bad = {{0, 0}, {3, 0}, {3, 3}, {2, 3}};
  CHECK(!is_shortest_legal_path(sq, bad));
  UnitBall hex = hexagon_ball();
  std::vector<Point> hx = {{0, 0}, {2, 0}, {3, 2}};
  CHECK(is_shortest_legal_path(hex, hx));
  std::vector<Point> diag = {{0, 0}, {1, 1}};
  CHECK_THROWS_AS(is_shortest_legal_path(sq, diag), std::invalid_argument);
}

TEST_CASE("norm axioms hold exactly on random rational vectors") {
  std::mt19937 rng(7);
  for (const UnitBall& ball : {square_ball(), hexagon_ball(), octagon_ball()}) {
    for (int it = 0; it < 1000; ++it) {
      Point u = random_point(rng), v = random_point(rng);
      Rat nu = norm_of(ball, u), nv = norm_of(ball, v);
      CHECK(nu.sign() >= 0);
      CHECK((nu.sign() == 0) == u.is_zero());
      Rat lambda = random_rat(rng, 6, 3);
      CHECK(norm_of(ball, {lambda * u.x, lambda * u.y}) == lambda.abs() * nu);
      CHECK(norm_of(ball, u + v) <= nu + nv);
      CHECK(norm_of(ball, -u) == nu);
    }
  }
}

TEST_CASE("ball vertices have norm exactly 1") {
  for (const UnitBall& ball : {square_ball(), hexagon_ball(), octagon_ball()}) {
    for (int k = 0; k < ball.vertex_count(); ++k) {
      CHECK(norm_of(ball, ball.vertex(k)) == Rat(1));
    }
  }
}

TEST_CASE("interval membership is equivalent to the metric characterization") {
  std::mt19937 rng(11);
  for (const UnitBall& ball : {square_ball(), hexagon_ball(), octagon_ball()}) {
    for (int it = 0; it < 1000; ++it) {
      Point p = random_point(rng), q = random_point(rng), z = random_point(rng);
      bool cone_based = in_interval(ball, p, q, z);
      bool metric = distance(ball, p, z) + distance(ball, z, q) == distance(ball, p, q);
      CHECK(cone_based == metric);
    }
  }
}

TEST_CASE("monotone verdict is equivalent to exact shortest length") {
  std::mt19937 rng(13);
  for (const UnitBall& ball : {square_ball(), hexagon_ball()}) {
    int m = ball.m();
    for (int it = 0; it < 1000; ++it) {
      // Random legal walk; compare the monotonicity verdict with the
      // exact length test.
      Point start = random_point(rng, 8, 2);
      std::vector<Point> path = {start};
      std::uniform_int_distribution<int> steps(2, 6);
      std::uniform_int_distribution<int> dir(0, 2 * m - 1);
      std::uniform_int_distribution<long> len(1, 4);
      int ns = steps(rng);
      for (int s = 0; s < ns; ++s) {
        Vec d = ball.vertex(dir(rng));
        Rat t(len(rng), 2);
        path.push_back(path.back() + Point{t * d.x, t * d.y});
      }
      bool valid = true;
      for (std::size_t i = 0; i + 1 < path.size() && valid; ++i)
        valid = path[i] != path[i + 1];
      if (!valid || path.front() == path.back()) continue;
      Rat total(0);
      for (std::size_t i = 0; i + 1 < path.size(); ++i)
        total += distance(ball, path[i], path[i + 1]);
      bool monotone = is_shortest_legal_path(ball, path);
      bool exact = total == distance(ball, path.front(), path.back());
      CHECK(monotone == exact);
    }
  }
}

TEST_CASE("square ball reproduces the l1 norm") {
  UnitBall sq = square_ball();
  std::mt19937 rng(17);
  for (int it = 0; it < 1000; ++it) {
    Point v = random_point(rng);
    CHECK(norm_of(sq, v) == v.x.abs() + v.y.abs());
  }
}

TEST_CASE("frame round-trips and axis-aligns legal segments") {
  for (const UnitBall& ball : {square_ball(), hexagon_ball(), octagon_ball()}) {
    std::mt19937 rng(23);
    for (int k = 0; k < ball.m(); ++k) {
      Frame fr(ball, k);
      for (int it = 0; it < 50; ++it) {
        Point p = random_point(rng);
        CHECK(fr.to_world(fr.to_frame(p)) == p);
      }
      Point ek = fr.to_frame(ball.vertex(k));
      CHECK(ek == Point(1, 0));
      Point ek1 = fr.to_frame(ball.vertex(k + 1));
      CHECK(ek1 == Point(0, 1));
    }
  }
}
