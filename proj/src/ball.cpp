#include "bmmn/ball.hpp"

#include <sstream>

namespace bmmn {

namespace {

// Angular half-plane class for exact CCW-order comparison: 0 for the upper
// half (y>0, or y==0 and x>0), 1 for the lower half.
int half_of(const Vec& v) {
  if (v.y.sign() > 0) return 0;
  if (v.y.sign() < 0) return 1;
  return v.x.sign() > 0 ? 0 : 1;
}

// True iff u comes strictly before v in angular order starting at the
// positive x-axis.
bool angle_less(const Vec& u, const Vec& v) {
  int hu = half_of(u), hv = half_of(v);
  if (hu != hv) return hu < hv;
  return cross(u, v).sign() > 0;
}

}  // namespace

UnitBall UnitBall::validate(std::vector<Point> vertices) {
  const std::size_t n = vertices.size();
  if (n < 4 || n % 2 != 0)
    throw std::invalid_argument("UnitBall: vertex count must be even and >= 4");
  const int m = static_cast<int>(n / 2);

  for (int k = 0; k < m; ++k) {
    if (vertices[k + m] != -vertices[k])
      throw BallValidationError(BallError::NotSymmetric,
                                "vertex " + std::to_string(k + m) + " is not the negation of vertex " +
                                    std::to_string(k));
  }

  // Strict convexity and orientation: all consecutive cross products of
  // edge vectors must be strictly positive.
  int pos = 0, neg = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const Point& a = vertices[i];
    const Point& b = vertices[(i + 1) % n];
    const Point& c = vertices[(i + 2) % n];
    int s = cross(b - a, c - b).sign();
    if (s > 0) ++pos;
    else if (s < 0) ++neg;
  }
  if (neg == static_cast<int>(n))
    throw BallValidationError(BallError::NotCounterclockwise, "vertices are in clockwise order");
  if (pos != static_cast<int>(n))
    throw BallValidationError(BallError::NotConvex, "vertices are not in strictly convex position");

  // Single winding: the vertex directions must wrap around the origin
  // exactly once (rules out star polygons that still turn left everywhere).
  int wraps = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec& u = vertices[i];
    const Vec& v = vertices[(i + 1) % n];
    if (u.is_zero() || v.is_zero())
      throw BallValidationError(BallError::OriginOutside, "a vertex coincides with the origin");
    if (!angle_less(u, v)) ++wraps;
  }
  if (wraps != 1)
    throw BallValidationError(BallError::NotConvex, "vertex directions wind around the origin more than once");

  // Origin strictly left of every directed edge.
  for (std::size_t i = 0; i < n; ++i) {
    const Point& a = vertices[i];
    const Point& b = vertices[(i + 1) % n];
    if (cross(b - a, -a).sign() <= 0)
      throw BallValidationError(BallError::OriginOutside, "origin is not strictly inside the polygon");
  }

  return UnitBall(std::move(vertices), m);
}

ConeLocation cone_of(const UnitBall& ball, const Vec& v) {
  if (v.is_zero()) throw std::invalid_argument("cone_of: zero vector");
  const int n = ball.vertex_count();
  for (int k = 0; k < n; ++k) {
    const Vec& bk = ball.vertex(k);
    if (cross(bk, v).sign() == 0 && dot(bk, v).sign() > 0) return {true, k};
  }
  for (int k = 0; k < n; ++k) {
    const Vec& bk = ball.vertex(k);
    const Vec& bk1 = ball.vertex(k + 1);
    if (cross(bk, v).sign() > 0 && cross(v, bk1).sign() > 0) return {false, k};
  }
  throw std::logic_error("cone_of: cones do not cover the plane (invalid ball)");
}

namespace {

// Coordinates of v in the basis (b_k, b_{k+1}).
Point cone_coords(const UnitBall& ball, int k, const Vec& v) {
  const Vec& u = ball.vertex(k);
  const Vec& w = ball.vertex(k + 1);
  Rat det = cross(u, w);
  return {cross(v, w) / det, cross(u, v) / det};
}

}  // namespace

Rat norm_of(const UnitBall& ball, const Vec& v) {
  if (v.is_zero()) return Rat(0);
  // A boundary ray with index k is also the lower boundary of cone k, so
  // the cone-k decomposition is valid in both cases.
  ConeLocation loc = cone_of(ball, v);
  Point ab = cone_coords(ball, loc.index, v);
  return ab.x + ab.y;
}

Interval interval(const UnitBall& ball, const Point& p, const Point& q) {
  Interval res;
  res.p = p;
  res.q = q;
  if (p == q) {
    res.degenerate = true;
    return res;
  }
  ConeLocation loc = cone_of(ball, q - p);
  if (loc.on_ray) {
    res.degenerate = true;
    return res;
  }
  res.degenerate = false;
  res.cone = loc.index;
  Point ab = cone_coords(ball, loc.index, q - p);
  const Vec& u = ball.vertex(loc.index);
  const Vec& w = ball.vertex(loc.index + 1);
  res.corners = {p, p + ab.x * u, q, p + ab.y * w};
  return res;
}

bool in_interval(const UnitBall& ball, const Point& p, const Point& q, const Point& z) {
  if (p == q) return z == p;
  ConeLocation loc = cone_of(ball, q - p);
  if (loc.on_ray) {
    // z must lie on the segment pq.
    Vec d = q - p, e = z - p;
    if (cross(d, e).sign() != 0) return false;
    Rat t = dot(d, e);
    return t.sign() >= 0 && t <= dot(d, d);
  }
  Point total = cone_coords(ball, loc.index, q - p);
  Point zz = cone_coords(ball, loc.index, z - p);
  return zz.x.sign() >= 0 && zz.y.sign() >= 0 && zz.x <= total.x && zz.y <= total.y;
}

std::vector<int> classify_pair(const UnitBall& ball, const Point& p, const Point& q) {
  if (p == q) throw std::invalid_argument("classify_pair: coincident points");
  const int m = ball.m();
  ConeLocation loc = cone_of(ball, q - p);
  if (!loc.on_ray) return {loc.index % m};
  int j = loc.index % m;
  int other = (j + m - 1) % m;
  if (other == j) return {j};
  return {j, other};
}

std::optional<int> legal_dir(const UnitBall& ball, const Point& a, const Point& b) {
  if (a == b) return std::nullopt;
  Vec d = b - a;
  for (int j = 0; j < ball.m(); ++j) {
    if (cross(ball.line_dir(j), d).sign() == 0) return j;
  }
  return std::nullopt;
}

LegalSegment make_segment(const UnitBall& ball, const Point& a, const Point& b) {
  auto dir = legal_dir(ball, a, b);
  if (!dir) throw std::invalid_argument("make_segment: not a legal segment");
  return {a, b, *dir};
}

bool is_shortest_legal_path(const UnitBall& ball, std::span<const Point> path) {
  if (path.size() < 2) throw std::invalid_argument("is_shortest_legal_path: need at least two points");
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    if (path[i] == path[i + 1])
      throw std::invalid_argument("is_shortest_legal_path: consecutive points coincide");
    if (!legal_dir(ball, path[i], path[i + 1]))
      throw std::invalid_argument("is_shortest_legal_path: illegal edge");
  }
  const Point& p = path.front();
  const Point& q = path.back();
  if (p == q) return false;

  ConeLocation loc = cone_of(ball, q - p);
  if (loc.on_ray) {
    // Unique shortest path is the segment itself: every edge must advance
    // along the ray direction.
    Vec d = ball.vertex(loc.index);
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
      Vec e = path[i + 1] - path[i];
      if (cross(d, e).sign() != 0 || dot(d, e).sign() <= 0) return false;
    }
    return true;
  }

  // Monotone w.r.t. l_k and l_{k+1}: every edge is a k- or (k+1)-segment
  // advancing weakly in both frame coordinates.
  Frame fr(ball, loc.index % ball.m());
  // The pair may live in the opposite cone C_{k+m}; orient so the frame
  // deltas of q-p are nonnegative.
  Point d = fr.to_frame(q - p);
  int flip = (d.x.sign() < 0 || d.y.sign() < 0) ? -1 : 1;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    Point e = fr.to_frame(path[i + 1] - path[i]);
    if (flip < 0) e = -e;
    if (e.x.sign() != 0 && e.y.sign() != 0) return false;  // not a k/(k+1)-segment
    if (e.x.sign() < 0 || e.y.sign() < 0) return false;    // backtracks
  }
  return true;
}

}  // namespace bmmn
