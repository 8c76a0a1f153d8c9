#pragma once

#include "bmmn/geom.hpp"

#include <array>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace bmmn {

enum class BallError { NotSymmetric, NotConvex, NotCounterclockwise, OriginOutside };

class BallValidationError : public std::runtime_error {
 public:
  BallValidationError(BallError code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  BallError code() const { return code_; }

 private:
  BallError code_;
};

/// Unit ball of a polygonal norm: a centrally symmetric, strictly convex
/// polygon with 2m vertices b_0..b_{2m-1} in counterclockwise order around
/// the origin. Vertex k+m is -vertex(k); the extremal line l_k passes
/// through vertex(k) and vertex(k+m). Immutable after validation.
class UnitBall {
 public:
  /// Validates the invariants (central symmetry, strict convexity,
  /// counterclockwise single winding, origin inside) and constructs the
  /// ball. Throws BallValidationError naming the first violated invariant.
  static UnitBall validate(std::vector<Point> vertices);

  int m() const { return m_; }
  int vertex_count() const { return 2 * m_; }
  /// Vertex b_{k mod 2m}.
  const Point& vertex(int k) const { return vertices_[mod2m(k)]; }
  /// Direction vector of the extremal line l_j (the vertex b_{j mod 2m}).
  const Point& line_dir(int j) const { return vertex(j); }

  int mod2m(int k) const {
    int n = 2 * m_;
    k %= n;
    return k < 0 ? k + n : k;
  }

  friend bool operator==(const UnitBall& a, const UnitBall& b) { return a.vertices_ == b.vertices_; }

 private:
  UnitBall(std::vector<Point> v, int m) : vertices_(std::move(v)), m_(m) {}
  std::vector<Point> vertices_;
  int m_ = 0;
};

/// Location of a nonzero vector relative to the elementary cones:
/// either strictly inside cone C_index, or on the boundary ray through
/// vertex b_index (positively aligned).
struct ConeLocation {
  bool on_ray = false;
  int index = 0;  // cone index in [0,2m) or ray index in [0,2m)
};

/// Throws std::invalid_argument for the zero vector.
ConeLocation cone_of(const UnitBall& ball, const Vec& v);

/// Gauge value of v: 0 for the zero vector, otherwise alpha+beta where
/// v = alpha*b_k + beta*b_{k+1} with alpha, beta >= 0.
Rat norm_of(const UnitBall& ball, const Vec& v);

inline Rat distance(const UnitBall& ball, const Point& p, const Point& q) {
  return norm_of(ball, q - p);
}

/// The interval I(p,q): all points on some shortest path between p and q.
/// Degenerate when pq is a legal segment (the segment itself), otherwise
/// the parallelogram C_k(p) cap -C_k(q).
struct Interval {
  Point p, q;
  bool degenerate = false;
  int cone = 0;                  // valid iff !degenerate
  std::array<Point, 4> corners;  // p, p+alpha*b_k, q, p+beta*b_{k+1}; valid iff !degenerate
};

Interval interval(const UnitBall& ball, const Point& p, const Point& q);

/// Exact membership z in I(p,q), via the cone description. Agrees with the
/// metric characterization d(p,z)+d(z,q) = d(p,q).
bool in_interval(const UnitBall& ball, const Point& p, const Point& q, const Point& z);

/// Direction indices k in [0,m) such that every shortest path between p and
/// q uses only k- and (k+1)-segments. One index for pairs strictly inside a
/// cone; two for pairs on an extremal line. Throws std::invalid_argument
/// for coincident points.
std::vector<int> classify_pair(const UnitBall& ball, const Point& p, const Point& q);

/// Segment parallel to the extremal line l_dir, with a != b.
struct LegalSegment {
  Point a, b;
  int dir = 0;  // in [0,m)
};

/// Direction index j in [0,m) if b-a is parallel to l_j, nullopt otherwise.
std::optional<int> legal_dir(const UnitBall& ball, const Point& a, const Point& b);

LegalSegment make_segment(const UnitBall& ball, const Point& a, const Point& b);

/// True iff the path attains the gauge distance between its endpoints.
/// Decided by the monotonicity criterion: all edges are k/(k+1)-segments
/// for the endpoint pair's cone and advance weakly in both frame
/// coordinates. Throws std::invalid_argument on empty/degenerate edges and
/// edges parallel to no extremal line (IllegalEdge).
bool is_shortest_legal_path(const UnitBall& ball, std::span<const Point> path);

/// Oblique coordinate frame of direction k: coordinates (alpha, beta) in
/// the basis (b_k, b_{k+1}). k-segments are frame-horizontal and
/// (k+1)-segments frame-vertical; lengths of legal segments equal the
/// absolute coordinate difference.
class Frame {
 public:
  Frame(const UnitBall& ball, int k)
      : u_(ball.vertex(k)), v_(ball.vertex(k + 1)), det_(cross(u_, v_)) {}

  Point to_frame(const Point& p) const {
    return {cross(p, v_) / det_, cross(u_, p) / det_};
  }
  Point to_world(const Point& f) const {
    return {f.x * u_.x + f.y * v_.x, f.x * u_.y + f.y * v_.y};
  }

 private:
  Point u_, v_;
  Rat det_;
};

}  // namespace bmmn
