#pragma once

#include "bmmn/ball.hpp"

#include <map>
#include <memory>
#include <optional>
#include <vector>

namespace bmmn {

struct PathResult {
  Rat length;
  std::vector<Point> polyline;
};

struct VerifyFailure {
  int i, j;
  std::optional<Rat> best;  // nullopt when unreachable
  Rat required;
};

struct VerifyReport {
  bool ok = true;
  std::vector<VerifyFailure> failures;
};

/// A finite set of legal segments with a derived planar graph view:
/// vertices are segment endpoints, pairwise intersection points and
/// registered terminals; edges are the maximal sub-segments between
/// consecutive vertices, weighted by exact gauge length. Collinear
/// overlaps are merged, so lengths have union semantics.
class Network {
 public:
  explicit Network(UnitBall ball) : ball_(std::move(ball)) {}

  void add(const LegalSegment& s);
  void add_segment(const Point& a, const Point& b);  // infers the direction
  void merge(const Network& other);
  void register_terminal(const Point& t);

  const UnitBall& ball() const { return ball_; }
  const std::vector<LegalSegment>& segments() const { return segments_; }
  bool empty() const { return segments_.empty(); }

  /// Total length, counting collinear overlaps once.
  Rat length() const;

  /// Maximal merged sub-segments (the union geometry).
  std::vector<LegalSegment> merged_segments() const;

  /// Exact minimum-length path in the planarized graph; nullopt when p and
  /// q are in different components. p and q must be graph vertices
  /// (register terminals before querying).
  std::optional<PathResult> shortest_path(const Point& p, const Point& q) const;

  /// Checks that every terminal pair is connected by a path of length
  /// exactly equal to its gauge distance.
  VerifyReport verify_manhattan(const std::vector<Point>& terminals) const;

 private:
  struct Graph;
  const Graph& graph() const;

  UnitBall ball_;
  std::vector<LegalSegment> segments_;
  std::vector<Point> terminals_;
  mutable std::shared_ptr<const Graph> cache_;
};

}  // namespace bmmn
