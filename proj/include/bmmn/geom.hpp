#pragma once

#include "bmmn/rat.hpp"

#include <tuple>

namespace bmmn {

/// Exact rational planar point; doubles as a vector.
struct Point {
  Rat x, y;

  Point() = default;
  Point(Rat px, Rat py) : x(std::move(px)), y(std::move(py)) {}

  friend Point operator+(const Point& a, const Point& b) { return {a.x + b.x, a.y + b.y}; }
  friend Point operator-(const Point& a, const Point& b) { return {a.x - b.x, a.y - b.y}; }
  Point operator-() const { return {-x, -y}; }
  friend Point operator*(const Rat& s, const Point& p) { return {s * p.x, s * p.y}; }

  friend bool operator==(const Point& a, const Point& b) { return a.x == b.x && a.y == b.y; }
  friend bool operator!=(const Point& a, const Point& b) { return !(a == b); }
  // Lexicographic; used for deterministic ordering and dedup only.
  friend bool operator<(const Point& a, const Point& b) {
    if (a.x != b.x) return a.x < b.x;
    return a.y < b.y;
  }

  bool is_zero() const { return x.sign() == 0 && y.sign() == 0; }
  std::string str() const { return "(" + x.str() + "," + y.str() + ")"; }
};

using Vec = Point;

inline Rat cross(const Vec& a, const Vec& b) { return a.x * b.y - a.y * b.x; }
inline Rat dot(const Vec& a, const Vec& b) { return a.x * b.x + a.y * b.y; }

}  // namespace bmmn
