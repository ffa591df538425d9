#pragma once

#include <cmath>
#include <span>
#include <vector>

namespace lanegraph {

// 2D point in the ego frame, meters.
struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2&, const Point2&) = default;
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator*(double s, Point2 p) { return {s * p.x, s * p.y}; }

inline double distance(Point2 a, Point2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

// Point at fraction k/n along segment a->b. Every module that splits a segment
// goes through this so that shared segments produce bit-identical vertices.
inline Point2 segment_point(Point2 a, Point2 b, int k, int n) {
  if (k == 0) return a;
  if (k == n) return b;
  const double s = static_cast<double>(k) / static_cast<double>(n);
  return {a.x + (b.x - a.x) * s, a.y + (b.y - a.y) * s};
}

// Number of equal parts a segment of `length` is split into so that no part
// exceeds `spacing`. Lengths within a relative 1e-9 of a multiple of the
// spacing are not split further (0.45 / 0.15 is 3, not 4).
int segment_split_count(double length, double spacing);

// Sum of Euclidean segment lengths. Fewer than two points yields 0.
double polyline_length(std::span<const Point2> points);

struct Box {
  double x_min = 0.0;
  double x_max = 0.0;
  double y_min = 0.0;
  double y_max = 0.0;

  bool contains(Point2 p) const {
    return p.x >= x_min && p.x <= x_max && p.y >= y_min && p.y <= y_max;
  }
};

}  // namespace lanegraph
