#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "lanegraph/geometry.h"

namespace lanegraph {

// Ordered points of one path. At least two points, no zero-length segments.
class Polyline {
 public:
  // Throws GeometryError when the invariants do not hold.
  explicit Polyline(std::vector<Point2> points);

  const std::vector<Point2>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  const Point2& operator[](std::size_t i) const { return points_[i]; }
  const Point2& front() const { return points_.front(); }
  const Point2& back() const { return points_.back(); }
  double length() const { return polyline_length(points_); }

  friend bool operator==(const Polyline&, const Polyline&) = default;

 private:
  std::vector<Point2> points_;
};

// Control points of a Bezier path, at least two and at most kMaxBezierControlPoints.
class BezierPath {
 public:
  explicit BezierPath(std::vector<Point2> control_points);

  const std::vector<Point2>& control_points() const { return control_points_; }
  std::size_t size() const { return control_points_.size(); }

 private:
  std::vector<Point2> control_points_;
};

inline constexpr std::size_t kMaxBezierControlPoints = 20;
inline constexpr std::size_t kDefaultPolylinePoints = 30;
inline constexpr std::size_t kDefaultBezierControlPoints = 5;

// Bernstein weights, K rows by N_b columns, row-major.
struct WeightMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> entries;
  std::vector<double> t_values;

  double operator()(std::size_t k, std::size_t j) const { return entries[k * cols + j]; }
};

double path_length(const Polyline& polyline);

// n points evenly spaced by arc length; the first and last input points are
// reproduced exactly.
Polyline resample_polyline(const Polyline& polyline, std::size_t n);

// Binomial coefficient C(n, k) by multiplicative recurrence.
double binomial(std::size_t n, std::size_t k);

WeightMatrix bezier_weight_matrix(std::span<const double> t_values, std::size_t n_b);

// Curve points as the product of the weight matrix and the control points.
std::vector<Point2> bezier_sample(const BezierPath& curve, std::span<const double> t_values);

// K parameters evenly spaced on [0, 1].
std::vector<double> uniform_parameters(std::size_t k);

// Cumulative chord length normalized to [0, 1].
std::vector<double> chord_length_parameters(std::span<const Point2> points);

struct BezierFit {
  BezierPath curve;
  // Parameter assigned to each input point after refinement.
  std::vector<double> t_values;
  // Largest distance between an input point and the curve at its parameter.
  double max_residual = 0.0;
  int iterations = 0;
};

struct BezierFitOptions {
  // Parameter-correction rounds after the chord-length start. 0 gives the
  // plain chord-length least-squares fit.
  int max_reparam_iterations = 100;
  double tolerance = 1e-12;
};

// Least-squares Bezier fit with the end control points clamped to the
// polyline endpoints. Tries chord-length, centripetal and uniform starting
// parameters, refines each by projecting points onto the curve and then by a
// joint Levenberg-Marquardt pass, and keeps the lowest error. Throws
// GeometryError on a rank-deficient system.
BezierFit fit_bezier_detailed(const Polyline& polyline, std::size_t n_b,
                              const BezierFitOptions& options = {});
BezierPath fit_bezier(const Polyline& polyline, std::size_t n_b);

// Min-max normalization of a point into [0, 1]^2 over the given range, and back.
Point2 normalize_to_range(Point2 p, const Box& range);
Point2 denormalize_from_range(Point2 p, const Box& range);

}  // namespace lanegraph
