#include "lanegraph/path_repr.h"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

#include "lanegraph/errors.h"

namespace lanegraph {
namespace {

// Bernstein basis values B_{degree, j}(t) for j = 0..degree.
void bernstein_row(double t, std::size_t degree, std::span<double> out) {
  for (std::size_t j = 0; j <= degree; ++j) {
    out[j] = binomial(degree, j) * std::pow(t, static_cast<double>(j)) *
             std::pow(1.0 - t, static_cast<double>(degree - j));
  }
}

Point2 evaluate(std::span<const Point2> ctrl, double t) {
  if (ctrl.empty()) return {};
  std::vector<double> w(ctrl.size());
  bernstein_row(t, ctrl.size() - 1, w);
  Point2 p;
  for (std::size_t j = 0; j < ctrl.size(); ++j) {
    p.x += w[j] * ctrl[j].x;
    p.y += w[j] * ctrl[j].y;
  }
  return p;
}

// Control points of the derivative curve (the hodograph).
std::vector<Point2> hodograph(std::span<const Point2> ctrl) {
  std::vector<Point2> d;
  if (ctrl.size() < 2) return d;
  const double n = static_cast<double>(ctrl.size() - 1);
  for (std::size_t j = 0; j + 1 < ctrl.size(); ++j) d.push_back(n * (ctrl[j + 1] - ctrl[j]));
  return d;
}

void check_t(double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw InvalidArgument("Bezier parameter outside [0, 1]: " + std::to_string(t));
}

// Solves for the interior control points with t fixed. Returns false when the
// system is rank deficient.
bool solve_interior(std::span<const Point2> pts, std::span<const double> t, std::size_t n_b,
                    std::vector<Point2>& ctrl) {
  const std::size_t k = pts.size();
  const std::size_t unknowns = n_b - 2;
  ctrl.assign(n_b, Point2{});
  ctrl.front() = pts.front();
  ctrl.back() = pts.back();
  if (unknowns == 0) return true;

  Eigen::MatrixXd a(k, unknowns);
  Eigen::MatrixXd rhs(k, 2);
  std::vector<double> w(n_b);
  for (std::size_t r = 0; r < k; ++r) {
    bernstein_row(t[r], n_b - 1, w);
    for (std::size_t j = 0; j < unknowns; ++j) a(r, j) = w[j + 1];
    rhs(r, 0) = pts[r].x - w.front() * ctrl.front().x - w.back() * ctrl.back().x;
    rhs(r, 1) = pts[r].y - w.front() * ctrl.front().y - w.back() * ctrl.back().y;
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(a);
  if (qr.rank() < static_cast<Eigen::Index>(unknowns)) return false;
  const Eigen::MatrixXd x = qr.solve(rhs);
  for (std::size_t j = 0; j < unknowns; ++j) ctrl[j + 1] = {x(j, 0), x(j, 1)};
  return true;
}

double max_residual(std::span<const Point2> pts, std::span<const double> t, std::span<const Point2> ctrl) {
  double worst = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) worst = std::max(worst, distance(evaluate(ctrl, t[i]), pts[i]));
  return worst;
}

double squared_error(std::span<const Point2> pts, std::span<const double> t, std::span<const Point2> ctrl) {
  double sum = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Point2 d = evaluate(ctrl, t[i]) - pts[i];
    sum += d.x * d.x + d.y * d.y;
  }
  return sum;
}

// Levenberg-Marquardt over the interior control points and interior
// parameters together. Endpoints stay clamped.
void refine_jointly(std::span<const Point2> pts, std::vector<double>& t, std::vector<Point2>& ctrl, double& error,
                    int iterations) {
  const std::size_t m = pts.size();
  const std::size_t nb = ctrl.size();
  if (m < 3) return;
  const std::size_t nc = nb - 2;
  const std::size_t nt = m - 2;
  const Eigen::Index cols = static_cast<Eigen::Index>(2 * nc + nt);
  const Eigen::Index rows = static_cast<Eigen::Index>(2 * nt);
  std::vector<double> w(nb);
  double lambda = 1e-3;
  for (int iter = 0; iter < iterations && error > 0.0; ++iter) {
    const std::vector<Point2> d1 = hodograph(ctrl);
    Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(rows, cols);
    Eigen::VectorXd res(rows);
    for (std::size_t i = 0; i < nt; ++i) {
      const double ti = t[i + 1];
      bernstein_row(ti, nb - 1, w);
      const Point2 r = evaluate(ctrl, ti) - pts[i + 1];
      const Point2 v = evaluate(d1, ti);
      const auto rx = static_cast<Eigen::Index>(2 * i);
      res(rx) = r.x;
      res(rx + 1) = r.y;
      for (std::size_t j = 0; j < nc; ++j) {
        jac(rx, static_cast<Eigen::Index>(2 * j)) = w[j + 1];
        jac(rx + 1, static_cast<Eigen::Index>(2 * j + 1)) = w[j + 1];
      }
      jac(rx, static_cast<Eigen::Index>(2 * nc + i)) = v.x;
      jac(rx + 1, static_cast<Eigen::Index>(2 * nc + i)) = v.y;
    }
    const Eigen::MatrixXd jtj = jac.transpose() * jac;
    const Eigen::VectorXd jtr = jac.transpose() * res;
    bool improved = false;
    while (lambda < 1e12) {
      Eigen::MatrixXd damped = jtj;
      damped.diagonal() += lambda * (jtj.diagonal().array() + 1e-12).matrix();
      const Eigen::VectorXd step = damped.ldlt().solve(-jtr);
      std::vector<Point2> c2 = ctrl;
      std::vector<double> t2 = t;
      for (std::size_t j = 0; j < nc; ++j) {
        c2[j + 1].x += step(static_cast<Eigen::Index>(2 * j));
        c2[j + 1].y += step(static_cast<Eigen::Index>(2 * j + 1));
      }
      for (std::size_t i = 0; i < nt; ++i)
        t2[i + 1] = std::clamp(t2[i + 1] + step(static_cast<Eigen::Index>(2 * nc + i)), 0.0, 1.0);
      const double e2 = squared_error(pts, t2, c2);
      if (e2 < error) {
        ctrl = std::move(c2);
        t = std::move(t2);
        const double gain = error - e2;
        error = e2;
        lambda = std::max(lambda * 0.1, 1e-15);
        improved = gain > error * 1e-15;
        break;
      }
      lambda *= 10.0;
    }
    if (!improved) break;
  }
}

}  // namespace

Polyline::Polyline(std::vector<Point2> points) : points_(std::move(points)) {
  if (points_.size() < 2) throw GeometryError("a polyline needs at least two points");
  for (std::size_t i = 1; i < points_.size(); ++i) {
    if (points_[i] == points_[i - 1])
      throw GeometryError("zero-length polyline segment at point " + std::to_string(i));
  }
  for (const Point2& p : points_) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) throw GeometryError("non-finite polyline point");
  }
}

BezierPath::BezierPath(std::vector<Point2> control_points) : control_points_(std::move(control_points)) {
  if (control_points_.size() < 2) throw GeometryError("a Bezier path needs at least two control points");
  if (control_points_.size() > kMaxBezierControlPoints)
    throw InvalidArgument("at most " + std::to_string(kMaxBezierControlPoints) + " Bezier control points");
}

double path_length(const Polyline& polyline) { return polyline.length(); }

Polyline resample_polyline(const Polyline& polyline, std::size_t n) {
  if (n < 2) throw InvalidArgument("resampling needs n >= 2");
  const auto& pts = polyline.points();
  const double total = polyline.length();
  if (!(total > 0.0)) throw GeometryError("cannot resample a zero-length polyline");

  std::vector<Point2> out;
  out.reserve(n);
  out.push_back(pts.front());
  std::size_t seg = 0;
  double seg_start = 0.0;
  double seg_len = distance(pts[0], pts[1]);
  for (std::size_t k = 1; k + 1 < n; ++k) {
    const double target = total * static_cast<double>(k) / static_cast<double>(n - 1);
    while (seg + 2 < pts.size() && seg_start + seg_len < target) {
      seg_start += seg_len;
      ++seg;
      seg_len = distance(pts[seg], pts[seg + 1]);
    }
    const double s = seg_len > 0.0 ? std::clamp((target - seg_start) / seg_len, 0.0, 1.0) : 0.0;
    const Point2 a = pts[seg];
    const Point2 b = pts[seg + 1];
    out.push_back({a.x + (b.x - a.x) * s, a.y + (b.y - a.y) * s});
  }
  out.push_back(pts.back());
  return Polyline(std::move(out));
}

double binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0.0;
  k = std::min(k, n - k);
  double c = 1.0;
  for (std::size_t i = 1; i <= k; ++i) c = c * static_cast<double>(n - k + i) / static_cast<double>(i);
  return std::round(c);
}

WeightMatrix bezier_weight_matrix(std::span<const double> t_values, std::size_t n_b) {
  if (n_b < 2) throw InvalidArgument("Bezier weight matrix needs n_b >= 2");
  if (n_b > kMaxBezierControlPoints)
    throw InvalidArgument("at most " + std::to_string(kMaxBezierControlPoints) + " Bezier control points");
  WeightMatrix m;
  m.rows = t_values.size();
  m.cols = n_b;
  m.entries.resize(m.rows * m.cols);
  m.t_values.assign(t_values.begin(), t_values.end());
  for (std::size_t k = 0; k < m.rows; ++k) {
    check_t(t_values[k]);
    bernstein_row(t_values[k], n_b - 1, std::span<double>(m.entries).subspan(k * n_b, n_b));
  }
  return m;
}

std::vector<Point2> bezier_sample(const BezierPath& curve, std::span<const double> t_values) {
  const auto& ctrl = curve.control_points();
  const WeightMatrix w = bezier_weight_matrix(t_values, ctrl.size());
  std::vector<Point2> out(w.rows);
  for (std::size_t k = 0; k < w.rows; ++k) {
    // Endpoints are copied rather than summed so t in {0, 1} is exact.
    if (t_values[k] == 0.0) {
      out[k] = ctrl.front();
      continue;
    }
    if (t_values[k] == 1.0) {
      out[k] = ctrl.back();
      continue;
    }
    Point2 p;
    for (std::size_t j = 0; j < w.cols; ++j) {
      p.x += w(k, j) * ctrl[j].x;
      p.y += w(k, j) * ctrl[j].y;
    }
    out[k] = p;
  }
  return out;
}

std::vector<double> uniform_parameters(std::size_t k) {
  std::vector<double> t(k, 0.0);
  if (k == 1) return t;
  for (std::size_t i = 0; i < k; ++i) t[i] = static_cast<double>(i) / static_cast<double>(k - 1);
  if (k > 1) t.back() = 1.0;
  return t;
}

std::vector<double> chord_length_parameters(std::span<const Point2> points) {
  std::vector<double> t(points.size(), 0.0);
  for (std::size_t i = 1; i < points.size(); ++i) t[i] = t[i - 1] + distance(points[i - 1], points[i]);
  const double total = points.empty() ? 0.0 : t.back();
  if (!(total > 0.0)) throw GeometryError("chord-length parameters need a non-degenerate polyline");
  for (double& v : t) v /= total;
  t.back() = 1.0;
  return t;
}

namespace {

struct FitState {
  std::vector<double> t;
  std::vector<Point2> ctrl;
  double error = 0.0;
  int iterations = 0;
};

bool fit_from(std::span<const Point2> pts, std::vector<double> t, std::size_t n_b, const BezierFitOptions& options,
              FitState& out) {
  std::vector<Point2> ctrl;
  if (!solve_interior(pts, t, n_b, ctrl)) return false;
  double error = squared_error(pts, t, ctrl);

  int iter = 0;
  for (; iter < options.max_reparam_iterations && error > 0.0; ++iter) {
    // One Newton step per interior point on |B(t) - p|^2.
    const std::vector<Point2> d1 = hodograph(ctrl);
    const std::vector<Point2> d2 = hodograph(d1);
    std::vector<double> next = t;
    double max_step = 0.0;
    for (std::size_t i = 1; i + 1 < pts.size(); ++i) {
      const Point2 diff = evaluate(ctrl, t[i]) - pts[i];
      const Point2 v1 = evaluate(d1, t[i]);
      const Point2 v2 = d2.empty() ? Point2{} : evaluate(d2, t[i]);
      const double num = diff.x * v1.x + diff.y * v1.y;
      const double den = v1.x * v1.x + v1.y * v1.y + diff.x * v2.x + diff.y * v2.y;
      if (!(std::abs(den) > 0.0)) continue;
      next[i] = std::clamp(t[i] - num / den, 0.0, 1.0);
      max_step = std::max(max_step, std::abs(next[i] - t[i]));
    }
    std::vector<Point2> candidate;
    if (!solve_interior(pts, next, n_b, candidate)) break;
    const double cand_error = squared_error(pts, next, candidate);
    if (!(cand_error < error)) break;
    t = std::move(next);
    ctrl = std::move(candidate);
    error = cand_error;
    if (max_step < options.tolerance) break;
  }
  if (options.max_reparam_iterations > 0) refine_jointly(pts, t, ctrl, error, options.max_reparam_iterations);
  out = FitState{std::move(t), std::move(ctrl), error, iter};
  return true;
}

// Accumulated |p_i - p_{i-1}|^alpha, scaled to [0, 1].
std::vector<double> power_parameters(std::span<const Point2> pts, double alpha) {
  std::vector<double> t(pts.size(), 0.0);
  for (std::size_t i = 1; i < pts.size(); ++i) t[i] = t[i - 1] + std::pow(distance(pts[i - 1], pts[i]), alpha);
  for (double& v : t) v /= t.back();
  t.back() = 1.0;
  return t;
}

}  // namespace

BezierFit fit_bezier_detailed(const Polyline& polyline, std::size_t n_b, const BezierFitOptions& options) {
  if (n_b < 2) throw InvalidArgument("Bezier fit needs n_b >= 2");
  if (n_b > kMaxBezierControlPoints)
    throw InvalidArgument("at most " + std::to_string(kMaxBezierControlPoints) + " Bezier control points");
  const auto& pts = polyline.points();
  if (pts.size() < n_b) throw InvalidArgument("Bezier fit needs at least n_b polyline points");

  // Chord-length start, plus centripetal and uniform starts when refining.
  std::vector<std::vector<double>> starts = {chord_length_parameters(pts)};
  if (options.max_reparam_iterations > 0) {
    starts.push_back(power_parameters(pts, 0.5));
    starts.push_back(uniform_parameters(pts.size()));
  }
  std::optional<FitState> best;
  for (auto& t0 : starts) {
    FitState state;
    if (!fit_from(pts, std::move(t0), n_b, options, state)) continue;
    if (!best || state.error < best->error) best = std::move(state);
  }
  if (!best) throw GeometryError("rank-deficient Bezier fit");
  const double residual = max_residual(pts, best->t, best->ctrl);
  return BezierFit{BezierPath(std::move(best->ctrl)), std::move(best->t), residual, best->iterations};
}

BezierPath fit_bezier(const Polyline& polyline, std::size_t n_b) {
  return fit_bezier_detailed(polyline, n_b).curve;
}

Point2 normalize_to_range(Point2 p, const Box& range) {
  return {(p.x - range.x_min) / (range.x_max - range.x_min), (p.y - range.y_min) / (range.y_max - range.y_min)};
}

Point2 denormalize_from_range(Point2 p, const Box& range) {
  return {range.x_min + p.x * (range.x_max - range.x_min), range.y_min + p.y * (range.y_max - range.y_min)};
}

}  // namespace lanegraph
