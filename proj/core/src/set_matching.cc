#include "lanegraph/set_matching.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>

#include "lanegraph/errors.h"

namespace lanegraph {
namespace {

// Classic O(n^3) potentials method on a square matrix. Returns the column of
// every row and leaves the dual solution in u, v.
std::vector<int> solve_square(const std::vector<double>& c, std::size_t n, std::vector<double>& u,
                              std::vector<double>& v) {
  const double inf = std::numeric_limits<double>::infinity();
  u.assign(n + 1, 0.0);
  v.assign(n + 1, 0.0);
  std::vector<std::size_t> p(n + 1, 0);  // p[col] = row (1-based), 0 = free
  std::vector<std::size_t> way(n + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = p[j0];
      double delta = inf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = c[(i0 - 1) * n + (j - 1)] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<int> row_to_col(n, kUnassigned);
  for (std::size_t j = 1; j <= n; ++j)
    if (p[j] != 0) row_to_col[p[j] - 1] = static_cast<int>(j - 1);
  return row_to_col;
}

// Rewrites an optimal assignment into the lexicographically smallest optimal
// one. Optimal assignments are exactly the perfect matchings on edges that are
// tight under the dual solution, so each row greedily takes the smallest tight
// column that still admits a completion of the remaining rows.
void lexicographic_refine(const std::vector<double>& c, std::size_t n, const std::vector<double>& u,
                          const std::vector<double>& v, std::vector<int>& row_to_col) {
  double scale = 1.0;
  for (double x : c) scale = std::max(scale, std::abs(x));
  const double tol = 1e-9 * scale;
  auto tight = [&](std::size_t i, std::size_t j) {
    return std::abs(c[i * n + j] - u[i + 1] - v[j + 1]) <= tol;
  };

  std::vector<int> col_to_row(n, kUnassigned);
  for (std::size_t i = 0; i < n; ++i) col_to_row[static_cast<std::size_t>(row_to_col[i])] = static_cast<int>(i);

  std::vector<char> visited(n);
  // Augmenting path from `row` to `target` column over tight edges, rows > fixed.
  std::function<bool(std::size_t, std::size_t, std::size_t)> reroute = [&](std::size_t row, std::size_t target,
                                                                           std::size_t fixed) -> bool {
    for (std::size_t j = 0; j < n; ++j) {
      if (visited[j] || !tight(row, j)) continue;
      visited[j] = 1;
      if (j == target) {
        row_to_col[row] = static_cast<int>(j);
        col_to_row[j] = static_cast<int>(row);
        return true;
      }
      const int other = col_to_row[j];
      if (other < 0 || static_cast<std::size_t>(other) <= fixed) continue;
      if (reroute(static_cast<std::size_t>(other), target, fixed)) {
        row_to_col[row] = static_cast<int>(j);
        col_to_row[j] = static_cast<int>(row);
        return true;
      }
    }
    return false;
  };

  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t current = static_cast<std::size_t>(row_to_col[i]);
    for (std::size_t j = 0; j < current; ++j) {
      if (!tight(i, j)) continue;
      const int holder = col_to_row[j];
      if (holder < 0 || static_cast<std::size_t>(holder) < i) continue;
      // Move i -> j; the previous holder of j must reach i's old column.
      const std::vector<int> saved_rows = row_to_col;
      const std::vector<int> saved_cols = col_to_row;
      std::fill(visited.begin(), visited.end(), 0);
      for (std::size_t k = 0; k < n; ++k)
        if (col_to_row[k] >= 0 && static_cast<std::size_t>(col_to_row[k]) < i) visited[k] = 1;
      visited[j] = 1;
      row_to_col[i] = static_cast<int>(j);
      col_to_row[j] = static_cast<int>(i);
      col_to_row[current] = kUnassigned;
      if (reroute(static_cast<std::size_t>(holder), current, i)) break;
      row_to_col = saved_rows;
      col_to_row = saved_cols;
    }
  }
}

void check_shapes(std::span<const std::vector<Point2>> pred_paths, std::span<const double> pred_probs,
                  std::span<const std::vector<Point2>> gt_paths) {
  if (pred_probs.size() != pred_paths.size())
    throw InvalidArgument("one probability per predicted path is required");
  if (pred_paths.size() < gt_paths.size())
    throw InvalidArgument("fewer predictions (" + std::to_string(pred_paths.size()) + ") than ground truths (" +
                          std::to_string(gt_paths.size()) + ")");
  std::size_t n_v = 0;
  bool first = true;
  for (auto group : {pred_paths, gt_paths}) {
    for (const auto& path : group) {
      if (first) {
        n_v = path.size();
        first = false;
      } else if (path.size() != n_v) {
        throw InvalidArgument("all paths must be resampled to the same point count");
      }
    }
  }
}

double sign(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

}  // namespace

CostMatrix::CostMatrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows * cols) throw InvalidArgument("cost matrix data size does not match its shape");
}

Assignment hungarian(const CostMatrix& cost) {
  for (double x : cost.data())
    if (!std::isfinite(x)) throw InvalidArgument("cost matrix has a non-finite entry");
  Assignment result;
  if (cost.rows() == 0) return result;
  const std::size_t n = std::max(cost.rows(), cost.cols());
  std::vector<double> c(n * n, 0.0);
  for (std::size_t r = 0; r < cost.rows(); ++r)
    for (std::size_t k = 0; k < cost.cols(); ++k) c[r * n + k] = cost(r, k);

  std::vector<double> u;
  std::vector<double> v;
  std::vector<int> padded = solve_square(c, n, u, v);
  lexicographic_refine(c, n, u, v, padded);

  result.row_to_col.assign(cost.rows(), kUnassigned);
  for (std::size_t r = 0; r < cost.rows(); ++r) {
    const int col = padded[r];
    if (col >= 0 && static_cast<std::size_t>(col) < cost.cols()) {
      result.row_to_col[r] = col;
      result.cost += cost(r, static_cast<std::size_t>(col));
    }
  }
  return result;
}

double clamp_probability(double p) { return std::clamp(p, kProbabilityEps, 1.0 - kProbabilityEps); }

namespace {
void check_focal(const FocalParams& params) {
  if (!(params.alpha >= 0.0 && params.alpha <= 1.0)) throw InvalidArgument("focal alpha must lie in [0, 1]");
  if (!(params.gamma >= 0.0)) throw InvalidArgument("focal gamma must be non-negative");
}
}  // namespace

double focal_loss(double p, bool positive, const FocalParams& params) {
  check_focal(params);
  const double q = clamp_probability(p);
  if (positive) return -params.alpha * std::pow(1.0 - q, params.gamma) * std::log(q);
  return -(1.0 - params.alpha) * std::pow(q, params.gamma) * std::log(1.0 - q);
}

double focal_loss_derivative(double p, bool positive, const FocalParams& params) {
  check_focal(params);
  if (p < kProbabilityEps || p > 1.0 - kProbabilityEps) return 0.0;
  const double a = params.alpha;
  const double g = params.gamma;
  if (positive) {
    const double grow = g == 0.0 ? 0.0 : g * std::pow(1.0 - p, g - 1.0) * std::log(p);
    return a * grow - a * std::pow(1.0 - p, g) / p;
  }
  const double grow = g == 0.0 ? 0.0 : g * std::pow(p, g - 1.0) * std::log(1.0 - p);
  return -(1.0 - a) * (grow - std::pow(p, g) / (1.0 - p));
}

double l1_path_loss(std::span<const Point2> pred, std::span<const Point2> gt) {
  if (pred.size() != gt.size())
    throw InvalidArgument("L1 path loss needs equal point counts (" + std::to_string(pred.size()) + " vs " +
                          std::to_string(gt.size()) + ")");
  double sum = 0.0;
  for (std::size_t j = 0; j < pred.size(); ++j) sum += std::abs(pred[j].x - gt[j].x) + std::abs(pred[j].y - gt[j].y);
  return sum;
}

CostMatrix matching_cost_matrix(std::span<const std::vector<Point2>> pred_paths, std::span<const double> pred_probs,
                                std::span<const std::vector<Point2>> gt_paths, const LossConfig& config) {
  check_shapes(pred_paths, pred_probs, gt_paths);
  const std::size_t n = pred_paths.size();
  const std::size_t m = gt_paths.size();
  CostMatrix cost(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const double pos = config.weights.cls * focal_loss(pred_probs[i], true, config.focal);
    const double neg = config.weights.cls * focal_loss(pred_probs[i], false, config.focal);
    for (std::size_t j = 0; j < m; ++j)
      cost(i, j) = pos + config.weights.path * l1_path_loss(pred_paths[i], gt_paths[j]);
    for (std::size_t j = m; j < n; ++j) cost(i, j) = neg;
  }
  return cost;
}

LossBreakdown loss_for_assignment(std::span<const std::vector<Point2>> pred_paths, std::span<const double> pred_probs,
                                  std::span<const std::vector<Point2>> gt_paths, std::span<const int> assignment,
                                  const LossConfig& config) {
  check_shapes(pred_paths, pred_probs, gt_paths);
  if (assignment.size() != pred_paths.size()) throw InvalidArgument("assignment size must equal prediction count");
  LossBreakdown out;
  out.assignment.assign(assignment.begin(), assignment.end());
  for (std::size_t i = 0; i < pred_paths.size(); ++i) {
    const int g = assignment[i];
    const bool matched = g != kUnassigned;
    out.cls_term += config.weights.cls * focal_loss(pred_probs[i], matched, config.focal);
    if (matched) {
      if (g < 0 || static_cast<std::size_t>(g) >= gt_paths.size()) throw InvalidArgument("assignment out of range");
      out.path_term += config.weights.path * l1_path_loss(pred_paths[i], gt_paths[static_cast<std::size_t>(g)]);
    }
  }
  out.total = out.cls_term + out.path_term;
  return out;
}

namespace {
std::vector<int> optimal_assignment(std::span<const std::vector<Point2>> pred_paths, std::span<const double> pred_probs,
                                    std::span<const std::vector<Point2>> gt_paths, const LossConfig& config) {
  const Assignment a = hungarian(matching_cost_matrix(pred_paths, pred_probs, gt_paths, config));
  std::vector<int> result = a.row_to_col;
  for (int& col : result)
    if (col >= static_cast<int>(gt_paths.size())) col = kUnassigned;
  return result;
}
}  // namespace

LossBreakdown bipartite_match_loss(std::span<const std::vector<Point2>> pred_paths,
                                   std::span<const double> pred_probs,
                                   std::span<const std::vector<Point2>> gt_paths, const LossConfig& config) {
  const std::vector<int> assignment = optimal_assignment(pred_paths, pred_probs, gt_paths, config);
  return loss_for_assignment(pred_paths, pred_probs, gt_paths, assignment, config);
}

LossGradients loss_gradients(std::span<const std::vector<Point2>> pred_paths, std::span<const double> pred_probs,
                             std::span<const std::vector<Point2>> gt_paths, const LossConfig& config) {
  LossGradients grad;
  grad.assignment = optimal_assignment(pred_paths, pred_probs, gt_paths, config);
  grad.points.resize(pred_paths.size());
  grad.probs.resize(pred_paths.size());
  for (std::size_t i = 0; i < pred_paths.size(); ++i) {
    const int g = grad.assignment[i];
    grad.points[i].assign(pred_paths[i].size(), Point2{});
    grad.probs[i] = config.weights.cls * focal_loss_derivative(pred_probs[i], g != kUnassigned, config.focal);
    if (g == kUnassigned) continue;
    const auto& target = gt_paths[static_cast<std::size_t>(g)];
    for (std::size_t j = 0; j < target.size(); ++j) {
      const double dx = pred_paths[i][j].x - target[j].x;
      const double dy = pred_paths[i][j].y - target[j].y;
      if (dx == 0.0 || dy == 0.0) grad.subgradient = true;
      grad.points[i][j] = {config.weights.path * sign(dx), config.weights.path * sign(dy)};
    }
  }
  return grad;
}

}  // namespace lanegraph
