#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "lanegraph/geometry.h"

namespace lanegraph {

// Dense row-major cost matrix: rows are predictions, columns ground truths.
class CostMatrix {
 public:
  CostMatrix() = default;
  CostMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  CostMatrix(std::size_t rows, std::size_t cols, std::vector<double> data);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  const std::vector<double>& data() const { return data_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

inline constexpr int kUnassigned = -1;

struct Assignment {
  // Column per row, kUnassigned when the row is left out.
  std::vector<int> row_to_col;
  double cost = 0.0;
};

// Minimum-cost assignment. Rectangular inputs are padded with zero-cost dummy
// rows/columns; with rows >= cols every column is assigned. Among optimal
// assignments the lexicographically smallest row_to_col vector (over padded
// column indices) is returned. Throws InvalidArgument on non-finite entries.
Assignment hungarian(const CostMatrix& cost);

struct FocalParams {
  double alpha = 0.25;
  double gamma = 2.0;
};

inline constexpr double kProbabilityEps = 1e-7;

double clamp_probability(double p);

// Sigmoid focal loss on a clamped probability.
double focal_loss(double p, bool positive, const FocalParams& params = {});
// d focal_loss / dp; zero where the clamp is active.
double focal_loss_derivative(double p, bool positive, const FocalParams& params = {});

// Sum of per-point L1 distances. Throws InvalidArgument on a size mismatch.
double l1_path_loss(std::span<const Point2> pred, std::span<const Point2> gt);

struct LossWeights {
  double cls = 1.0;
  double path = 1.0;
};

struct LossConfig {
  FocalParams focal;
  LossWeights weights;
};

struct LossBreakdown {
  double total = 0.0;
  double cls_term = 0.0;
  double path_term = 0.0;
  // GT index per prediction, kUnassigned for the no-object class.
  std::vector<int> assignment;
};

// Matching cost of prediction i against GT j (focal positive term plus L1)
// and, in the padded no-object columns, the focal negative term. Minimizing
// this N x N matrix minimizes the loss itself.
CostMatrix matching_cost_matrix(std::span<const std::vector<Point2>> pred_paths, std::span<const double> pred_probs,
                                std::span<const std::vector<Point2>> gt_paths, const LossConfig& config = {});

// Set-prediction loss: Hungarian assignment, focal loss over every prediction
// (positive when matched), L1 over matched pairs only.
LossBreakdown bipartite_match_loss(std::span<const std::vector<Point2>> pred_paths,
                                   std::span<const double> pred_probs,
                                   std::span<const std::vector<Point2>> gt_paths, const LossConfig& config = {});

// Same loss with the assignment held fixed.
LossBreakdown loss_for_assignment(std::span<const std::vector<Point2>> pred_paths, std::span<const double> pred_probs,
                                  std::span<const std::vector<Point2>> gt_paths, std::span<const int> assignment,
                                  const LossConfig& config = {});

struct LossGradients {
  // d total / d point, same shape as the predictions.
  std::vector<std::vector<Point2>> points;
  std::vector<double> probs;
  // Some matched coordinate sat exactly on the |.| kink; sign(0) = 0 was used.
  bool subgradient = false;
  std::vector<int> assignment;
};

LossGradients loss_gradients(std::span<const std::vector<Point2>> pred_paths, std::span<const double> pred_probs,
                             std::span<const std::vector<Point2>> gt_paths, const LossConfig& config = {});

}  // namespace lanegraph
