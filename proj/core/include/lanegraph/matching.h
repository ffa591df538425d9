#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "lanegraph/geometry.h"

namespace lanegraph {

// Pairs closer than this are candidates. The comparison is strict with a 1e-9
// allowance so that a nominal distance of exactly `threshold` computed in
// floating point never qualifies.
bool is_candidate_distance(double d, double threshold);

struct IndexPair {
  std::size_t a = 0;
  std::size_t b = 0;
  double distance = 0.0;
};

// Candidate pairs (distance below threshold) found through a uniform grid.
// Sorted by (a, b).
std::vector<IndexPair> candidate_pairs(std::span<const Point2> a, std::span<const Point2> b, double threshold);

// One-to-one matching of maximum cardinality over the candidate pairs; among
// those, total distance is minimal, and among equal totals the sum of squared
// distances is minimal. Costs are compared exactly as integers: distance in
// micrometres and squared distance in units of 1e-4 m^2, both rounded to
// nearest. Successive shortest paths with potentials, run per connected
// component of the candidate graph in coordinate order, so the result depends
// on geometry only. Sorted by a.
std::vector<IndexPair> min_cost_max_matching(std::span<const Point2> a, std::span<const Point2> b, double threshold);

// Size of a maximum-cardinality matching over the candidate pairs.
std::size_t max_matching_size(std::span<const Point2> a, std::span<const Point2> b, double threshold);

}  // namespace lanegraph
