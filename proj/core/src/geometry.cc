#include "lanegraph/geometry.h"

#include <cmath>

namespace lanegraph {

int segment_split_count(double length, double spacing) {
  const double ratio = length / spacing;
  const int parts = static_cast<int>(std::ceil(ratio * (1.0 - 1e-9)));
  return parts < 1 ? 1 : parts;
}

double polyline_length(std::span<const Point2> points) {
  double total = 0.0;
  for (std::size_t i = 1; i < points.size(); ++i) total += distance(points[i - 1], points[i]);
  return total;
}

}  // namespace lanegraph
