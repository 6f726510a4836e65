#pragma once

#include <vector>

#include "selboost/rng.hpp"
#include "selboost/types.hpp"

namespace selboost {

/// Gradient-based one-side sample for one boosting iteration.
///
/// `top_idx` (A) holds the ceil(a*n) samples of largest gradient magnitude
/// (ties by ascending index); `rest_idx` (B) holds ceil(b*n) samples drawn
/// uniformly without replacement from the complement of A, capped at the
/// complement size. Gradient sums over B are scaled by weight = (1-a)/b so
/// the weighted sums estimate full-data sums without bias; with a = 1 the
/// sample is the whole dataset and the weight is 1. Both index sets are
/// ascending.
struct GossSample {
  std::vector<int> top_idx;
  std::vector<int> rest_idx;
  double weight = 1.0;
};

/// Draw a GOSS sample. Multi-column gradients are ranked by the per-row L1
/// norm. Requires 0 < a <= 1, 0 <= b < 1, a + b <= 1, and b > 0 exactly when
/// a < 1.
GossSample goss_sample(const MatrixRd& g, double a, double b, Rng& rng);

/// Estimated variance gain of a split:
///   (1/n) * (left_gsum^2 / left_count + right_gsum^2 / right_count)
/// where the sums and counts are GOSS-weighted (B members contribute with
/// weight (1-a)/b) and n is the weighted size of the node being split.
double estimated_variance_gain(double left_gsum, double right_gsum,
                               double left_count, double right_count, double n);

}  // namespace selboost
