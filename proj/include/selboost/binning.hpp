#pragma once

#include <vector>

#include "selboost/dataset.hpp"

namespace selboost {

/// Histogram discretization of one feature column.
///
/// Bins are ordered by value. `upper_edges[i]` is the inclusive upper edge of
/// bin i (the last edge is +inf), so bin(x) is the first i with
/// x <= upper_edges[i], which is monotone in x. When the column contains the
/// value 0, that value gets a bin of its own (`zero_bin`), which is what lets
/// feature bundling treat zero as the implicit default.
struct FeatureBins {
  VectorXd upper_edges;
  int zero_bin = -1;  // bin holding exactly the value 0, or -1

  int num_bins() const { return static_cast<int>(upper_edges.size()); }
};

/// Pre-bundling binned view of a dataset: raw bin codes plus per-column edges.
struct BinnedMatrix {
  MatrixRi bins;  // n x s, bins(i, j) in [0, columns[j].num_bins())
  std::vector<FeatureBins> columns;
};

/// Bin index of `x` under `col` (first edge >= x).
int bin_of(const FeatureBins& col, double x);

/// Quantile binning: cut points at equally spaced positions over the sorted
/// distinct values, at most `max_bin` bins per column (columns with few
/// distinct values get one bin per value; constant columns get one bin).
BinnedMatrix bin_features(const Dataset& dataset, int max_bin);

/// Binning of a single column, exposed for tests and incremental use.
FeatureBins bin_column(const VectorXd& values, int max_bin);

}  // namespace selboost
