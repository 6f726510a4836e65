#pragma once

#include <optional>
#include <vector>

#include "selboost/efb.hpp"
#include "selboost/goss.hpp"

namespace selboost {

/// Damping added to the hessian sum in leaf values.
inline constexpr double kLeafLambda = 1e-3;

/// Regression tree over bundled bins. Node 0 is the root; a node is a leaf
/// iff left < 0. Internal nodes route on the original feature named by
/// (split_bundle, split_code): rows whose decoded bin is <= the decoded
/// threshold bin go left.
struct TreeNode {
  int split_bundle = -1;
  int split_code = -1;
  int left = -1;
  int right = -1;
  double leaf_value = 0.0;

  bool is_leaf() const { return left < 0; }
};

struct Tree {
  std::vector<TreeNode> nodes;

  int num_leaves() const;
};

/// One histogram slot: GOSS-weighted gradient/hessian/count sums plus the
/// raw sample count.
struct HistEntry {
  double g = 0.0;
  double h = 0.0;
  double w = 0.0;
  int count = 0;
};

using NodeStats = HistEntry;

struct GrowParams {
  int num_leaves = 31;
  int max_depth = 0;  // <= 0 means unlimited
  int min_samples_leaf = 1;
  double min_split_gain = 0.0;
};

struct SplitChoice {
  int bundle = -1;
  int code = -1;     // stored threshold: offset_f + 1 + feature_bin
  int feature = -1;  // decoded threshold, used for tie-breaking
  int feature_bin = -1;
  double gain = 0.0;  // variance-gain improvement over the parent term
};

/// Histogram of one bundle over `rows`, accumulated in row order. `weight`
/// maps a global row to its GOSS weight.
std::vector<HistEntry> build_histogram(const BundledMatrix& bundled, int bundle,
                                       const std::vector<int>& rows,
                                       const VectorXd& g, const VectorXd& h,
                                       const VectorXd& weight);

/// Best admissible split over all bundles and thresholds, scanning each
/// original feature's bins in value order (a feature's zero-bin statistics
/// are reconstructed as parent minus its nonzero slots). Returns nothing when
/// no threshold beats min_split_gain with both children holding at least
/// min_samples_leaf raw samples. Equal gains resolve to the lower
/// (feature, bin) pair.
std::optional<SplitChoice> find_best_split(
    const std::vector<std::vector<HistEntry>>& histograms,
    const NodeStats& parent, const BundleLayout& layout,
    const std::vector<FeatureBins>& columns, const GrowParams& params);

/// Best-first growth: repeatedly split the leaf with the largest gain until
/// num_leaves is reached, max_depth binds, or no admissible split remains.
/// Leaf value = -(weighted g sum) / (weighted h sum + kLeafLambda).
Tree grow_tree_leafwise(const BinnedMatrix& binned, const BundledMatrix& bundled,
                        const VectorXd& g, const VectorXd& h,
                        const GossSample& sample, const GrowParams& params);

/// Tree output for a training row, routed through the bundled matrix.
double tree_value_binned(const Tree& tree, const BundledMatrix& bundled,
                         const std::vector<FeatureBins>& columns, int row);

/// Tree output for a raw feature vector of length columns.size().
double tree_value_raw(const Tree& tree, const BundleLayout& layout,
                      const std::vector<FeatureBins>& columns, const double* x);

}  // namespace selboost
