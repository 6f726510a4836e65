#pragma once

#include <utility>
#include <vector>

#include "selboost/binning.hpp"

namespace selboost {

/// Where a feature lives inside the bundled matrix.
struct FeatureSlot {
  int bundle = 0;
  int offset = 0;  // cell code = offset + 1 + bin when the feature is nonzero
};

/// Assignment of features to bundles plus the per-bundle code layout.
///
/// A bundled cell holds 0 when every member feature of the bundle is zero on
/// that row, and offset_f + 1 + bin_f(x) for the nonzero member f otherwise
/// (when conflicts are allowed, the member latest in bundle order wins).
struct BundleLayout {
  std::vector<FeatureSlot> feature_map;           // per original feature
  std::vector<std::vector<int>> bundle_features;  // per bundle, offset order
  std::vector<int> bundle_codes;                  // encoded values per bundle

  int num_bundles() const { return static_cast<int>(bundle_features.size()); }
};

/// Bundled view of a binned matrix.
struct BundledMatrix {
  MatrixRi values;  // n x num_bundles
  BundleLayout layout;
};

/// Greedy conflict-graph bundling. Features are visited by descending
/// nonzero count (ties by ascending index); each joins the first bundle
/// where the newly added conflicts (rows nonzero in both the feature and the
/// bundle so far) stay within max_conflict_rate * n, else opens a new bundle.
BundleLayout efb_plan(const BinnedMatrix& binned, double max_conflict_rate);

/// Trivial layout with one bundle per feature, in feature order (EFB off).
BundleLayout identity_plan(const BinnedMatrix& binned);

/// Encode the binned matrix under a layout.
BundledMatrix efb_encode(const BinnedMatrix& binned, const BundleLayout& layout);

/// Plan + encode in one step.
BundledMatrix efb_bundle(const BinnedMatrix& binned, double max_conflict_rate);

/// Feature and bin named by a bundle code d >= 1 (thresholds and nonzero
/// cells share this encoding).
std::pair<int, int> decode_code(const BundleLayout& layout,
                                const std::vector<FeatureBins>& columns,
                                int bundle, int code);

/// Bin of feature `f` on a row whose bundle cell is `cell`: the feature's own
/// bin when the cell encodes f, else the bin holding the value 0.
int decode_feature_bin(const BundleLayout& layout,
                       const std::vector<FeatureBins>& columns, int f,
                       int cell);

}  // namespace selboost
