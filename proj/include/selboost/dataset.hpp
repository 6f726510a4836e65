#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "selboost/types.hpp"

namespace selboost {

/// In-memory feature matrix with dense integer class labels.
///
/// Labels are interned to [0, C): string labels in order of first appearance,
/// all-integer labels in ascending numeric order. Every class appears at
/// least once and every feature value is finite.
struct Dataset {
  MatrixRd features;                       // n x s, row per sample
  VectorXi labels;                         // length n, values in [0, C)
  std::vector<std::string> feature_names;  // length s, unique
  std::vector<std::string> class_names;    // length C

  int n() const { return static_cast<int>(features.rows()); }
  int s() const { return static_cast<int>(features.cols()); }
  int num_classes() const { return static_cast<int>(class_names.size()); }

  /// Per-class sample counts, length C.
  std::vector<int> class_counts() const;

  /// Throws data_error if any invariant fails.
  void validate() const;
};

/// Disjoint train/valid/test index partition of {0..n-1}.
struct SplitPlan {
  std::vector<int> train_idx;
  std::vector<int> valid_idx;
  std::vector<int> test_idx;
  std::uint64_t seed = 0;
};

/// k-fold partition: every index lands in exactly one fold's test set.
struct FoldPlan {
  int k = 0;
  std::vector<std::vector<int>> fold_test_sets;
  std::uint64_t seed = 0;
};

/// Parse a header-mandatory, comma-separated, unquoted numeric CSV.
/// `label_column` names the label; all other columns are features.
Dataset load_csv(const std::string& path, const std::string& label_column);

/// Build a Dataset from rows already in memory; validates invariants.
Dataset make_dataset(MatrixRd features, VectorXi labels,
                     std::vector<std::string> feature_names,
                     std::vector<std::string> class_names);

/// Seeded stratified split. Within each class, indices are shuffled by the
/// substream derive(derive(seed, kSplit), class) and cut at largest-remainder
/// quota boundaries for the three ratios. Index sets are returned ascending.
SplitPlan stratified_split(const Dataset& dataset, const double (&ratios)[3],
                           std::uint64_t seed);

/// Seeded stratified k-fold plan: per-class shuffle with the substream
/// derive(derive(seed, kFold), class), then round-robin assignment
/// (shuffled position i goes to fold i mod k). Fold sets are ascending.
FoldPlan stratified_kfold(const Dataset& dataset, int k, std::uint64_t seed);

/// Rows of `dataset` restricted to `idx`, preserving order of `idx`.
Dataset take_rows(const Dataset& dataset, const std::vector<int>& idx);

/// Write `dataset` in the CSV layout load_csv reads (features then label).
void save_csv(const Dataset& dataset, const std::string& path,
              const std::string& label_column);

}  // namespace selboost
