#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "selboost/dataset.hpp"
#include "selboost/objective.hpp"
#include "selboost/tree.hpp"

namespace selboost {

struct BoosterConfig {
  int num_trees = 100;          // boosting iterations M
  double learning_rate = 0.1;   // shrinkage eta in (0, 1]
  int max_depth = 0;            // <= 0 means unlimited
  int num_leaves = 31;
  int min_samples_leaf = 1;
  double min_split_gain = 0.0;  // gamma
  double goss_top_rate = 1.0;   // a; 1.0 disables GOSS
  double goss_other_rate = 0.0; // b; 0.2/0.1 is the canonical enabled pair
  int max_bin = 255;
  double efb_max_conflict_rate = 0.0;
  bool use_efb = true;
  Objective objective = Objective::binary_logistic;
  int num_classes = 2;
  std::uint64_t seed = 0;

  /// Throws config_error on any domain violation.
  void validate() const;

  int trees_per_iteration() const {
    return objective == Objective::binary_logistic ? 1 : num_classes;
  }
};

/// Trained additive model. Trees are stored iteration-major (the C trees of
/// one softmax iteration are adjacent, ordered by class). Raw scores are
/// base_score + learning_rate * sum of tree outputs.
struct Ensemble {
  BoosterConfig config;
  std::vector<double> base_score;   // one per score column
  std::vector<Tree> trees;
  std::vector<FeatureBins> columns; // per trained feature
  BundleLayout layout;
  std::vector<std::string> feature_names;
  std::vector<std::string> class_names;
  std::vector<double> training_loss;  // per-iteration mean log-loss (not serialized)

  int num_features() const { return static_cast<int>(columns.size()); }
};

/// Fit an ensemble. Deterministic for a fixed (dataset, config): every
/// random draw comes from substreams of config.seed, and all floating-point
/// accumulation runs in a fixed serial order.
Ensemble train(const Dataset& dataset, const BoosterConfig& config);

struct Prediction {
  MatrixRd probabilities;  // n x C
  VectorXi classes;        // argmax, ties to the lowest class index
};

/// Raw ensemble scores for `features` (n x trained feature count).
MatrixRd predict_raw(const Ensemble& ensemble, const MatrixRd& features);

Prediction predict(const Ensemble& ensemble, const MatrixRd& features);

}  // namespace selboost
