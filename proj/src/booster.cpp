#include "selboost/booster.hpp"

#include <cmath>

#include "selboost/errors.hpp"

namespace selboost {

void BoosterConfig::validate() const {
  if (num_trees < 1) throw config_error("number of trees must be at least 1");
  if (!(learning_rate > 0.0) || learning_rate > 1.0)
    throw config_error("learning rate must be in (0, 1]");
  if (num_leaves < 2) throw config_error("num_leaves must be at least 2");
  if (max_depth > 0 && max_depth < 31 && num_leaves > (1 << max_depth))
    throw config_error("num_leaves must be at most 2^max_depth");
  if (min_samples_leaf < 1)
    throw config_error("min_samples_leaf must be at least 1");
  if (min_split_gain < 0.0)
    throw config_error("min_split_gain must be non-negative");
  if (!(goss_top_rate > 0.0) || goss_top_rate > 1.0)
    throw config_error("goss top rate must be in (0, 1]");
  if (goss_other_rate < 0.0 || goss_other_rate >= 1.0)
    throw config_error("goss other rate must be in [0, 1)");
  if (goss_top_rate + goss_other_rate > 1.0)
    throw config_error("goss rates must satisfy a + b <= 1");
  if (goss_top_rate == 1.0 && goss_other_rate != 0.0)
    throw config_error("goss other rate must be 0 when the top rate is 1");
  if (goss_top_rate < 1.0 && goss_other_rate == 0.0)
    throw config_error("goss other rate must be positive when the top rate is below 1");
  if (max_bin < 2) throw config_error("max_bin must be at least 2");
  if (efb_max_conflict_rate < 0.0 || efb_max_conflict_rate > 1.0)
    throw config_error("efb conflict rate must be in [0, 1]");
  if (num_classes < 2) throw config_error("num_classes must be at least 2");
}

Ensemble train(const Dataset& dataset, const BoosterConfig& config) {
  config.validate();
  if (dataset.num_classes() != config.num_classes)
    throw config_error("config num_classes " + std::to_string(config.num_classes) +
                       " does not match dataset classes " +
                       std::to_string(dataset.num_classes()));
  if (config.objective == Objective::binary_logistic && config.num_classes != 2)
    throw config_error("binary objective requires exactly 2 classes");

  const int n = dataset.n();
  const int k = config.trees_per_iteration();

  Ensemble ens;
  ens.config = config;
  ens.feature_names = dataset.feature_names;
  ens.class_names = dataset.class_names;

  BinnedMatrix binned = bin_features(dataset, config.max_bin);
  const BundleLayout layout =
      config.use_efb ? efb_plan(binned, config.efb_max_conflict_rate)
                     : identity_plan(binned);
  BundledMatrix bundled = efb_encode(binned, layout);
  ens.columns = binned.columns;
  ens.layout = layout;

  const std::vector<int> counts = dataset.class_counts();
  if (config.objective == Objective::binary_logistic) {
    const double p1 = static_cast<double>(counts[1]) / n;
    ens.base_score = {std::log(p1 / (1.0 - p1))};
  } else {
    ens.base_score.resize(static_cast<std::size_t>(k));
    for (int c = 0; c < k; ++c)
      ens.base_score[static_cast<std::size_t>(c)] =
          std::log(static_cast<double>(counts[static_cast<std::size_t>(c)]) / n);
  }

  MatrixRd raw(n, k);
  for (int c = 0; c < k; ++c)
    raw.col(c).setConstant(ens.base_score[static_cast<std::size_t>(c)]);

  GrowParams grow;
  grow.num_leaves = config.num_leaves;
  grow.max_depth = config.max_depth;
  grow.min_samples_leaf = config.min_samples_leaf;
  grow.min_split_gain = config.min_split_gain;

  const std::uint64_t goss_stage = Rng::derive(config.seed, rng_tag::kGoss);
  VectorXd gk(n), hk(n);
  ens.trees.reserve(static_cast<std::size_t>(config.num_trees) * k);
  ens.training_loss.reserve(static_cast<std::size_t>(config.num_trees));

  for (int m = 0; m < config.num_trees; ++m) {
    const Gradients grads =
        compute_gradients(config.objective, dataset.labels, raw);
    Rng rng(Rng::derive(goss_stage, static_cast<std::uint64_t>(m)));
    const GossSample sample =
        goss_sample(grads.g, config.goss_top_rate, config.goss_other_rate, rng);

    for (int c = 0; c < k; ++c) {
      gk = grads.g.col(c);
      hk = grads.h.col(c);
      Tree tree = grow_tree_leafwise(binned, bundled, gk, hk, sample, grow);
      for (int i = 0; i < n; ++i)
        raw(i, c) += config.learning_rate *
                     tree_value_binned(tree, bundled, ens.columns, i);
      ens.trees.push_back(std::move(tree));
    }
    ens.training_loss.push_back(
        mean_log_loss(config.objective, dataset.labels, raw));
  }
  return ens;
}

MatrixRd predict_raw(const Ensemble& ensemble, const MatrixRd& features) {
  if (features.cols() != ensemble.num_features())
    throw data_error("feature count " + std::to_string(features.cols()) +
                     " does not match the model's " +
                     std::to_string(ensemble.num_features()));
  const int n = static_cast<int>(features.rows());
  const int k = ensemble.config.trees_per_iteration();

  MatrixRd raw(n, k);
  for (int c = 0; c < k; ++c)
    raw.col(c).setConstant(ensemble.base_score[static_cast<std::size_t>(c)]);
  for (std::size_t t = 0; t < ensemble.trees.size(); ++t) {
    const int c = static_cast<int>(t) % k;
    for (int i = 0; i < n; ++i)
      raw(i, c) += ensemble.config.learning_rate *
                   tree_value_raw(ensemble.trees[t], ensemble.layout,
                                  ensemble.columns, features.row(i).data());
  }
  return raw;
}

Prediction predict(const Ensemble& ensemble, const MatrixRd& features) {
  const MatrixRd raw = predict_raw(ensemble, features);
  Prediction out;
  out.probabilities =
      probabilities_from_raw(ensemble.config.objective, raw);
  const int n = static_cast<int>(raw.rows());
  out.classes.resize(n);
  for (int i = 0; i < n; ++i) {
    int best = 0;
    for (int c = 1; c < out.probabilities.cols(); ++c)
      if (out.probabilities(i, c) > out.probabilities(i, best)) best = c;
    out.classes[i] = best;
  }
  return out;
}

}  // namespace selboost
