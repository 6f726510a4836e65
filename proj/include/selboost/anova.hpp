#pragma once

#include <vector>

#include "selboost/dataset.hpp"

namespace selboost {

/// Per-feature one-way ANOVA F statistics with the induced ranking.
struct FScores {
  VectorXd scores;           // length s, >= 0, +inf allowed, never NaN
  std::vector<int> ranking;  // features by descending score, ties by index
};

/// One-way ANOVA F statistic per feature:
///   F_j = [sum_c n_c (mean_cj - mean_j)^2 / (C-1)]
///       / [sum_c sum_{i in c} (x_ij - mean_cj)^2 / (n-C)]
/// computed two-pass in double precision. A zero denominator gives +inf when
/// the numerator is positive and 0 when both vanish.
FScores anova_f_scores(const Dataset& dataset);

/// The k best-ranked features, returned in ascending feature-index order.
std::vector<int> select_top_k(const FScores& fscores, int k);

/// Restriction of `dataset` to the listed feature columns (strictly
/// increasing indices); labels unchanged.
Dataset project_dataset(const Dataset& dataset, const std::vector<int>& indices);

/// Audit export: one line per feature as feature_name,f_score,rank with
/// rank 1 = best. Infinite scores serialize as "inf".
void save_scores_csv(const FScores& fscores,
                     const std::vector<std::string>& feature_names,
                     const std::string& path);

}  // namespace selboost
