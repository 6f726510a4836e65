#include "selboost/anova.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numeric>

#include "selboost/errors.hpp"

namespace selboost {

FScores anova_f_scores(const Dataset& dataset) {
  const int n = dataset.n();
  const int s = dataset.s();
  const int c = dataset.num_classes();
  if (c < 2) throw data_error("ANOVA scoring needs at least 2 classes");
  const std::vector<int> counts = dataset.class_counts();
  for (int k = 0; k < c; ++k)
    if (counts[static_cast<std::size_t>(k)] < 2)
      throw data_error("class " + dataset.class_names[static_cast<std::size_t>(k)] +
                       " has fewer than 2 samples");

  FScores out;
  out.scores.resize(s);
  for (int j = 0; j < s; ++j) {
    // First pass: grand and per-class means.
    double grand = 0.0;
    std::vector<double> class_mean(static_cast<std::size_t>(c), 0.0);
    for (int i = 0; i < n; ++i) {
      const double x = dataset.features(i, j);
      grand += x;
      class_mean[static_cast<std::size_t>(dataset.labels[i])] += x;
    }
    grand /= n;
    for (int k = 0; k < c; ++k)
      class_mean[static_cast<std::size_t>(k)] /= counts[static_cast<std::size_t>(k)];

    // Second pass: within-class deviations.
    double ss_within = 0.0;
    for (int i = 0; i < n; ++i) {
      const double d =
          dataset.features(i, j) -
          class_mean[static_cast<std::size_t>(dataset.labels[i])];
      ss_within += d * d;
    }
    double ss_between = 0.0;
    for (int k = 0; k < c; ++k) {
      const double d = class_mean[static_cast<std::size_t>(k)] - grand;
      ss_between += counts[static_cast<std::size_t>(k)] * d * d;
    }

    const double msb = ss_between / (c - 1);
    const double msw = ss_within / (n - c);
    if (msw > 0.0)
      out.scores[j] = msb / msw;
    else
      out.scores[j] = msb > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
  }

  out.ranking.resize(static_cast<std::size_t>(s));
  std::iota(out.ranking.begin(), out.ranking.end(), 0);
  std::stable_sort(out.ranking.begin(), out.ranking.end(), [&](int a, int b) {
    if (out.scores[a] != out.scores[b]) return out.scores[a] > out.scores[b];
    return a < b;
  });
  return out;
}

std::vector<int> select_top_k(const FScores& fscores, int k) {
  const int s = static_cast<int>(fscores.ranking.size());
  if (k < 1 || k > s)
    throw config_error("k must be in [1, " + std::to_string(s) + "], got " +
                       std::to_string(k));
  std::vector<int> out(fscores.ranking.begin(), fscores.ranking.begin() + k);
  std::sort(out.begin(), out.end());
  return out;
}

Dataset project_dataset(const Dataset& dataset, const std::vector<int>& indices) {
  int prev = -1;
  for (int j : indices) {
    if (j < 0 || j >= dataset.s())
      throw config_error("feature index " + std::to_string(j) + " out of range");
    if (j <= prev)
      throw config_error("feature indices must be strictly increasing");
    prev = j;
  }
  Dataset out;
  out.features.resize(dataset.n(), static_cast<Eigen::Index>(indices.size()));
  for (std::size_t t = 0; t < indices.size(); ++t)
    out.features.col(static_cast<Eigen::Index>(t)) =
        dataset.features.col(indices[t]);
  out.labels = dataset.labels;
  out.class_names = dataset.class_names;
  out.feature_names.reserve(indices.size());
  for (int j : indices)
    out.feature_names.push_back(dataset.feature_names[static_cast<std::size_t>(j)]);
  return out;
}

void save_scores_csv(const FScores& fscores,
                     const std::vector<std::string>& feature_names,
                     const std::string& path) {
  std::ofstream out(path);
  if (!out) throw data_error("cannot write file: " + path);
  std::vector<int> rank_of(fscores.ranking.size());
  for (std::size_t r = 0; r < fscores.ranking.size(); ++r)
    rank_of[static_cast<std::size_t>(fscores.ranking[r])] = static_cast<int>(r) + 1;
  out << "feature_name,f_score,rank\n";
  char buf[64];
  for (std::size_t j = 0; j < feature_names.size(); ++j) {
    std::snprintf(buf, sizeof(buf), "%.17g",
                  fscores.scores[static_cast<Eigen::Index>(j)]);
    out << feature_names[j] << ',' << buf << ',' << rank_of[j] << '\n';
  }
}

}  // namespace selboost
