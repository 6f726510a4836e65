#pragma once

#include <optional>
#include <string>
#include <vector>

#include "selboost/types.hpp"

namespace selboost {

/// A rate in [0,1], or empty when its denominator is zero. Undefined is a
/// value here, never a NaN.
using Metric = std::optional<double>;

/// C x C prediction counts, rows indexed by true class, columns by predicted.
struct ConfusionMatrix {
  MatrixRi counts;

  int num_classes() const { return static_cast<int>(counts.rows()); }
  long long total() const;
};

ConfusionMatrix confusion(const VectorXi& true_labels,
                          const VectorXi& predicted_labels, int num_classes);

/// One-vs-rest reduction for a positive class.
struct BinaryCounts {
  long long tp = 0;
  long long tn = 0;
  long long fp = 0;
  long long fn = 0;
};

BinaryCounts binary_counts(const ConfusionMatrix& cm, int positive_class);

Metric sensitivity(const BinaryCounts& c);  // TP / (TP + FN)
Metric specificity(const BinaryCounts& c);  // TN / (TN + FP)
Metric precision(const BinaryCounts& c);    // TP / (TP + FP)
Metric f1(const BinaryCounts& c);           // 2 P S / (P + S)
Metric accuracy(const ConfusionMatrix& cm); // trace / total

struct ClassMetrics {
  Metric sensitivity;
  Metric specificity;
  Metric precision;
  Metric f1;
};

/// Per-class one-vs-rest metrics plus unweighted macro averages. Classes
/// with an undefined value are excluded from that metric's macro mean and
/// flagged in `excluded` as "metric:class_name".
struct MetricsReport {
  std::vector<std::string> class_names;
  MatrixRi confusion_counts;
  std::vector<ClassMetrics> per_class;
  Metric accuracy;
  ClassMetrics macro;
  std::vector<std::string> excluded;
};

MetricsReport macro_report(const ConfusionMatrix& cm,
                           const std::vector<std::string>& class_names);

/// Arithmetic mean of each defined metric across folds (a metric undefined
/// in every fold stays undefined); confusion counts are summed. Reports must
/// share one class structure.
MetricsReport fold_average(const std::vector<MetricsReport>& reports);

}  // namespace selboost
