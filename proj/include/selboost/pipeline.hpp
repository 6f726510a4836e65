#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "selboost/anova.hpp"
#include "selboost/booster.hpp"
#include "selboost/metrics.hpp"

namespace selboost {

/// Everything one end-to-end command needs. A single top-level seed drives
/// the split, fold, and GOSS substreams (docs/determinism.md).
struct PipelineConfig {
  std::string data_path;
  std::string label_column = "label";
  std::string task = "auto";  // auto | two_class | multi_class
  double ratios[3] = {0.6, 0.2, 0.2};
  int k_features = 0;  // 0 = keep all features
  int folds = 5;
  std::string out_dir = "out";
  bool score_on_all = false;  // score F on all rows instead of the training rows
  std::uint64_t seed = 42;
  BoosterConfig booster;  // objective/num_classes/seed are filled by the command
};

struct RunArtifacts {
  SplitPlan plan;
  std::vector<int> selected;  // feature indices, ascending
  MetricsReport validation;
  MetricsReport test;
  std::string model_path;
  std::string features_csv_path;
  std::string report_json_path;
  std::string report_text_path;
};

/// Split -> score F on the training rows -> select top-k -> train -> evaluate
/// on validation and test. Writes model.txt, selected_features.csv,
/// report.json, and report.txt under out_dir; nothing is written on failure.
RunArtifacts cmd_run(const PipelineConfig& config);

struct CvArtifacts {
  std::vector<MetricsReport> folds;
  MetricsReport average;
  std::string report_json_path;
  std::string report_text_path;
};

/// Stratified k-fold cross-validation with feature selection refit inside
/// each training fold. Writes report.json and report.txt under out_dir.
CvArtifacts cmd_cv(const PipelineConfig& config);

struct SweepRow {
  int k = 0;
  Metric validation_accuracy;
  bool best = false;
};

struct SweepArtifacts {
  std::vector<SweepRow> rows;
  std::string table_text;
  std::string table_path;
};

/// Train once per k on the training split and report validation accuracy;
/// the argmax row is marked (ties go to the smaller k).
SweepArtifacts cmd_sweep_k(const PipelineConfig& config,
                           const std::vector<int>& k_list);

/// Score the model over a feature CSV (columns matched to the model by
/// name; a column named `label_column` is ignored if present) and write one
/// row per input with per-class probabilities and the predicted class name.
void cmd_predict(const std::string& model_path, const std::string& input_csv,
                 const std::string& output_csv, const std::string& label_column);

/// Render a report.json produced by cmd_run or cmd_cv as text.
std::string cmd_report(const std::string& report_json_path);

struct SelectArtifacts {
  FScores scores;
  std::string scores_csv_path;
  std::string selected_csv_path;  // empty unless k_features > 0
};

/// Score every feature over the whole file and export the audit CSV
/// (feature_name, f_score, rank); with k_features set, also export the
/// selected subset.
SelectArtifacts cmd_select(const PipelineConfig& config);

}  // namespace selboost
