#include "selboost/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "selboost/errors.hpp"
#include "selboost/model_io.hpp"
#include "selboost/report_io.hpp"

namespace selboost {

namespace {

namespace fs = std::filesystem;

Dataset load_input(const PipelineConfig& config) {
  if (config.data_path.empty()) throw config_error("no dataset path given");
  if (!fs::exists(config.data_path))
    throw config_error("dataset path does not exist: " + config.data_path);
  return load_csv(config.data_path, config.label_column);
}

// Objective and class count implied by the task; "auto" picks the binary
// objective for two classes and softmax otherwise.
void resolve_task(const PipelineConfig& config, const Dataset& data,
                  BoosterConfig* booster) {
  const int c = data.num_classes();
  if (config.task == "two_class") {
    if (c != 2)
      throw config_error("task two_class needs a 2-class dataset, found " +
                         std::to_string(c) + " classes");
    booster->objective = Objective::binary_logistic;
  } else if (config.task == "multi_class") {
    if (c < 2) throw config_error("task multi_class needs at least 2 classes");
    booster->objective = Objective::multiclass_softmax;
  } else if (config.task == "auto") {
    booster->objective = c == 2 ? Objective::binary_logistic
                                : Objective::multiclass_softmax;
  } else {
    throw config_error("unknown task: " + config.task);
  }
  booster->num_classes = c;
}

int resolve_k(const PipelineConfig& config, int s) {
  const int k = config.k_features == 0 ? s : config.k_features;
  if (k < 1 || k > s)
    throw config_error("k_features must be in [1, " + std::to_string(s) +
                       "], got " + std::to_string(k));
  return k;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw data_error("cannot write file: " + path);
  out << text;
}

void write_selected_csv(const std::string& path, const FScores& scores,
                        const std::vector<std::string>& feature_names,
                        const std::vector<int>& selected) {
  std::vector<int> rank_of(scores.ranking.size());
  for (std::size_t r = 0; r < scores.ranking.size(); ++r)
    rank_of[static_cast<std::size_t>(scores.ranking[r])] = static_cast<int>(r) + 1;
  std::ostringstream out;
  out << "feature_name,f_score,rank\n";
  char buf[64];
  for (int j : selected) {
    std::snprintf(buf, sizeof(buf), "%.17g", scores.scores[j]);
    out << feature_names[static_cast<std::size_t>(j)] << ',' << buf << ','
        << rank_of[static_cast<std::size_t>(j)] << '\n';
  }
  write_text(path, out.str());
}

MetricsReport evaluate(const Ensemble& model, const Dataset& data) {
  const Prediction pred = predict(model, data.features);
  return macro_report(confusion(data.labels, pred.classes, data.num_classes()),
                      data.class_names);
}

}  // namespace

RunArtifacts cmd_run(const PipelineConfig& config) {
  const Dataset data = load_input(config);

  RunArtifacts art;
  art.plan = stratified_split(data, config.ratios, config.seed);
  const Dataset train_rows = take_rows(data, art.plan.train_idx);
  const Dataset valid_rows = take_rows(data, art.plan.valid_idx);
  const Dataset test_rows = take_rows(data, art.plan.test_idx);

  const FScores scores =
      anova_f_scores(config.score_on_all ? data : train_rows);
  const int k = resolve_k(config, data.s());
  art.selected = select_top_k(scores, k);

  BoosterConfig booster = config.booster;
  resolve_task(config, data, &booster);
  booster.seed = config.seed;

  const Ensemble model =
      train(project_dataset(train_rows, art.selected), booster);
  art.validation = evaluate(model, project_dataset(valid_rows, art.selected));
  art.test = evaluate(model, project_dataset(test_rows, art.selected));

  // All computation done; only now touch the output directory.
  fs::create_directories(config.out_dir);
  art.model_path = config.out_dir + "/model.txt";
  art.features_csv_path = config.out_dir + "/selected_features.csv";
  art.report_json_path = config.out_dir + "/report.json";
  art.report_text_path = config.out_dir + "/report.txt";

  save_model(model, art.model_path);
  write_selected_csv(art.features_csv_path, scores, data.feature_names,
                     art.selected);

  nlohmann::json j{
      {"type", "run"},
      {"classes", data.class_names},
      {"seed", config.seed},
      {"partition_sizes",
       {{"train", art.plan.train_idx.size()},
        {"valid", art.plan.valid_idx.size()},
        {"test", art.plan.test_idx.size()}}},
      {"selected_feature_count", art.selected.size()},
      {"validation", report_to_json(art.validation)},
      {"test", report_to_json(art.test)}};
  write_text(art.report_json_path, j.dump(2) + "\n");

  std::string text = render_report_text("Validation", art.validation) + "\n" +
                     render_report_text("Test", art.test);
  write_text(art.report_text_path, text);
  return art;
}

CvArtifacts cmd_cv(const PipelineConfig& config) {
  const Dataset data = load_input(config);
  const FoldPlan plan = stratified_kfold(data, config.folds, config.seed);
  const int k = resolve_k(config, data.s());

  BoosterConfig booster = config.booster;
  resolve_task(config, data, &booster);
  const std::uint64_t train_stage = Rng::derive(config.seed, rng_tag::kCvTrain);

  CvArtifacts art;
  std::vector<char> in_test(static_cast<std::size_t>(data.n()));
  for (int f = 0; f < plan.k; ++f) {
    std::fill(in_test.begin(), in_test.end(), 0);
    for (int i : plan.fold_test_sets[static_cast<std::size_t>(f)])
      in_test[static_cast<std::size_t>(i)] = 1;
    std::vector<int> train_idx;
    for (int i = 0; i < data.n(); ++i)
      if (!in_test[static_cast<std::size_t>(i)]) train_idx.push_back(i);

    const Dataset train_rows = take_rows(data, train_idx);
    const Dataset test_rows =
        take_rows(data, plan.fold_test_sets[static_cast<std::size_t>(f)]);

    // Selection is refit on this fold's training rows only.
    const std::vector<int> selected =
        select_top_k(anova_f_scores(train_rows), k);
    booster.seed = Rng::derive(train_stage, static_cast<std::uint64_t>(f));
    const Ensemble model =
        train(project_dataset(train_rows, selected), booster);
    art.folds.push_back(
        evaluate(model, project_dataset(test_rows, selected)));
  }
  art.average = fold_average(art.folds);

  fs::create_directories(config.out_dir);
  art.report_json_path = config.out_dir + "/report.json";
  art.report_text_path = config.out_dir + "/report.txt";

  nlohmann::json folds_json = nlohmann::json::array();
  for (const MetricsReport& r : art.folds) folds_json.push_back(report_to_json(r));
  nlohmann::json j{{"type", "cv"},
                   {"classes", data.class_names},
                   {"seed", config.seed},
                   {"folds", folds_json},
                   {"average", report_to_json(art.average)}};
  write_text(art.report_json_path, j.dump(2) + "\n");
  write_text(art.report_text_path, render_cv_text(art.folds, art.average));
  return art;
}

SweepArtifacts cmd_sweep_k(const PipelineConfig& config,
                           const std::vector<int>& k_list) {
  if (k_list.empty()) throw config_error("sweep needs at least one k");
  const Dataset data = load_input(config);
  const SplitPlan plan = stratified_split(data, config.ratios, config.seed);
  const Dataset train_rows = take_rows(data, plan.train_idx);
  const Dataset valid_rows = take_rows(data, plan.valid_idx);
  const FScores scores =
      anova_f_scores(config.score_on_all ? data : train_rows);

  BoosterConfig booster = config.booster;
  resolve_task(config, data, &booster);
  booster.seed = config.seed;

  SweepArtifacts art;
  for (int k : k_list) {
    if (k < 1 || k > data.s())
      throw config_error("sweep k " + std::to_string(k) + " out of range");
    const std::vector<int> selected = select_top_k(scores, k);
    const Ensemble model =
        train(project_dataset(train_rows, selected), booster);
    SweepRow row;
    row.k = k;
    row.validation_accuracy =
        evaluate(model, project_dataset(valid_rows, selected)).accuracy;
    art.rows.push_back(row);
  }

  // argmax over defined accuracies, ties to the smaller k
  int best = -1;
  for (std::size_t i = 0; i < art.rows.size(); ++i) {
    if (!art.rows[i].validation_accuracy) continue;
    if (best < 0 ||
        *art.rows[i].validation_accuracy >
            *art.rows[static_cast<std::size_t>(best)].validation_accuracy ||
        (*art.rows[i].validation_accuracy ==
             *art.rows[static_cast<std::size_t>(best)].validation_accuracy &&
         art.rows[i].k < art.rows[static_cast<std::size_t>(best)].k))
      best = static_cast<int>(i);
  }
  if (best >= 0) art.rows[static_cast<std::size_t>(best)].best = true;

  std::ostringstream out;
  out << "k,validation_accuracy,best\n";
  char buf[64];
  for (const SweepRow& row : art.rows) {
    out << row.k << ',';
    if (row.validation_accuracy) {
      std::snprintf(buf, sizeof(buf), "%.17g", *row.validation_accuracy);
      out << buf;
    } else {
      out << "n/a";
    }
    out << ',' << (row.best ? "*" : "") << '\n';
  }
  art.table_text = out.str();

  fs::create_directories(config.out_dir);
  art.table_path = config.out_dir + "/sweep_k.csv";
  write_text(art.table_path, art.table_text);
  return art;
}

void cmd_predict(const std::string& model_path, const std::string& input_csv,
                 const std::string& output_csv,
                 const std::string& label_column) {
  const Ensemble model = load_model(model_path);
  if (!fs::exists(input_csv))
    throw config_error("input path does not exist: " + input_csv);

  std::ifstream in(input_csv);
  if (!in) throw data_error("cannot open file: " + input_csv);
  std::string line;
  if (!std::getline(in, line)) throw data_error("empty file: " + input_csv);

  std::vector<std::string> header;
  {
    std::string cur;
    for (char c : line) {
      if (c == ',') {
        header.push_back(cur);
        cur.clear();
      } else if (c != '\r') {
        cur.push_back(c);
      }
    }
    header.push_back(cur);
  }

  // Columns must match the model schema by name; the label column may ride
  // along and is ignored.
  std::vector<int> col_of(model.feature_names.size(), -1);
  std::vector<std::string> missing, extra;
  for (std::size_t j = 0; j < header.size(); ++j) {
    bool used = false;
    for (std::size_t f = 0; f < model.feature_names.size(); ++f)
      if (header[j] == model.feature_names[f]) {
        col_of[f] = static_cast<int>(j);
        used = true;
      }
    if (!used && header[j] != label_column) extra.push_back(header[j]);
  }
  for (std::size_t f = 0; f < model.feature_names.size(); ++f)
    if (col_of[f] < 0) missing.push_back(model.feature_names[f]);
  if (!missing.empty() || !extra.empty()) {
    std::string msg = "input schema does not match the model;";
    if (!missing.empty()) {
      msg += " missing:";
      for (const std::string& m : missing) msg += " " + m;
    }
    if (!extra.empty()) {
      msg += " extra:";
      for (const std::string& e : extra) msg += " " + e;
    }
    throw data_error(msg);
  }

  std::vector<double> cells;
  int rows = 0;
  while (std::getline(in, line)) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : line) {
      if (c == ',') {
        parts.push_back(cur);
        cur.clear();
      } else if (c != '\r') {
        cur.push_back(c);
      }
    }
    parts.push_back(cur);
    if (parts.size() == 1 && parts[0].empty()) continue;
    ++rows;
    if (parts.size() != header.size())
      throw data_error("ragged row " + std::to_string(rows) + " in " + input_csv);
    for (std::size_t f = 0; f < model.feature_names.size(); ++f) {
      const std::string& cell = parts[static_cast<std::size_t>(col_of[f])];
      char* end = nullptr;
      const double v = std::strtod(cell.c_str(), &end);
      if (end != cell.c_str() + cell.size() || !std::isfinite(v))
        throw data_error("bad numeric cell at row " + std::to_string(rows) +
                         ", column " + model.feature_names[f]);
      cells.push_back(v);
    }
  }

  MatrixRd x(rows, model.num_features());
  for (int i = 0; i < rows; ++i)
    for (int f = 0; f < model.num_features(); ++f)
      x(i, f) = cells[static_cast<std::size_t>(i) *
                          static_cast<std::size_t>(model.num_features()) +
                      static_cast<std::size_t>(f)];

  std::ostringstream out;
  for (const std::string& name : model.class_names) out << "prob_" << name << ',';
  out << "predicted_class\n";
  if (rows > 0) {
    const Prediction pred = predict(model, x);
    char buf[64];
    for (int i = 0; i < rows; ++i) {
      for (int c = 0; c < pred.probabilities.cols(); ++c) {
        std::snprintf(buf, sizeof(buf), "%.9g", pred.probabilities(i, c));
        out << buf << ',';
      }
      out << model.class_names[static_cast<std::size_t>(pred.classes[i])] << '\n';
    }
  }
  write_text(output_csv, out.str());
}

std::string cmd_report(const std::string& report_json_path) {
  if (!fs::exists(report_json_path))
    throw config_error("report path does not exist: " + report_json_path);
  std::ifstream in(report_json_path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw data_error(std::string("malformed report file: ") + e.what());
  }
  try {
    const std::string type = j.at("type").get<std::string>();
    if (type == "run") {
      return render_report_text("Validation",
                                report_from_json(j.at("validation"))) +
             "\n" + render_report_text("Test", report_from_json(j.at("test")));
    }
    if (type == "cv") {
      std::vector<MetricsReport> folds;
      for (const nlohmann::json& f : j.at("folds"))
        folds.push_back(report_from_json(f));
      return render_cv_text(folds, report_from_json(j.at("average")));
    }
    throw data_error("unknown report type: " + type);
  } catch (const nlohmann::json::exception& e) {
    throw data_error(std::string("malformed report file: ") + e.what());
  }
}

SelectArtifacts cmd_select(const PipelineConfig& config) {
  const Dataset data = load_input(config);
  SelectArtifacts art;
  art.scores = anova_f_scores(data);
  fs::create_directories(config.out_dir);
  art.scores_csv_path = config.out_dir + "/fscores.csv";
  save_scores_csv(art.scores, data.feature_names, art.scores_csv_path);
  if (config.k_features > 0) {
    const std::vector<int> selected =
        select_top_k(art.scores, resolve_k(config, data.s()));
    art.selected_csv_path = config.out_dir + "/selected_features.csv";
    write_selected_csv(art.selected_csv_path, art.scores, data.feature_names,
                       selected);
  }
  return art;
}

}  // namespace selboost
