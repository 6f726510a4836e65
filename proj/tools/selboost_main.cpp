// selboost command-line front end: run / cv / sweep-k / predict / report /
// select over feature CSVs. Options may come from a key=value config file
// (--config); command-line flags win.

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "selboost/errors.hpp"
#include "selboost/pipeline.hpp"
#include "selboost/report_io.hpp"

namespace {

struct CliOptions {
  selboost::PipelineConfig pipeline;
  std::vector<int> k_list;
  std::string model_path;
  std::string input_path;
  std::string output_path = "predictions.csv";
  std::string report_path;
  std::vector<double> ratios = {0.6, 0.2, 0.2};
  bool no_efb = false;
};

void add_data_flags(CLI::App* cmd, CliOptions* opt) {
  cmd->add_option("--data", opt->pipeline.data_path, "feature CSV path");
  cmd->add_option("--label-col", opt->pipeline.label_column,
                  "label column name (default: label)");
  cmd->add_option("--out", opt->pipeline.out_dir, "output directory");
  cmd->add_option("--seed", opt->pipeline.seed, "top-level seed");
}

void add_train_flags(CLI::App* cmd, CliOptions* opt) {
  selboost::BoosterConfig& b = opt->pipeline.booster;
  cmd->add_option("--task", opt->pipeline.task,
                  "auto | two_class | multi_class");
  cmd->add_option("--k-features", opt->pipeline.k_features,
                  "selected feature count (0 = all)");
  cmd->add_option("--trees", b.num_trees, "boosting iterations");
  cmd->add_option("--learning-rate", b.learning_rate, "shrinkage eta");
  cmd->add_option("--max-depth", b.max_depth, "tree depth cap (<= 0: unlimited)");
  cmd->add_option("--num-leaves", b.num_leaves, "leaf cap per tree");
  cmd->add_option("--min-samples-leaf", b.min_samples_leaf,
                  "minimum samples per leaf");
  cmd->add_option("--min-split-gain", b.min_split_gain,
                  "gain threshold gamma");
  cmd->add_option("--goss-a", b.goss_top_rate,
                  "GOSS top rate a (1.0 disables GOSS; 0.2/0.1 is the usual pair)");
  cmd->add_option("--goss-b", b.goss_other_rate, "GOSS other rate b");
  cmd->add_option("--max-bin", b.max_bin, "histogram bins per feature");
  cmd->add_option("--efb-conflict", b.efb_max_conflict_rate,
                  "EFB max conflict rate");
  cmd->add_flag("--no-efb", opt->no_efb, "disable feature bundling");
  cmd->add_option("--ratios", opt->ratios,
                  "train/valid/test ratios (three values)")
      ->expected(3);
  cmd->add_flag("--score-on-all", opt->pipeline.score_on_all,
                "score F statistics on all rows instead of the training rows");
}

void finish_options(CliOptions* opt) {
  if (opt->ratios.size() == 3)
    for (int i = 0; i < 3; ++i) opt->pipeline.ratios[i] = opt->ratios[static_cast<std::size_t>(i)];
  opt->pipeline.booster.use_efb = !opt->no_efb;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gradient-boosted trees with GOSS, feature bundling, and "
               "ANOVA feature selection"};
  app.require_subcommand(1);

  CliOptions opt;

  CLI::App* run = app.add_subcommand(
      "run", "split, select features, train, evaluate on validation and test");
  run->set_config("--config");
  add_data_flags(run, &opt);
  add_train_flags(run, &opt);

  CLI::App* cv = app.add_subcommand("cv", "stratified k-fold cross-validation");
  cv->set_config("--config");
  add_data_flags(cv, &opt);
  add_train_flags(cv, &opt);
  cv->add_option("--folds", opt.pipeline.folds, "fold count");

  CLI::App* sweep = app.add_subcommand(
      "sweep-k", "train per k and report validation accuracy");
  sweep->set_config("--config");
  add_data_flags(sweep, &opt);
  add_train_flags(sweep, &opt);
  sweep->add_option("--k-list", opt.k_list, "k values to sweep")->required();

  CLI::App* predict =
      app.add_subcommand("predict", "score a feature CSV with a saved model");
  predict->add_option("--model", opt.model_path, "model file")->required();
  predict->add_option("--input", opt.input_path, "input feature CSV")->required();
  predict->add_option("--output", opt.output_path, "predictions CSV");
  predict->add_option("--label-col", opt.pipeline.label_column,
                      "label column to ignore if present");

  CLI::App* report = app.add_subcommand("report", "render a report.json as text");
  report->add_option("report", opt.report_path, "report.json path")->required();

  CLI::App* select = app.add_subcommand(
      "select", "export ANOVA F scores for every feature");
  select->set_config("--config");
  add_data_flags(select, &opt);
  select->add_option("--k-features", opt.pipeline.k_features,
                     "also export the top-k selection");

  CLI11_PARSE(app, argc, argv);
  finish_options(&opt);

  try {
    if (run->parsed()) {
      const selboost::RunArtifacts art = selboost::cmd_run(opt.pipeline);
      std::cout << selboost::render_report_text("Validation", art.validation)
                << '\n'
                << selboost::render_report_text("Test", art.test)
                << "model: " << art.model_path << '\n'
                << "report: " << art.report_json_path << '\n';
    } else if (cv->parsed()) {
      const selboost::CvArtifacts art = selboost::cmd_cv(opt.pipeline);
      std::cout << selboost::render_cv_text(art.folds, art.average)
                << "report: " << art.report_json_path << '\n';
    } else if (sweep->parsed()) {
      const selboost::SweepArtifacts art =
          selboost::cmd_sweep_k(opt.pipeline, opt.k_list);
      std::cout << art.table_text;
    } else if (predict->parsed()) {
      selboost::cmd_predict(opt.model_path, opt.input_path, opt.output_path,
                            opt.pipeline.label_column);
      std::cout << "wrote " << opt.output_path << '\n';
    } else if (report->parsed()) {
      std::cout << selboost::cmd_report(opt.report_path);
    } else if (select->parsed()) {
      const selboost::SelectArtifacts art = selboost::cmd_select(opt.pipeline);
      std::cout << "wrote " << art.scores_csv_path << '\n';
      if (!art.selected_csv_path.empty())
        std::cout << "wrote " << art.selected_csv_path << '\n';
    }
  } catch (const selboost::config_error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const selboost::data_error& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return 3;
  } catch (const selboost::train_error& e) {
    std::cerr << "training error: " << e.what() << '\n';
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
