#include "selboost/report_io.hpp"

#include <cstdio>
#include <functional>
#include <sstream>

#include "selboost/errors.hpp"

namespace selboost {

namespace {

nlohmann::json metric_json(const Metric& m) {
  if (!m) return nullptr;
  return *m;
}

Metric metric_from(const nlohmann::json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<double>();
}

nlohmann::json class_metrics_json(const ClassMetrics& m) {
  return {{"sensitivity", metric_json(m.sensitivity)},
          {"specificity", metric_json(m.specificity)},
          {"precision", metric_json(m.precision)},
          {"f1", metric_json(m.f1)}};
}

ClassMetrics class_metrics_from(const nlohmann::json& j) {
  ClassMetrics m;
  m.sensitivity = metric_from(j.at("sensitivity"));
  m.specificity = metric_from(j.at("specificity"));
  m.precision = metric_from(j.at("precision"));
  m.f1 = metric_from(j.at("f1"));
  return m;
}

// percentage with two decimals, or n/a
std::string cell(const Metric& m) {
  if (!m) return "n/a";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", *m * 100.0);
  return buf;
}

void put(std::ostringstream& out, const std::string& text, int width) {
  out << text;
  for (int i = static_cast<int>(text.size()); i < width; ++i) out << ' ';
}

constexpr int kLabelWidth = 14;
constexpr int kCellWidth = 10;

const char* kMetricNames[5] = {"Sensitivity", "Specificity", "Precision",
                               "F1-score", "Accuracy"};

Metric pick(const MetricsReport& r, const ClassMetrics& m, int metric) {
  switch (metric) {
    case 0: return m.sensitivity;
    case 1: return m.specificity;
    case 2: return m.precision;
    case 3: return m.f1;
    default: return r.accuracy;
  }
}

}  // namespace

nlohmann::json report_to_json(const MetricsReport& report) {
  nlohmann::json confusion = nlohmann::json::array();
  for (int i = 0; i < report.confusion_counts.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < report.confusion_counts.cols(); ++j)
      row.push_back(report.confusion_counts(i, j));
    confusion.push_back(row);
  }
  nlohmann::json per_class = nlohmann::json::array();
  for (std::size_t k = 0; k < report.per_class.size(); ++k) {
    nlohmann::json m = class_metrics_json(report.per_class[k]);
    m["class"] = report.class_names[k];
    per_class.push_back(m);
  }
  return {{"classes", report.class_names},
          {"confusion", confusion},
          {"accuracy", metric_json(report.accuracy)},
          {"macro", class_metrics_json(report.macro)},
          {"per_class", per_class},
          {"excluded", report.excluded}};
}

MetricsReport report_from_json(const nlohmann::json& j) {
  MetricsReport rep;
  try {
    rep.class_names = j.at("classes").get<std::vector<std::string>>();
    const nlohmann::json& confusion = j.at("confusion");
    const int c = static_cast<int>(rep.class_names.size());
    rep.confusion_counts.setZero(c, c);
    for (int i = 0; i < c; ++i)
      for (int t = 0; t < c; ++t)
        rep.confusion_counts(i, t) =
            confusion.at(static_cast<std::size_t>(i)).at(static_cast<std::size_t>(t)).get<int>();
    rep.accuracy = metric_from(j.at("accuracy"));
    rep.macro = class_metrics_from(j.at("macro"));
    for (const nlohmann::json& m : j.at("per_class"))
      rep.per_class.push_back(class_metrics_from(m));
    rep.excluded = j.at("excluded").get<std::vector<std::string>>();
  } catch (const nlohmann::json::exception& e) {
    throw data_error(std::string("malformed report: ") + e.what());
  }
  if (rep.per_class.size() != rep.class_names.size())
    throw data_error("malformed report: per_class size mismatch");
  return rep;
}

std::string render_report_text(const std::string& title,
                               const MetricsReport& report) {
  std::ostringstream out;
  out << title << '\n';
  put(out, "Metric (%)", kLabelWidth);
  for (const std::string& name : report.class_names) put(out, name, kCellWidth);
  put(out, "Macro", kCellWidth);
  out << '\n';
  for (int metric = 0; metric < 5; ++metric) {
    put(out, kMetricNames[metric], kLabelWidth);
    for (std::size_t k = 0; k < report.per_class.size(); ++k) {
      if (metric == 4)
        put(out, "", kCellWidth);
      else
        put(out, cell(pick(report, report.per_class[k], metric)), kCellWidth);
    }
    put(out, cell(metric == 4 ? report.accuracy : pick(report, report.macro, metric)),
        kCellWidth);
    out << '\n';
  }
  if (!report.excluded.empty()) {
    out << "undefined (excluded from macro):";
    for (const std::string& e : report.excluded) out << ' ' << e;
    out << '\n';
  }
  return out.str();
}

namespace {

void render_grid(std::ostringstream& out, const std::string& title,
                 const std::vector<MetricsReport>& folds,
                 const MetricsReport& average,
                 const std::function<Metric(const MetricsReport&, int)>& value) {
  out << title << '\n';
  put(out, "Metric (%)", kLabelWidth);
  for (std::size_t f = 0; f < folds.size(); ++f)
    put(out, "Fold " + std::to_string(f + 1), kCellWidth);
  put(out, "Average", kCellWidth);
  out << '\n';
  for (int metric = 0; metric < 5; ++metric) {
    put(out, kMetricNames[metric], kLabelWidth);
    for (const MetricsReport& fold : folds)
      put(out, cell(value(fold, metric)), kCellWidth);
    put(out, cell(value(average, metric)), kCellWidth);
    out << '\n';
  }
}

}  // namespace

std::string render_cv_text(const std::vector<MetricsReport>& folds,
                           const MetricsReport& average) {
  std::ostringstream out;
  render_grid(out, "Macro metrics per fold", folds, average,
              [](const MetricsReport& r, int metric) {
                return pick(r, r.macro, metric);
              });
  for (std::size_t k = 0; k < average.class_names.size(); ++k) {
    out << '\n';
    render_grid(out, "Class " + average.class_names[k] + " (one-vs-rest)",
                folds, average, [k](const MetricsReport& r, int metric) {
                  return pick(r, r.per_class[k], metric);
                });
  }
  return out.str();
}

}  // namespace selboost
