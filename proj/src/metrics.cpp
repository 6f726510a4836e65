#include "selboost/metrics.hpp"

#include <algorithm>

#include "selboost/errors.hpp"

namespace selboost {

long long ConfusionMatrix::total() const {
  long long t = 0;
  for (int i = 0; i < counts.rows(); ++i)
    for (int j = 0; j < counts.cols(); ++j) t += counts(i, j);
  return t;
}

ConfusionMatrix confusion(const VectorXi& true_labels,
                          const VectorXi& predicted_labels, int num_classes) {
  if (true_labels.size() != predicted_labels.size())
    throw data_error("label vectors differ in length");
  ConfusionMatrix cm;
  cm.counts.setZero(num_classes, num_classes);
  for (int i = 0; i < true_labels.size(); ++i) {
    const int t = true_labels[i];
    const int p = predicted_labels[i];
    if (t < 0 || t >= num_classes || p < 0 || p >= num_classes)
      throw data_error("label out of range at row " + std::to_string(i + 1));
    cm.counts(t, p) += 1;
  }
  return cm;
}

BinaryCounts binary_counts(const ConfusionMatrix& cm, int positive_class) {
  const int c = cm.num_classes();
  if (positive_class < 0 || positive_class >= c)
    throw data_error("positive class out of range");
  BinaryCounts out;
  for (int t = 0; t < c; ++t)
    for (int p = 0; p < c; ++p) {
      const long long v = cm.counts(t, p);
      if (t == positive_class && p == positive_class)
        out.tp += v;
      else if (t == positive_class)
        out.fn += v;
      else if (p == positive_class)
        out.fp += v;
      else
        out.tn += v;
    }
  return out;
}

namespace {

Metric ratio(long long num, long long den) {
  if (den == 0) return std::nullopt;
  return static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

Metric sensitivity(const BinaryCounts& c) { return ratio(c.tp, c.tp + c.fn); }
Metric specificity(const BinaryCounts& c) { return ratio(c.tn, c.tn + c.fp); }
Metric precision(const BinaryCounts& c) { return ratio(c.tp, c.tp + c.fp); }

Metric f1(const BinaryCounts& c) {
  const Metric p = precision(c);
  const Metric s = sensitivity(c);
  if (!p || !s) return std::nullopt;
  const double den = *p + *s;
  if (den == 0.0) return std::nullopt;
  return 2.0 * (*p * *s) / den;
}

Metric accuracy(const ConfusionMatrix& cm) {
  long long trace = 0;
  for (int i = 0; i < cm.num_classes(); ++i) trace += cm.counts(i, i);
  return ratio(trace, cm.total());
}

namespace {

// Mean of the defined entries. A mean over bit-identical values returns that
// value unchanged so that averaging k copies of a report is exact.
Metric defined_mean(const std::vector<Metric>& values) {
  double sum = 0.0;
  int count = 0;
  bool all_same = true;
  double first = 0.0;
  for (const Metric& v : values) {
    if (!v) continue;
    if (count == 0)
      first = *v;
    else if (*v != first)
      all_same = false;
    sum += *v;
    ++count;
  }
  if (count == 0) return std::nullopt;
  if (all_same) return first;
  return sum / count;
}

}  // namespace

MetricsReport macro_report(const ConfusionMatrix& cm,
                           const std::vector<std::string>& class_names) {
  const int c = cm.num_classes();
  if (static_cast<int>(class_names.size()) != c)
    throw data_error("class name count does not match confusion matrix");

  MetricsReport rep;
  rep.class_names = class_names;
  rep.confusion_counts = cm.counts;
  rep.accuracy = accuracy(cm);

  std::vector<Metric> sens, spec, prec, f1s;
  for (int k = 0; k < c; ++k) {
    const BinaryCounts bc = binary_counts(cm, k);
    ClassMetrics m;
    m.sensitivity = sensitivity(bc);
    m.specificity = specificity(bc);
    m.precision = precision(bc);
    m.f1 = f1(bc);
    const auto flag = [&](const char* name, const Metric& v) {
      if (!v)
        rep.excluded.push_back(std::string(name) + ":" +
                               class_names[static_cast<std::size_t>(k)]);
    };
    flag("sensitivity", m.sensitivity);
    flag("specificity", m.specificity);
    flag("precision", m.precision);
    flag("f1", m.f1);
    sens.push_back(m.sensitivity);
    spec.push_back(m.specificity);
    prec.push_back(m.precision);
    f1s.push_back(m.f1);
    rep.per_class.push_back(m);
  }
  rep.macro.sensitivity = defined_mean(sens);
  rep.macro.specificity = defined_mean(spec);
  rep.macro.precision = defined_mean(prec);
  rep.macro.f1 = defined_mean(f1s);
  return rep;
}

MetricsReport fold_average(const std::vector<MetricsReport>& reports) {
  if (reports.empty()) throw data_error("cannot average zero reports");
  const MetricsReport& first = reports.front();
  for (const MetricsReport& r : reports)
    if (r.class_names != first.class_names)
      throw data_error("fold reports have mismatched class structure");

  const int c = static_cast<int>(first.class_names.size());
  MetricsReport avg;
  avg.class_names = first.class_names;
  avg.confusion_counts.setZero(c, c);
  for (const MetricsReport& r : reports) avg.confusion_counts += r.confusion_counts;

  const auto collect = [&](auto select) {
    std::vector<Metric> v;
    for (const MetricsReport& r : reports) v.push_back(select(r));
    return defined_mean(v);
  };

  avg.accuracy = collect([](const MetricsReport& r) { return r.accuracy; });
  avg.macro.sensitivity =
      collect([](const MetricsReport& r) { return r.macro.sensitivity; });
  avg.macro.specificity =
      collect([](const MetricsReport& r) { return r.macro.specificity; });
  avg.macro.precision =
      collect([](const MetricsReport& r) { return r.macro.precision; });
  avg.macro.f1 = collect([](const MetricsReport& r) { return r.macro.f1; });
  for (int k = 0; k < c; ++k) {
    ClassMetrics m;
    m.sensitivity = collect([k](const MetricsReport& r) {
      return r.per_class[static_cast<std::size_t>(k)].sensitivity;
    });
    m.specificity = collect([k](const MetricsReport& r) {
      return r.per_class[static_cast<std::size_t>(k)].specificity;
    });
    m.precision = collect([k](const MetricsReport& r) {
      return r.per_class[static_cast<std::size_t>(k)].precision;
    });
    m.f1 = collect([k](const MetricsReport& r) {
      return r.per_class[static_cast<std::size_t>(k)].f1;
    });
    avg.per_class.push_back(m);
  }
  return avg;
}

}  // namespace selboost
