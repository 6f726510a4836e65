#include "selboost/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "selboost/errors.hpp"
#include "selboost/rng.hpp"

namespace selboost {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::vector<std::string> split_cells(const std::string& line) {
  std::vector<std::string> cells;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      cells.push_back(trim(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  cells.push_back(trim(cur));
  return cells;
}

bool parse_double(const std::string& cell, double* out) {
  if (cell.empty()) return false;
  char* end = nullptr;
  const double v = std::strtod(cell.c_str(), &end);
  if (end != cell.c_str() + cell.size()) return false;
  *out = v;
  return true;
}

bool parse_int(const std::string& cell, long long* out) {
  if (cell.empty()) return false;
  char* end = nullptr;
  const long long v = std::strtoll(cell.c_str(), &end, 10);
  if (end != cell.c_str() + cell.size()) return false;
  *out = v;
  return true;
}

}  // namespace

std::vector<int> Dataset::class_counts() const {
  std::vector<int> counts(class_names.size(), 0);
  for (int i = 0; i < n(); ++i) counts[static_cast<std::size_t>(labels[i])]++;
  return counts;
}

void Dataset::validate() const {
  if (features.rows() == 0) throw data_error("dataset is empty");
  if (features.rows() != labels.size())
    throw data_error("feature row count does not match label count");
  if (static_cast<int>(feature_names.size()) != s())
    throw data_error("feature name count does not match feature columns");
  const int c = num_classes();
  if (c < 1) throw data_error("dataset has no classes");
  std::vector<int> seen(static_cast<std::size_t>(c), 0);
  for (int i = 0; i < n(); ++i) {
    const int y = labels[i];
    if (y < 0 || y >= c)
      throw data_error("label out of range at row " + std::to_string(i + 1));
    seen[static_cast<std::size_t>(y)] = 1;
  }
  for (int k = 0; k < c; ++k)
    if (!seen[static_cast<std::size_t>(k)])
      throw data_error("class " + class_names[static_cast<std::size_t>(k)] +
                       " has no samples");
  for (int i = 0; i < n(); ++i)
    for (int j = 0; j < s(); ++j)
      if (!std::isfinite(features(i, j)))
        throw data_error("non-finite feature value at row " +
                         std::to_string(i + 1) + ", column " +
                         feature_names[static_cast<std::size_t>(j)]);
  std::unordered_set<std::string> names(feature_names.begin(),
                                        feature_names.end());
  if (names.size() != feature_names.size())
    throw data_error("feature names are not unique");
}

Dataset make_dataset(MatrixRd features, VectorXi labels,
                     std::vector<std::string> feature_names,
                     std::vector<std::string> class_names) {
  Dataset d;
  d.features = std::move(features);
  d.labels = std::move(labels);
  d.feature_names = std::move(feature_names);
  d.class_names = std::move(class_names);
  d.validate();
  return d;
}

Dataset load_csv(const std::string& path, const std::string& label_column) {
  std::ifstream in(path);
  if (!in) throw data_error("cannot open file: " + path);

  std::string line;
  if (!std::getline(in, line)) throw data_error("empty file: " + path);
  const std::vector<std::string> header = split_cells(line);

  int label_col = -1;
  for (std::size_t j = 0; j < header.size(); ++j)
    if (header[j] == label_column) label_col = static_cast<int>(j);
  if (label_col < 0)
    throw data_error("label column '" + label_column + "' not found in header");

  std::vector<std::string> feature_names;
  for (std::size_t j = 0; j < header.size(); ++j)
    if (static_cast<int>(j) != label_col) feature_names.push_back(header[j]);
  {
    std::unordered_set<std::string> uniq(feature_names.begin(),
                                         feature_names.end());
    if (uniq.size() != feature_names.size())
      throw data_error("duplicate feature column names in header");
  }

  const std::size_t ncols = header.size();
  std::vector<double> values;       // row-major feature cells
  std::vector<std::string> labels;  // raw label cells
  int row = 0;                      // 1-based data row index
  while (std::getline(in, line)) {
    ++row;
    const std::vector<std::string> cells = split_cells(line);
    if (cells.size() == 1 && cells[0].empty()) {
      --row;  // skip trailing blank line
      continue;
    }
    if (cells.size() != ncols)
      throw data_error("ragged row " + std::to_string(row) + ": expected " +
                       std::to_string(ncols) + " cells, got " +
                       std::to_string(cells.size()));
    for (std::size_t j = 0; j < ncols; ++j) {
      if (static_cast<int>(j) == label_col) {
        labels.push_back(cells[j]);
        continue;
      }
      double v = 0.0;
      if (!parse_double(cells[j], &v))
        throw data_error("non-numeric cell at row " + std::to_string(row) +
                         ", column " + header[j]);
      if (!std::isfinite(v))
        throw data_error("non-finite cell at row " + std::to_string(row) +
                         ", column " + header[j]);
      values.push_back(v);
    }
  }
  if (row == 0) throw data_error("no data rows in " + path);

  const int n = row;
  const int s = static_cast<int>(ncols) - 1;

  // Intern labels: ascending numeric order when every cell is an integer,
  // otherwise first-appearance order of the strings.
  bool all_int = true;
  std::vector<long long> as_int(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (!parse_int(labels[i], &as_int[i])) {
      all_int = false;
      break;
    }

  std::vector<std::string> class_names;
  VectorXi y(n);
  if (all_int) {
    std::map<long long, int> ids;
    for (long long v : as_int) ids.emplace(v, 0);
    int next = 0;
    for (auto& kv : ids) kv.second = next++;
    for (int i = 0; i < n; ++i) y[i] = ids[as_int[static_cast<std::size_t>(i)]];
    class_names.resize(ids.size());
    for (const auto& kv : ids)
      class_names[static_cast<std::size_t>(kv.second)] =
          std::to_string(kv.first);
  } else {
    std::unordered_map<std::string, int> ids;
    for (int i = 0; i < n; ++i) {
      const std::string& name = labels[static_cast<std::size_t>(i)];
      auto it = ids.find(name);
      if (it == ids.end()) {
        it = ids.emplace(name, static_cast<int>(class_names.size())).first;
        class_names.push_back(name);
      }
      y[i] = it->second;
    }
  }

  MatrixRd x(n, s);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < s; ++j)
      x(i, j) = values[static_cast<std::size_t>(i) * s + j];

  return make_dataset(std::move(x), std::move(y), std::move(feature_names),
                      std::move(class_names));
}

namespace {

std::vector<std::vector<int>> indices_by_class(const Dataset& d) {
  std::vector<std::vector<int>> groups(
      static_cast<std::size_t>(d.num_classes()));
  for (int i = 0; i < d.n(); ++i)
    groups[static_cast<std::size_t>(d.labels[i])].push_back(i);
  return groups;
}

// Largest-remainder apportionment of `total` over `ratios`: floor the exact
// quotas, then hand leftover units to the largest fractional parts (ties to
// the lower partition index).
std::vector<int> largest_remainder(int total, const std::vector<double>& ratios) {
  const std::size_t p = ratios.size();
  std::vector<int> out(p);
  std::vector<double> frac(p);
  int assigned = 0;
  for (std::size_t i = 0; i < p; ++i) {
    const double quota = ratios[i] * total;
    out[i] = static_cast<int>(std::floor(quota));
    frac[i] = quota - out[i];
    assigned += out[i];
  }
  std::vector<std::size_t> order(p);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return frac[a] > frac[b]; });
  const int leftover = total - assigned;
  for (int t = 0; t < leftover; ++t) out[order[static_cast<std::size_t>(t)]] += 1;
  return out;
}

}  // namespace

SplitPlan stratified_split(const Dataset& dataset, const double (&ratios)[3],
                           std::uint64_t seed) {
  double sum = 0.0;
  for (double r : ratios) {
    if (!(r > 0.0)) throw config_error("split ratios must be positive");
    sum += r;
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw config_error("split ratios must sum to 1");

  const std::vector<double> rv(ratios, ratios + 3);
  const std::uint64_t stage = Rng::derive(seed, rng_tag::kSplit);

  SplitPlan plan;
  plan.seed = seed;
  std::vector<std::vector<int>*> parts = {&plan.train_idx, &plan.valid_idx,
                                          &plan.test_idx};

  const auto groups = indices_by_class(dataset);
  for (std::size_t c = 0; c < groups.size(); ++c) {
    std::vector<int> idx = groups[c];
    if (idx.size() < 3)
      throw data_error("class " + dataset.class_names[c] +
                       " has fewer than 3 samples");
    const std::vector<int> counts =
        largest_remainder(static_cast<int>(idx.size()), rv);
    for (int cnt : counts)
      if (cnt == 0)
        throw data_error("class " + dataset.class_names[c] +
                         " is too small to appear in every partition");
    Rng rng(Rng::derive(stage, c));
    rng.shuffle(idx);
    std::size_t pos = 0;
    for (std::size_t p = 0; p < 3; ++p) {
      for (int t = 0; t < counts[p]; ++t)
        parts[p]->push_back(idx[pos++]);
    }
  }
  for (auto* part : parts) std::sort(part->begin(), part->end());
  return plan;
}

FoldPlan stratified_kfold(const Dataset& dataset, int k, std::uint64_t seed) {
  if (k < 2) throw config_error("fold count must be at least 2");
  const auto groups = indices_by_class(dataset);
  for (std::size_t c = 0; c < groups.size(); ++c)
    if (static_cast<int>(groups[c].size()) < k)
      throw data_error("fold count " + std::to_string(k) +
                       " exceeds the size of class " + dataset.class_names[c]);

  const std::uint64_t stage = Rng::derive(seed, rng_tag::kFold);
  FoldPlan plan;
  plan.k = k;
  plan.seed = seed;
  plan.fold_test_sets.assign(static_cast<std::size_t>(k), {});
  for (std::size_t c = 0; c < groups.size(); ++c) {
    std::vector<int> idx = groups[c];
    Rng rng(Rng::derive(stage, c));
    rng.shuffle(idx);
    for (std::size_t i = 0; i < idx.size(); ++i)
      plan.fold_test_sets[i % static_cast<std::size_t>(k)].push_back(idx[i]);
  }
  for (auto& fold : plan.fold_test_sets) std::sort(fold.begin(), fold.end());
  return plan;
}

Dataset take_rows(const Dataset& dataset, const std::vector<int>& idx) {
  Dataset out;
  out.features.resize(static_cast<Eigen::Index>(idx.size()), dataset.s());
  out.labels.resize(static_cast<Eigen::Index>(idx.size()));
  for (std::size_t i = 0; i < idx.size(); ++i) {
    out.features.row(static_cast<Eigen::Index>(i)) = dataset.features.row(idx[i]);
    out.labels[static_cast<Eigen::Index>(i)] = dataset.labels[idx[i]];
  }
  out.feature_names = dataset.feature_names;
  out.class_names = dataset.class_names;
  return out;
}

void save_csv(const Dataset& dataset, const std::string& path,
              const std::string& label_column) {
  std::ofstream out(path);
  if (!out) throw data_error("cannot write file: " + path);
  for (const auto& name : dataset.feature_names) out << name << ',';
  out << label_column << '\n';
  char buf[64];
  for (int i = 0; i < dataset.n(); ++i) {
    for (int j = 0; j < dataset.s(); ++j) {
      std::snprintf(buf, sizeof(buf), "%.17g", dataset.features(i, j));
      out << buf << ',';
    }
    out << dataset.class_names[static_cast<std::size_t>(dataset.labels[i])]
        << '\n';
  }
}

}  // namespace selboost
