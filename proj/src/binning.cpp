#include "selboost/binning.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "selboost/errors.hpp"

namespace selboost {

int bin_of(const FeatureBins& col, double x) {
  const double* begin = col.upper_edges.data();
  const double* end = begin + col.upper_edges.size();
  const double* it = std::lower_bound(begin, end, x);
  if (it == end) return col.num_bins() - 1;
  return static_cast<int>(it - begin);
}

namespace {

// Boundary between adjacent distinct values a < b such that a maps below it
// and b above. The midpoint works unless rounding pushes it onto b.
double edge_between(double a, double b) {
  const double mid = a + (b - a) * 0.5;
  return mid < b ? mid : a;
}

// Cut m sorted distinct values into at most `groups` contiguous groups at
// equally spaced positions; appends the last value of each group.
void append_group_lasts(const std::vector<double>& vals, int groups,
                        std::vector<double>* lasts) {
  const int m = static_cast<int>(vals.size());
  if (m == 0) return;
  if (m <= groups) {
    for (double v : vals) lasts->push_back(v);
    return;
  }
  for (int t = 1; t <= groups; ++t) {
    const int end = static_cast<int>((static_cast<long long>(t) * m) / groups);
    lasts->push_back(vals[static_cast<std::size_t>(end - 1)]);
  }
}

}  // namespace

FeatureBins bin_column(const VectorXd& values, int max_bin) {
  if (max_bin < 2) throw config_error("max_bin must be at least 2");
  std::vector<double> distinct(values.data(), values.data() + values.size());
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());

  const bool has_zero =
      std::binary_search(distinct.begin(), distinct.end(), 0.0);

  std::vector<double> group_last;  // last distinct value of each group
  int zero_group = -1;
  if (has_zero) {
    std::vector<double> neg, pos;
    for (double v : distinct) {
      if (v < 0.0) neg.push_back(v);
      if (v > 0.0) pos.push_back(v);
    }
    // Zero takes one bin; the rest of the budget is split proportionally
    // across the sides (each nonempty side keeps at least one group, so a
    // mixed-sign column with zeros can exceed max_bin=2 by one bin).
    const int budget = max_bin - 1;
    int g_neg = 0, g_pos = 0;
    if (!neg.empty() && pos.empty()) {
      g_neg = budget;
    } else if (neg.empty() && !pos.empty()) {
      g_pos = budget;
    } else if (!neg.empty() && !pos.empty()) {
      const double share =
          static_cast<double>(neg.size()) / (neg.size() + pos.size());
      g_neg = std::clamp(static_cast<int>(std::lround(budget * share)), 1,
                         std::max(1, budget - 1));
      g_pos = std::max(1, budget - g_neg);
    }
    append_group_lasts(neg, g_neg, &group_last);
    zero_group = static_cast<int>(group_last.size());
    group_last.push_back(0.0);
    append_group_lasts(pos, g_pos, &group_last);
  } else {
    append_group_lasts(distinct, max_bin, &group_last);
  }

  FeatureBins col;
  col.zero_bin = zero_group;
  const int nb = static_cast<int>(group_last.size());
  col.upper_edges.resize(nb);
  for (int g = 0; g < nb - 1; ++g) {
    const double last = group_last[static_cast<std::size_t>(g)];
    // first distinct value of the next group
    const double next =
        *std::upper_bound(distinct.begin(), distinct.end(), last);
    col.upper_edges[g] = edge_between(last, next);
  }
  col.upper_edges[nb - 1] = std::numeric_limits<double>::infinity();
  return col;
}

BinnedMatrix bin_features(const Dataset& dataset, int max_bin) {
  if (max_bin < 2) throw config_error("max_bin must be at least 2");
  BinnedMatrix out;
  const int n = dataset.n();
  const int s = dataset.s();
  out.columns.reserve(static_cast<std::size_t>(s));
  out.bins.resize(n, s);
  for (int j = 0; j < s; ++j) {
    FeatureBins col = bin_column(dataset.features.col(j), max_bin);
    for (int i = 0; i < n; ++i)
      out.bins(i, j) = bin_of(col, dataset.features(i, j));
    out.columns.push_back(std::move(col));
  }
  return out;
}

}  // namespace selboost
