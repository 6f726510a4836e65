#pragma once

// Shared generators for randomized tests. Everything is driven by the
// library Rng so failures reproduce from the printed seed.

#include <algorithm>
#include <string>
#include <vector>

#include "selboost/dataset.hpp"
#include "selboost/rng.hpp"

namespace test_support {

using selboost::Dataset;
using selboost::MatrixRd;
using selboost::Rng;
using selboost::VectorXi;

inline std::vector<std::string> feature_names(int s) {
  std::vector<std::string> names;
  for (int j = 0; j < s; ++j) names.push_back("f" + std::to_string(j));
  return names;
}

inline std::vector<std::string> class_names(int c) {
  std::vector<std::string> names;
  for (int k = 0; k < c; ++k) names.push_back("c" + std::to_string(k));
  return names;
}

/// Balanced-ish labels: round-robin over classes, then shuffled. Guarantees
/// every class holds at least floor(n / c) samples.
inline VectorXi shuffled_labels(Rng& rng, int n, int c) {
  std::vector<int> y(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) y[static_cast<std::size_t>(i)] = i % c;
  rng.shuffle(y);
  VectorXi out(n);
  for (int i = 0; i < n; ++i) out[i] = y[static_cast<std::size_t>(i)];
  return out;
}

/// Dense features, strictly positive (no zeros anywhere), labels independent
/// of the features.
inline Dataset random_dense_dataset(Rng& rng, int n, int s, int c) {
  MatrixRd x(n, s);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < s; ++j) x(i, j) = 0.25 + 2.0 * rng.next_double();
  return selboost::make_dataset(std::move(x), shuffled_labels(rng, n, c),
                                feature_names(s), class_names(c));
}

/// Sparse features: each cell is nonzero with probability `density`.
inline Dataset random_sparse_dataset(Rng& rng, int n, int s, int c,
                                     double density) {
  MatrixRd x = MatrixRd::Zero(n, s);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < s; ++j)
      if (rng.next_double() < density) x(i, j) = 0.5 + rng.next_double();
  return selboost::make_dataset(std::move(x), shuffled_labels(rng, n, c),
                                feature_names(s), class_names(c));
}

/// Sparse features whose nonzero row sets are disjoint across features within
/// each group of `group` consecutive features, so bundling has work to do.
inline Dataset disjoint_sparse_dataset(Rng& rng, int n, int s, int c,
                                       int group) {
  MatrixRd x = MatrixRd::Zero(n, s);
  for (int i = 0; i < n; ++i)
    for (int j0 = 0; j0 < s; j0 += group) {
      // one feature of the group may be nonzero on this row
      const int pick = static_cast<int>(rng.next_below(
          static_cast<std::uint64_t>(std::min(group, s - j0) + 1)));
      if (pick < std::min(group, s - j0))
        x(i, j0 + pick) = 0.5 + rng.next_double();
    }
  return selboost::make_dataset(std::move(x), shuffled_labels(rng, n, c),
                                feature_names(s), class_names(c));
}

/// Two features, four clusters, XOR labels. Cluster sizes are uneven so a
/// greedy first split has positive gain.
inline Dataset xor_dataset() {
  const int sizes[4] = {14, 9, 11, 6};  // (lo,lo) (lo,hi) (hi,lo) (hi,hi)
  int n = 0;
  for (int q = 0; q < 4; ++q) n += sizes[q];
  MatrixRd x(n, 2);
  VectorXi y(n);
  int at = 0;
  for (int q = 0; q < 4; ++q) {
    const double a = (q & 2) ? 1.0 : -1.0;
    const double b = (q & 1) ? 1.0 : -1.0;
    for (int t = 0; t < sizes[q]; ++t) {
      x(at, 0) = a + 0.01 * t;
      x(at, 1) = b + 0.01 * t;
      y[at] = ((q & 2) >> 1) ^ (q & 1);
      ++at;
    }
  }
  return selboost::make_dataset(std::move(x), std::move(y), feature_names(2),
                                class_names(2));
}

/// Linearly separable synthetic: `informative` leading features carry a
/// class-dependent mean plus noise, the rest are pure noise. Class sizes are
/// given explicitly.
inline Dataset separable_dataset(Rng& rng, const std::vector<int>& sizes,
                                 int s, int informative) {
  int n = 0;
  for (int v : sizes) n += v;
  const int c = static_cast<int>(sizes.size());
  MatrixRd x(n, s);
  VectorXi y(n);
  int at = 0;
  for (int k = 0; k < c; ++k)
    for (int t = 0; t < sizes[static_cast<std::size_t>(k)]; ++t) {
      for (int j = 0; j < s; ++j) {
        const double noise = rng.next_double() - 0.5;
        const double mean = j < informative ? 3.0 * ((j + k) % c) : 0.0;
        x(at, j) = mean + noise;
      }
      y[at] = k;
      ++at;
    }
  // interleave rows so splits see mixed classes
  std::vector<int> order(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
  rng.shuffle(order);
  MatrixRd xs(n, s);
  VectorXi ys(n);
  for (int i = 0; i < n; ++i) {
    xs.row(i) = x.row(order[static_cast<std::size_t>(i)]);
    ys[i] = y[order[static_cast<std::size_t>(i)]];
  }
  return selboost::make_dataset(std::move(xs), std::move(ys), feature_names(s),
                                class_names(c));
}

}  // namespace test_support
