#include <doctest.h>

#include <cmath>
#include <limits>

#include "selboost/anova.hpp"
#include "selboost/errors.hpp"
#include "test_support.hpp"

using namespace selboost;

namespace {

Dataset two_class_feature(std::initializer_list<double> class0,
                          std::initializer_list<double> class1) {
  const int n = static_cast<int>(class0.size() + class1.size());
  MatrixRd x(n, 1);
  VectorXi y(n);
  int at = 0;
  for (double v : class0) {
    x(at, 0) = v;
    y[at++] = 0;
  }
  for (double v : class1) {
    x(at, 0) = v;
    y[at++] = 1;
  }
  return make_dataset(std::move(x), std::move(y),
                      test_support::feature_names(1),
                      test_support::class_names(2));
}

// Independent two-pass sum-of-squares transcription of the F statistic.
double f_oracle(const Dataset& d, int j) {
  const int n = d.n();
  const int c = d.num_classes();
  const std::vector<int> counts = d.class_counts();
  double grand = 0.0;
  for (int i = 0; i < n; ++i) grand += d.features(i, j);
  grand /= n;
  std::vector<double> means(static_cast<std::size_t>(c), 0.0);
  for (int i = 0; i < n; ++i)
    means[static_cast<std::size_t>(d.labels[i])] += d.features(i, j);
  for (int k = 0; k < c; ++k)
    means[static_cast<std::size_t>(k)] /= counts[static_cast<std::size_t>(k)];
  double between = 0.0, within = 0.0;
  for (int k = 0; k < c; ++k)
    between += counts[static_cast<std::size_t>(k)] *
               (means[static_cast<std::size_t>(k)] - grand) *
               (means[static_cast<std::size_t>(k)] - grand);
  for (int i = 0; i < n; ++i) {
    const double dev =
        d.features(i, j) - means[static_cast<std::size_t>(d.labels[i])];
    within += dev * dev;
  }
  const double msb = between / (c - 1);
  const double msw = within / (n - c);
  if (msw > 0.0) return msb / msw;
  return msb > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
}

}  // namespace

TEST_CASE("identical class means give F = 0") {
  const Dataset d = two_class_feature({1.0, 3.0}, {2.0, 2.0});
  CHECK(anova_f_scores(d).scores[0] == 0.0);
}

TEST_CASE("hand-computed value for [1,2,3] vs [4,5,6]") {
  const Dataset d = two_class_feature({1, 2, 3}, {4, 5, 6});
  CHECK(anova_f_scores(d).scores[0] == doctest::Approx(13.5).epsilon(1e-12));
}

TEST_CASE("within-class constant but separated classes scores +inf") {
  const Dataset d = two_class_feature({2, 2, 2}, {5, 5, 5});
  CHECK(std::isinf(anova_f_scores(d).scores[0]));
  CHECK(anova_f_scores(d).scores[0] > 0);
}

TEST_CASE("a class with one sample is rejected") {
  MatrixRd x(3, 1);
  x << 1, 2, 3;
  VectorXi y(3);
  y << 0, 0, 1;
  const Dataset d = make_dataset(std::move(x), std::move(y),
                                 test_support::feature_names(1),
                                 test_support::class_names(2));
  CHECK_THROWS_AS(anova_f_scores(d), data_error);
}

TEST_CASE("ranking orders by descending score with index tie-break") {
  MatrixRd x(4, 3);
  // f0 separates weakly, f1 strongly, f2 is an exact copy of f0
  x << 1, 10, 1,
       2, 11, 2,
       3, 30, 3,
       4, 31, 4;
  VectorXi y(4);
  y << 0, 0, 1, 1;
  const Dataset d = make_dataset(std::move(x), std::move(y),
                                 test_support::feature_names(3),
                                 test_support::class_names(2));
  const FScores fs = anova_f_scores(d);
  CHECK(fs.scores[0] == fs.scores[2]);
  CHECK(fs.ranking[0] == 1);
  CHECK(fs.ranking[1] == 0);  // tie resolved to the lower feature index
  CHECK(fs.ranking[2] == 2);

  CHECK(select_top_k(fs, 3) == std::vector<int>{0, 1, 2});
  CHECK(select_top_k(fs, 2) == std::vector<int>{0, 1});
  CHECK_THROWS_AS(select_top_k(fs, 0), config_error);
  CHECK_THROWS_AS(select_top_k(fs, 4), config_error);
}

TEST_CASE("projection restricts columns and keeps labels") {
  Rng rng(31);
  const Dataset d = test_support::random_dense_dataset(rng, 12, 3, 2);

  const Dataset all = project_dataset(d, {0, 1, 2});
  CHECK(all.features.isApprox(d.features, 0.0));
  CHECK(all.feature_names == d.feature_names);

  const Dataset one = project_dataset(d, {0});
  CHECK(one.s() == 1);
  CHECK(one.n() == d.n());

  const Dataset some = project_dataset(d, {0, 2});
  for (int i = 0; i < d.n(); ++i) {
    CHECK(some.features(i, 0) == d.features(i, 0));
    CHECK(some.features(i, 1) == d.features(i, 2));
  }
  CHECK(some.labels == d.labels);

  CHECK_THROWS_AS(project_dataset(d, {0, 0}), config_error);
  CHECK_THROWS_AS(project_dataset(d, {2, 1}), config_error);
  CHECK_THROWS_AS(project_dataset(d, {3}), config_error);
}

TEST_CASE("scores match the sum-of-squares oracle on random data") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    Rng rng(seed + 50);
    const int n = 8 + static_cast<int>(rng.next_below(40));
    const int s = 1 + static_cast<int>(rng.next_below(8));
    const int c = 2 + static_cast<int>(rng.next_below(3));
    if (n / c < 2) continue;
    const Dataset d = test_support::random_dense_dataset(rng, n, s, c);
    const FScores fs = anova_f_scores(d);
    for (int j = 0; j < s; ++j) {
      const double expect = f_oracle(d, j);
      CHECK(fs.scores[j] ==
            doctest::Approx(expect).epsilon(1e-9));
    }
  }
}

TEST_CASE("affine rescaling leaves scores unchanged") {
  Rng rng(91);
  const Dataset d = test_support::random_dense_dataset(rng, 25, 4, 3);
  const FScores base = anova_f_scores(d);

  Dataset scaled = d;
  scaled.features.col(2) = 3.5 * d.features.col(2) -
                           VectorXd::Constant(d.n(), 41.0);
  const FScores after = anova_f_scores(scaled);
  for (int j = 0; j < 4; ++j)
    CHECK(after.scores[j] ==
          doctest::Approx(base.scores[j]).epsilon(1e-9));
}

TEST_CASE("row permutation leaves scores unchanged") {
  Rng rng(92);
  const Dataset d = test_support::random_dense_dataset(rng, 30, 3, 2);
  std::vector<int> perm(30);
  for (int i = 0; i < 30; ++i) perm[static_cast<std::size_t>(i)] = i;
  rng.shuffle(perm);
  const FScores base = anova_f_scores(d);
  const FScores shuffled = anova_f_scores(take_rows(d, perm));
  for (int j = 0; j < 3; ++j)
    CHECK(shuffled.scores[j] ==
          doctest::Approx(base.scores[j]).epsilon(1e-12));
}

TEST_CASE("top-k of the full width returns every feature once") {
  Rng rng(93);
  const Dataset d = test_support::random_dense_dataset(rng, 20, 6, 2);
  const std::vector<int> all = select_top_k(anova_f_scores(d), 6);
  CHECK(all == std::vector<int>{0, 1, 2, 3, 4, 5});
}
