#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>

#include "selboost/dataset.hpp"
#include "selboost/errors.hpp"
#include "test_support.hpp"

using namespace selboost;

namespace {

std::string write_temp_csv(const std::string& name, const std::string& body) {
  const std::string path =
      (std::filesystem::temp_directory_path() / name).string();
  std::ofstream out(path);
  out << body;
  return path;
}

std::vector<int> partition_class_counts(const Dataset& d,
                                        const std::vector<int>& idx) {
  std::vector<int> counts(static_cast<std::size_t>(d.num_classes()), 0);
  for (int i : idx) counts[static_cast<std::size_t>(d.labels[i])] += 1;
  return counts;
}

}  // namespace

TEST_CASE("load_csv parses a minimal well-formed file") {
  const std::string path = write_temp_csv(
      "sb_min.csv", "f0,f1,label\n1.0,2.0,0\n3.5,4.5,1\n5.0,6.0,0\n");
  const Dataset d = load_csv(path, "label");
  CHECK(d.n() == 3);
  CHECK(d.s() == 2);
  CHECK(d.num_classes() == 2);
  CHECK(d.features(1, 1) == 4.5);
  CHECK(d.labels[1] == 1);
  CHECK(d.feature_names == std::vector<std::string>{"f0", "f1"});
}

TEST_CASE("load_csv reports a ragged row by its data row number") {
  const std::string path =
      write_temp_csv("sb_ragged.csv", "f0,f1,label\n1,2,0\n3,1\n5,6,1\n");
  CHECK_THROWS_WITH_AS(load_csv(path, "label"),
                       doctest::Contains("row 2"), data_error);
}

TEST_CASE("load_csv error paths") {
  CHECK_THROWS_AS(load_csv("/nonexistent/nowhere.csv", "label"), data_error);
  const std::string no_label =
      write_temp_csv("sb_nolabel.csv", "f0,f1,y\n1,2,0\n");
  CHECK_THROWS_AS(load_csv(no_label, "label"), data_error);
  const std::string bad_cell =
      write_temp_csv("sb_badcell.csv", "f0,label\nfoo,0\n1,1\n");
  CHECK_THROWS_WITH_AS(load_csv(bad_cell, "label"),
                       doctest::Contains("row 1"), data_error);
  const std::string nan_cell =
      write_temp_csv("sb_nan.csv", "f0,label\nnan,0\n1,1\n");
  CHECK_THROWS_AS(load_csv(nan_cell, "label"), data_error);
  const std::string inf_cell =
      write_temp_csv("sb_inf.csv", "f0,label\ninf,0\n1,1\n");
  CHECK_THROWS_AS(load_csv(inf_cell, "label"), data_error);
  const std::string empty = write_temp_csv("sb_empty.csv", "f0,label\n");
  CHECK_THROWS_AS(load_csv(empty, "label"), data_error);
  const std::string dup =
      write_temp_csv("sb_dup.csv", "f0,f0,label\n1,2,0\n3,4,1\n");
  CHECK_THROWS_AS(load_csv(dup, "label"), data_error);
}

TEST_CASE("string labels intern by first appearance, integers numerically") {
  const std::string strings = write_temp_csv(
      "sb_str.csv", "f0,label\n1,covid\n2,normal\n3,covid\n");
  const Dataset ds = load_csv(strings, "label");
  CHECK(ds.class_names == std::vector<std::string>{"covid", "normal"});
  CHECK(ds.labels[0] == 0);
  CHECK(ds.labels[1] == 1);

  const std::string ints =
      write_temp_csv("sb_int.csv", "f0,label\n1,7\n2,3\n3,7\n");
  const Dataset di = load_csv(ints, "label");
  CHECK(di.class_names == std::vector<std::string>{"3", "7"});
  CHECK(di.labels[0] == 1);  // 7 maps above 3 in numeric order
  CHECK(di.labels[1] == 0);
}

TEST_CASE("csv round-trips through save_csv") {
  Rng rng(11);
  const Dataset d = test_support::random_dense_dataset(rng, 17, 4, 3);
  const std::string path =
      (std::filesystem::temp_directory_path() / "sb_roundtrip.csv").string();
  save_csv(d, path, "label");
  const Dataset back = load_csv(path, "label");
  CHECK(back.n() == d.n());
  CHECK(back.s() == d.s());
  CHECK(back.features.isApprox(d.features, 0.0));
  CHECK(back.labels == d.labels);
}

TEST_CASE("stratified split reproduces the 675/225/225 arithmetic") {
  Rng rng(3);
  MatrixRd x(1125, 2);
  VectorXi y(1125);
  int at = 0;
  const int sizes[3] = {125, 500, 500};
  for (int k = 0; k < 3; ++k)
    for (int t = 0; t < sizes[k]; ++t) {
      x(at, 0) = rng.next_double();
      x(at, 1) = rng.next_double();
      y[at] = k;
      ++at;
    }
  const Dataset d = make_dataset(std::move(x), std::move(y),
                                 test_support::feature_names(2),
                                 test_support::class_names(3));
  const SplitPlan plan = stratified_split(d, {0.6, 0.2, 0.2}, 99);
  CHECK(plan.train_idx.size() == 675);
  CHECK(plan.valid_idx.size() == 225);
  CHECK(plan.test_idx.size() == 225);
  CHECK(partition_class_counts(d, plan.train_idx) ==
        std::vector<int>{75, 300, 300});
  CHECK(partition_class_counts(d, plan.valid_idx) ==
        std::vector<int>{25, 100, 100});
  CHECK(partition_class_counts(d, plan.test_idx) ==
        std::vector<int>{25, 100, 100});

  const SplitPlan again = stratified_split(d, {0.6, 0.2, 0.2}, 99);
  CHECK(again.train_idx == plan.train_idx);
  CHECK(again.valid_idx == plan.valid_idx);
  CHECK(again.test_idx == plan.test_idx);
}

TEST_CASE("stratified split on two balanced classes of five") {
  Rng rng(21);
  const Dataset d = test_support::random_dense_dataset(rng, 10, 2, 2);
  const SplitPlan plan = stratified_split(d, {0.6, 0.2, 0.2}, 1);
  CHECK(partition_class_counts(d, plan.train_idx) == std::vector<int>{3, 3});
  CHECK(partition_class_counts(d, plan.valid_idx) == std::vector<int>{1, 1});
  CHECK(partition_class_counts(d, plan.test_idx) == std::vector<int>{1, 1});
}

TEST_CASE("stratified split rejects bad ratios and tiny classes") {
  Rng rng(4);
  const Dataset d = test_support::random_dense_dataset(rng, 30, 2, 2);
  CHECK_THROWS_AS(stratified_split(d, {0.5, 0.2, 0.2}, 0), config_error);
  CHECK_THROWS_AS(stratified_split(d, {1.0, -0.1, 0.1}, 0), config_error);

  MatrixRd x(5, 1);
  x << 1, 2, 3, 4, 5;
  VectorXi y(5);
  y << 0, 0, 0, 0, 1;  // class 1 has a single sample
  const Dataset tiny = make_dataset(std::move(x), std::move(y),
                                    test_support::feature_names(1),
                                    test_support::class_names(2));
  CHECK_THROWS_AS(stratified_split(tiny, {0.6, 0.2, 0.2}, 0), data_error);
}

TEST_CASE("split partitions the index set exactly, every seed") {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    Rng rng(seed + 1000);
    const int n = 15 + static_cast<int>(rng.next_below(60));
    const int c = 2 + static_cast<int>(rng.next_below(3));
    const Dataset d = test_support::random_dense_dataset(rng, n, 3, c);
    bool ok = true;
    for (int k = 0; k < c; ++k)
      ok = ok && d.class_counts()[static_cast<std::size_t>(k)] >= 3;
    if (!ok) continue;

    SplitPlan plan;
    try {
      plan = stratified_split(d, {0.6, 0.2, 0.2}, seed);
    } catch (const data_error&) {
      continue;  // a partition quota hit zero for some class
    }
    std::set<int> all;
    for (const auto* part : {&plan.train_idx, &plan.valid_idx, &plan.test_idx})
      for (int i : *part) {
        CHECK(all.insert(i).second);  // disjoint
        CHECK(i >= 0);
        CHECK(i < n);
      }
    CHECK(static_cast<int>(all.size()) == n);  // covering

    // stratification within one sample of the exact quota
    const double ratios[3] = {0.6, 0.2, 0.2};
    const std::vector<int> totals = d.class_counts();
    const std::vector<int>* parts[3] = {&plan.train_idx, &plan.valid_idx,
                                        &plan.test_idx};
    for (int p = 0; p < 3; ++p) {
      const std::vector<int> counts = partition_class_counts(d, *parts[p]);
      for (int k = 0; k < c; ++k)
        CHECK(std::abs(counts[static_cast<std::size_t>(k)] -
                       ratios[p] * totals[static_cast<std::size_t>(k)]) <=
              1.0 + 1e-12);
    }
  }
}

TEST_CASE("(class, partition) count multiset is row-permutation invariant") {
  Rng rng(77);
  const Dataset d = test_support::random_dense_dataset(rng, 40, 2, 3);
  std::vector<int> perm(40);
  for (int i = 0; i < 40; ++i) perm[static_cast<std::size_t>(i)] = i;
  rng.shuffle(perm);
  const Dataset shuffled = take_rows(d, perm);

  const SplitPlan a = stratified_split(d, {0.6, 0.2, 0.2}, 5);
  const SplitPlan b = stratified_split(shuffled, {0.6, 0.2, 0.2}, 5);
  CHECK(partition_class_counts(d, a.train_idx) ==
        partition_class_counts(shuffled, b.train_idx));
  CHECK(partition_class_counts(d, a.valid_idx) ==
        partition_class_counts(shuffled, b.valid_idx));
  CHECK(partition_class_counts(d, a.test_idx) ==
        partition_class_counts(shuffled, b.test_idx));
}

TEST_CASE("five folds over 125/500 give 25/100 test folds") {
  Rng rng(8);
  MatrixRd x(625, 1);
  VectorXi y(625);
  for (int i = 0; i < 625; ++i) {
    x(i, 0) = rng.next_double();
    y[i] = i < 125 ? 0 : 1;
  }
  const Dataset d = make_dataset(std::move(x), std::move(y),
                                 test_support::feature_names(1),
                                 test_support::class_names(2));
  const FoldPlan plan = stratified_kfold(d, 5, 13);
  REQUIRE(plan.fold_test_sets.size() == 5);
  for (const auto& fold : plan.fold_test_sets) {
    CHECK(fold.size() == 125);
    CHECK(partition_class_counts(d, fold) == std::vector<int>{25, 100});
  }
}

TEST_CASE("k equal to n acts as leave-one-out on a single-class set") {
  MatrixRd x(6, 1);
  x << 1, 2, 3, 4, 5, 6;
  VectorXi y = VectorXi::Zero(6);
  const Dataset d = make_dataset(std::move(x), std::move(y),
                                 test_support::feature_names(1),
                                 test_support::class_names(1));
  const FoldPlan plan = stratified_kfold(d, 6, 0);
  for (const auto& fold : plan.fold_test_sets) CHECK(fold.size() == 1);
}

TEST_CASE("fold test sets tile the index set on random datasets") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng(seed);
    const int c = 2 + static_cast<int>(rng.next_below(3));
    const int k = 2 + static_cast<int>(rng.next_below(4));
    const int n = c * k + static_cast<int>(rng.next_below(40));
    const Dataset d = test_support::random_dense_dataset(rng, n, 2, c);
    const std::vector<int> counts = d.class_counts();
    const int smallest = *std::min_element(counts.begin(), counts.end());
    if (smallest < k) continue;
    const FoldPlan plan = stratified_kfold(d, k, seed);
    std::set<int> all;
    for (const auto& fold : plan.fold_test_sets)
      for (int i : fold) CHECK(all.insert(i).second);
    CHECK(static_cast<int>(all.size()) == n);

    // per-class fold counts differ by at most one
    for (int cls = 0; cls < c; ++cls) {
      int lo = n, hi = 0;
      for (const auto& fold : plan.fold_test_sets) {
        const int cnt = partition_class_counts(d, fold)[static_cast<std::size_t>(cls)];
        lo = std::min(lo, cnt);
        hi = std::max(hi, cnt);
      }
      CHECK(hi - lo <= 1);
    }
  }
}

TEST_CASE("fold count above the smallest class is rejected") {
  Rng rng(2);
  const Dataset d = test_support::random_dense_dataset(rng, 9, 2, 3);  // 3 each
  CHECK_THROWS_AS(stratified_kfold(d, 4, 0), data_error);
  CHECK_THROWS_AS(stratified_kfold(d, 1, 0), config_error);
}
