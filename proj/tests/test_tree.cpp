#include <doctest.h>

#include <cmath>
#include <numeric>

#include "selboost/tree.hpp"
#include "test_support.hpp"

using namespace selboost;

namespace {

struct Fixture {
  BinnedMatrix binned;
  BundledMatrix bundled;
  VectorXd g, h;
  GossSample all;
};

Fixture make_fixture(const Dataset& d, const VectorXd& g, const VectorXd& h) {
  Fixture fx;
  fx.binned = bin_features(d, 255);
  fx.bundled = efb_bundle(fx.binned, 0.0);
  fx.g = g;
  fx.h = h;
  fx.all.top_idx.resize(static_cast<std::size_t>(d.n()));
  std::iota(fx.all.top_idx.begin(), fx.all.top_idx.end(), 0);
  fx.all.weight = 1.0;
  return fx;
}

std::optional<SplitChoice> root_split(const Fixture& fx, const GrowParams& p) {
  VectorXd weight = VectorXd::Ones(fx.g.size());
  NodeStats parent;
  for (int i = 0; i < fx.g.size(); ++i) {
    parent.g += fx.g[i];
    parent.h += fx.h[i];
    parent.w += 1.0;
    parent.count += 1;
  }
  std::vector<std::vector<HistEntry>> hists;
  for (int b = 0; b < fx.bundled.layout.num_bundles(); ++b)
    hists.push_back(
        build_histogram(fx.bundled, b, fx.all.top_idx, fx.g, fx.h, weight));
  return find_best_split(hists, parent, fx.bundled.layout, fx.binned.columns, p);
}

}  // namespace

TEST_CASE("a constant feature admits no split") {
  MatrixRd x = MatrixRd::Constant(8, 1, 3.0);
  VectorXi y(8);
  for (int i = 0; i < 8; ++i) y[i] = i % 2;
  const Dataset d = make_dataset(std::move(x), std::move(y),
                                 test_support::feature_names(1),
                                 test_support::class_names(2));
  VectorXd g(8), h(8);
  for (int i = 0; i < 8; ++i) {
    g[i] = i % 2 ? 0.5 : -0.5;
    h[i] = 0.25;
  }
  const Fixture fx = make_fixture(d, g, h);
  CHECK(!root_split(fx, GrowParams{}));
}

TEST_CASE("perfectly separable feature splits at the class boundary") {
  MatrixRd x(6, 1);
  x << 1, 2, 3, 10, 11, 12;
  VectorXi y(6);
  y << 0, 0, 0, 1, 1, 1;
  const Dataset d = make_dataset(std::move(x), std::move(y),
                                 test_support::feature_names(1),
                                 test_support::class_names(2));
  VectorXd g(6), h(6);
  for (int i = 0; i < 6; ++i) {
    g[i] = d.labels[i] ? -0.5 : 0.5;
    h[i] = 0.25;
  }
  const Fixture fx = make_fixture(d, g, h);
  const auto choice = root_split(fx, GrowParams{});
  REQUIRE(choice.has_value());
  CHECK(choice->feature == 0);
  CHECK(choice->feature_bin == 2);  // bins are one per distinct value

  // exhaustive scan over every threshold confirms the maximum
  double best_gain = -1.0;
  int best_bin = -1;
  for (int t = 0; t < 5; ++t) {
    double gl = 0, gr = 0, nl = 0, nr = 0;
    for (int i = 0; i < 6; ++i) {
      if (fx.binned.bins(i, 0) <= t) {
        gl += g[i];
        nl += 1;
      } else {
        gr += g[i];
        nr += 1;
      }
    }
    const double gain = (gl * gl / nl + gr * gr / nr) / 6.0;
    if (gain > best_gain) {
      best_gain = gain;
      best_bin = t;
    }
  }
  CHECK(best_bin == choice->feature_bin);
}

TEST_CASE("a large gain threshold suppresses every split") {
  Rng rng(40);
  const Dataset d = test_support::random_dense_dataset(rng, 30, 3, 2);
  VectorXd g(30), h(30);
  for (int i = 0; i < 30; ++i) {
    g[i] = d.labels[i] ? -0.4 : 0.6;
    h[i] = 0.24;
  }
  const Fixture fx = make_fixture(d, g, h);
  GrowParams p;
  p.min_split_gain = 1e18;
  CHECK(!root_split(fx, p));
}

TEST_CASE("pure-gradient data grows a single leaf") {
  Rng rng(41);
  const Dataset d = test_support::random_dense_dataset(rng, 20, 2, 2);
  VectorXd g = VectorXd::Constant(20, 0.25);
  VectorXd h = VectorXd::Constant(20, 0.1875);
  const Fixture fx = make_fixture(d, g, h);
  const Tree tree = grow_tree_leafwise(fx.binned, fx.bundled, g, h, fx.all,
                                       GrowParams{});
  CHECK(tree.nodes.size() == 1);
  CHECK(tree.num_leaves() == 1);
  CHECK(tree.nodes[0].leaf_value ==
        doctest::Approx(-(0.25 * 20) / (0.1875 * 20 + kLeafLambda)));
}

TEST_CASE("num_leaves 2 grows exactly the root split") {
  Rng rng(42);
  const Dataset d = test_support::random_dense_dataset(rng, 40, 3, 2);
  VectorXd g(40), h(40);
  for (int i = 0; i < 40; ++i) {
    g[i] = d.labels[i] ? -0.5 : 0.5;
    h[i] = 0.25;
  }
  const Fixture fx = make_fixture(d, g, h);
  const auto root = root_split(fx, GrowParams{});
  REQUIRE(root.has_value());

  GrowParams p;
  p.num_leaves = 2;
  const Tree tree = grow_tree_leafwise(fx.binned, fx.bundled, g, h, fx.all, p);
  REQUIRE(tree.nodes.size() == 3);
  CHECK(tree.nodes[0].split_bundle == root->bundle);
  CHECK(tree.nodes[0].split_code == root->code);
  CHECK(tree.num_leaves() == 2);
}

TEST_CASE("max_depth caps the growth") {
  Rng rng(43);
  const Dataset d = test_support::random_dense_dataset(rng, 200, 4, 2);
  VectorXd g(200), h(200);
  for (int i = 0; i < 200; ++i) {
    g[i] = d.labels[i] ? -0.5 + 0.001 * i : 0.5 - 0.001 * i;
    h[i] = 0.25;
  }
  const Fixture fx = make_fixture(d, g, h);
  GrowParams p;
  p.num_leaves = 64;
  p.max_depth = 2;
  const Tree tree = grow_tree_leafwise(fx.binned, fx.bundled, g, h, fx.all, p);
  CHECK(tree.num_leaves() <= 4);

  // depth of every leaf is at most 2
  std::vector<int> depth(tree.nodes.size(), 0);
  for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
    const TreeNode& node = tree.nodes[i];
    if (node.is_leaf()) {
      CHECK(depth[i] <= 2);
    } else {
      depth[static_cast<std::size_t>(node.left)] = depth[i] + 1;
      depth[static_cast<std::size_t>(node.right)] = depth[i] + 1;
    }
  }
}

TEST_CASE("min_samples_leaf bounds every leaf") {
  Rng rng(44);
  const Dataset d = test_support::random_dense_dataset(rng, 60, 3, 2);
  VectorXd g(60), h(60);
  for (int i = 0; i < 60; ++i) {
    g[i] = d.labels[i] ? -0.5 : 0.5;
    h[i] = 0.25;
  }
  const Fixture fx = make_fixture(d, g, h);
  GrowParams p;
  p.num_leaves = 32;
  p.min_samples_leaf = 7;
  const Tree tree = grow_tree_leafwise(fx.binned, fx.bundled, g, h, fx.all, p);

  // replay the routing to count samples per leaf
  std::vector<int> leaf_count(tree.nodes.size(), 0);
  for (int i = 0; i < 60; ++i) {
    int at = 0;
    while (!tree.nodes[static_cast<std::size_t>(at)].is_leaf()) {
      const TreeNode& node = tree.nodes[static_cast<std::size_t>(at)];
      const auto [f, threshold] = decode_code(fx.bundled.layout, fx.binned.columns,
                                              node.split_bundle, node.split_code);
      const int bin = decode_feature_bin(fx.bundled.layout, fx.binned.columns, f,
                                         fx.bundled.values(i, node.split_bundle));
      at = bin <= threshold ? node.left : node.right;
    }
    leaf_count[static_cast<std::size_t>(at)] += 1;
  }
  for (std::size_t i = 0; i < tree.nodes.size(); ++i)
    if (tree.nodes[i].is_leaf()) CHECK(leaf_count[i] >= 7);
}

TEST_CASE("tree values agree between binned and raw routing") {
  Rng rng(45);
  const Dataset d = test_support::random_sparse_dataset(rng, 80, 5, 2, 0.4);
  VectorXd g(80), h(80);
  for (int i = 0; i < 80; ++i) {
    g[i] = d.labels[i] ? -0.45 : 0.55;
    h[i] = 0.247;
  }
  const Fixture fx = make_fixture(d, g, h);
  GrowParams p;
  p.num_leaves = 8;
  const Tree tree = grow_tree_leafwise(fx.binned, fx.bundled, g, h, fx.all, p);
  for (int i = 0; i < 80; ++i) {
    const double via_bins =
        tree_value_binned(tree, fx.bundled, fx.binned.columns, i);
    const double via_raw = tree_value_raw(tree, fx.bundled.layout,
                                          fx.binned.columns,
                                          d.features.row(i).data());
    CHECK(via_bins == via_raw);
  }
}
