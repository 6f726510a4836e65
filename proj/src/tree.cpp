#include "selboost/tree.hpp"

#include <algorithm>
#include <queue>

namespace selboost {

int Tree::num_leaves() const {
  int leaves = 0;
  for (const TreeNode& n : nodes) leaves += n.is_leaf() ? 1 : 0;
  return leaves;
}

std::vector<HistEntry> build_histogram(const BundledMatrix& bundled, int bundle,
                                       const std::vector<int>& rows,
                                       const VectorXd& g, const VectorXd& h,
                                       const VectorXd& weight) {
  std::vector<HistEntry> hist(static_cast<std::size_t>(
      bundled.layout.bundle_codes[static_cast<std::size_t>(bundle)]));
  for (int r : rows) {
    HistEntry& e = hist[static_cast<std::size_t>(bundled.values(r, bundle))];
    const double w = weight[r];
    e.g += w * g[r];
    e.h += w * h[r];
    e.w += w;
    e.count += 1;
  }
  return hist;
}

std::optional<SplitChoice> find_best_split(
    const std::vector<std::vector<HistEntry>>& histograms,
    const NodeStats& parent, const BundleLayout& layout,
    const std::vector<FeatureBins>& columns, const GrowParams& params) {
  std::optional<SplitChoice> best;
  const double parent_term =
      (parent.g * parent.g / parent.w) / parent.w;

  for (int b = 0; b < layout.num_bundles(); ++b) {
    const std::vector<HistEntry>& hist = histograms[static_cast<std::size_t>(b)];
    for (int f : layout.bundle_features[static_cast<std::size_t>(b)]) {
      const FeatureBins& col = columns[static_cast<std::size_t>(f)];
      const int offset = layout.feature_map[static_cast<std::size_t>(f)].offset;
      const int nb = col.num_bins();
      if (nb < 2) continue;

      // Stats of the feature's zero bin are whatever the bundle did not see
      // in the feature's nonzero slots.
      HistEntry zero;
      if (col.zero_bin >= 0) {
        HistEntry seen;
        for (int t = 0; t < nb; ++t) {
          const HistEntry& e = hist[static_cast<std::size_t>(offset + 1 + t)];
          seen.g += e.g;
          seen.h += e.h;
          seen.w += e.w;
          seen.count += e.count;
        }
        zero.g = parent.g - seen.g;
        zero.h = parent.h - seen.h;
        zero.w = parent.w - seen.w;
        zero.count = parent.count - seen.count;
      }

      // Prefix scan over the feature's bins in value order.
      HistEntry left;
      for (int t = 0; t < nb - 1; ++t) {
        const HistEntry& e = t == col.zero_bin
                                 ? zero
                                 : hist[static_cast<std::size_t>(offset + 1 + t)];
        left.g += e.g;
        left.h += e.h;
        left.w += e.w;
        left.count += e.count;

        if (left.count < params.min_samples_leaf) continue;
        const int right_count = parent.count - left.count;
        if (right_count < params.min_samples_leaf) break;
        const double right_w = parent.w - left.w;
        if (!(left.w > 0.0) || !(right_w > 0.0)) continue;

        const double right_g = parent.g - left.g;
        const double gain =
            estimated_variance_gain(left.g, right_g, left.w, right_w, parent.w) -
            parent_term;
        if (gain <= params.min_split_gain) continue;

        const bool better =
            !best || gain > best->gain ||
            (gain == best->gain &&
             (f < best->feature ||
              (f == best->feature && t < best->feature_bin)));
        if (better) {
          SplitChoice c;
          c.bundle = b;
          c.code = offset + 1 + t;
          c.feature = f;
          c.feature_bin = t;
          c.gain = gain;
          best = c;
        }
      }
    }
  }
  return best;
}

namespace {

struct GrowRec {
  std::vector<int> rows;
  NodeStats stats;
  int depth = 0;
  int tree_node = 0;
  std::optional<SplitChoice> best;
};

NodeStats accumulate_stats(const std::vector<int>& rows, const VectorXd& g,
                           const VectorXd& h, const VectorXd& weight) {
  NodeStats s;
  for (int r : rows) {
    const double w = weight[r];
    s.g += w * g[r];
    s.h += w * h[r];
    s.w += w;
    s.count += 1;
  }
  return s;
}

struct HeapItem {
  double gain;
  int rec;  // lower creation index wins ties
  bool operator<(const HeapItem& o) const {
    if (gain != o.gain) return gain < o.gain;
    return rec > o.rec;
  }
};

}  // namespace

Tree grow_tree_leafwise(const BinnedMatrix& binned, const BundledMatrix& bundled,
                        const VectorXd& g, const VectorXd& h,
                        const GossSample& sample, const GrowParams& params) {
  const int n = static_cast<int>(bundled.values.rows());
  VectorXd weight = VectorXd::Zero(n);
  for (int r : sample.top_idx) weight[r] = 1.0;
  for (int r : sample.rest_idx) weight[r] = sample.weight;

  std::vector<int> root_rows;
  root_rows.reserve(sample.top_idx.size() + sample.rest_idx.size());
  std::merge(sample.top_idx.begin(), sample.top_idx.end(),
             sample.rest_idx.begin(), sample.rest_idx.end(),
             std::back_inserter(root_rows));

  Tree tree;
  tree.nodes.emplace_back();
  std::vector<GrowRec> recs;

  const auto evaluate = [&](GrowRec& rec) {
    rec.best.reset();
    if (params.max_depth > 0 && rec.depth >= params.max_depth) return;
    if (rec.stats.count < 2 * params.min_samples_leaf) return;
    std::vector<std::vector<HistEntry>> hists(
        static_cast<std::size_t>(bundled.layout.num_bundles()));
    for (int b = 0; b < bundled.layout.num_bundles(); ++b)
      hists[static_cast<std::size_t>(b)] =
          build_histogram(bundled, b, rec.rows, g, h, weight);
    rec.best = find_best_split(hists, rec.stats, bundled.layout,
                               binned.columns, params);
  };

  {
    GrowRec root;
    root.rows = std::move(root_rows);
    root.stats = accumulate_stats(root.rows, g, h, weight);
    evaluate(root);
    recs.push_back(std::move(root));
  }

  std::priority_queue<HeapItem> heap;
  if (recs[0].best) heap.push({recs[0].best->gain, 0});

  int leaves = 1;
  while (leaves < params.num_leaves && !heap.empty()) {
    const int at = heap.top().rec;
    heap.pop();
    const SplitChoice choice = *recs[static_cast<std::size_t>(at)].best;

    GrowRec left, right;
    left.depth = right.depth = recs[static_cast<std::size_t>(at)].depth + 1;
    for (int r : recs[static_cast<std::size_t>(at)].rows) {
      const int bin = decode_feature_bin(bundled.layout, binned.columns,
                                         choice.feature,
                                         bundled.values(r, choice.bundle));
      (bin <= choice.feature_bin ? left.rows : right.rows).push_back(r);
    }
    recs[static_cast<std::size_t>(at)].rows.clear();
    left.stats = accumulate_stats(left.rows, g, h, weight);
    right.stats = accumulate_stats(right.rows, g, h, weight);

    left.tree_node = static_cast<int>(tree.nodes.size());
    tree.nodes.emplace_back();
    right.tree_node = static_cast<int>(tree.nodes.size());
    tree.nodes.emplace_back();

    TreeNode& parent =
        tree.nodes[static_cast<std::size_t>(recs[static_cast<std::size_t>(at)].tree_node)];
    parent.split_bundle = choice.bundle;
    parent.split_code = choice.code;
    parent.left = left.tree_node;
    parent.right = right.tree_node;

    evaluate(left);
    evaluate(right);
    const int li = static_cast<int>(recs.size());
    recs.push_back(std::move(left));
    const int ri = static_cast<int>(recs.size());
    recs.push_back(std::move(right));
    if (recs[static_cast<std::size_t>(li)].best)
      heap.push({recs[static_cast<std::size_t>(li)].best->gain, li});
    if (recs[static_cast<std::size_t>(ri)].best)
      heap.push({recs[static_cast<std::size_t>(ri)].best->gain, ri});
    ++leaves;
  }

  for (const GrowRec& rec : recs) {
    TreeNode& node = tree.nodes[static_cast<std::size_t>(rec.tree_node)];
    if (node.is_leaf())
      node.leaf_value = -rec.stats.g / (rec.stats.h + kLeafLambda);
  }
  return tree;
}

double tree_value_binned(const Tree& tree, const BundledMatrix& bundled,
                         const std::vector<FeatureBins>& columns, int row) {
  const TreeNode* node = &tree.nodes[0];
  while (!node->is_leaf()) {
    const auto [f, threshold] = decode_code(bundled.layout, columns,
                                            node->split_bundle, node->split_code);
    const int bin = decode_feature_bin(bundled.layout, columns, f,
                                       bundled.values(row, node->split_bundle));
    node = &tree.nodes[static_cast<std::size_t>(bin <= threshold ? node->left
                                                                 : node->right)];
  }
  return node->leaf_value;
}

double tree_value_raw(const Tree& tree, const BundleLayout& layout,
                      const std::vector<FeatureBins>& columns, const double* x) {
  const TreeNode* node = &tree.nodes[0];
  while (!node->is_leaf()) {
    const auto [f, threshold] =
        decode_code(layout, columns, node->split_bundle, node->split_code);
    const int bin = bin_of(columns[static_cast<std::size_t>(f)], x[f]);
    node = &tree.nodes[static_cast<std::size_t>(bin <= threshold ? node->left
                                                                 : node->right)];
  }
  return node->leaf_value;
}

}  // namespace selboost
