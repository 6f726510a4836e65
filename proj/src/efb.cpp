#include "selboost/efb.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>

#include "selboost/errors.hpp"

namespace selboost {

namespace {

constexpr std::size_t kWordBits = 64;

std::size_t word_count(int n) {
  return (static_cast<std::size_t>(n) + kWordBits - 1) / kWordBits;
}

bool is_nonzero(const BinnedMatrix& binned, int row, int feature) {
  const int zb = binned.columns[static_cast<std::size_t>(feature)].zero_bin;
  return zb < 0 || binned.bins(row, feature) != zb;
}

int popcount_and(const std::vector<std::uint64_t>& a,
                 const std::vector<std::uint64_t>& b) {
  int c = 0;
  for (std::size_t w = 0; w < a.size(); ++w)
    c += std::popcount(a[w] & b[w]);
  return c;
}

}  // namespace

BundleLayout efb_plan(const BinnedMatrix& binned, double max_conflict_rate) {
  if (max_conflict_rate < 0.0 || max_conflict_rate > 1.0)
    throw config_error("efb conflict rate must be in [0, 1]");
  const int n = static_cast<int>(binned.bins.rows());
  const int s = static_cast<int>(binned.bins.cols());

  std::vector<std::vector<std::uint64_t>> nz_mask(
      static_cast<std::size_t>(s), std::vector<std::uint64_t>(word_count(n), 0));
  std::vector<int> nz_count(static_cast<std::size_t>(s), 0);
  for (int j = 0; j < s; ++j)
    for (int i = 0; i < n; ++i)
      if (is_nonzero(binned, i, j)) {
        nz_mask[static_cast<std::size_t>(j)][static_cast<std::size_t>(i) / kWordBits] |=
            std::uint64_t{1} << (static_cast<std::size_t>(i) % kWordBits);
        nz_count[static_cast<std::size_t>(j)] += 1;
      }

  std::vector<int> order(static_cast<std::size_t>(s));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    if (nz_count[static_cast<std::size_t>(a)] != nz_count[static_cast<std::size_t>(b)])
      return nz_count[static_cast<std::size_t>(a)] > nz_count[static_cast<std::size_t>(b)];
    return a < b;
  });

  const double conflict_budget = max_conflict_rate * n;
  BundleLayout layout;
  layout.feature_map.resize(static_cast<std::size_t>(s));
  std::vector<std::vector<std::uint64_t>> bundle_mask;

  for (int f : order) {
    int target = -1;
    for (std::size_t b = 0; b < bundle_mask.size(); ++b) {
      const int added =
          popcount_and(nz_mask[static_cast<std::size_t>(f)], bundle_mask[b]);
      if (added <= conflict_budget) {
        target = static_cast<int>(b);
        break;
      }
    }
    if (target < 0) {
      target = static_cast<int>(bundle_mask.size());
      bundle_mask.emplace_back(word_count(n), 0);
      layout.bundle_features.emplace_back();
      layout.bundle_codes.push_back(1);  // code 0 = all members zero
    }
    auto& mask = bundle_mask[static_cast<std::size_t>(target)];
    for (std::size_t w = 0; w < mask.size(); ++w)
      mask[w] |= nz_mask[static_cast<std::size_t>(f)][w];
    auto& slot = layout.feature_map[static_cast<std::size_t>(f)];
    slot.bundle = target;
    slot.offset = layout.bundle_codes[static_cast<std::size_t>(target)] - 1;
    layout.bundle_features[static_cast<std::size_t>(target)].push_back(f);
    layout.bundle_codes[static_cast<std::size_t>(target)] +=
        binned.columns[static_cast<std::size_t>(f)].num_bins();
  }
  return layout;
}

BundleLayout identity_plan(const BinnedMatrix& binned) {
  const int s = static_cast<int>(binned.bins.cols());
  BundleLayout layout;
  layout.feature_map.resize(static_cast<std::size_t>(s));
  layout.bundle_features.resize(static_cast<std::size_t>(s));
  layout.bundle_codes.resize(static_cast<std::size_t>(s));
  for (int j = 0; j < s; ++j) {
    layout.feature_map[static_cast<std::size_t>(j)] = FeatureSlot{j, 0};
    layout.bundle_features[static_cast<std::size_t>(j)] = {j};
    layout.bundle_codes[static_cast<std::size_t>(j)] =
        1 + binned.columns[static_cast<std::size_t>(j)].num_bins();
  }
  return layout;
}

BundledMatrix efb_encode(const BinnedMatrix& binned, const BundleLayout& layout) {
  const int n = static_cast<int>(binned.bins.rows());
  BundledMatrix out;
  out.layout = layout;
  out.values.setZero(n, layout.num_bundles());
  for (std::size_t b = 0; b < layout.bundle_features.size(); ++b) {
    for (int f : layout.bundle_features[b]) {
      const int offset = layout.feature_map[static_cast<std::size_t>(f)].offset;
      for (int i = 0; i < n; ++i)
        if (is_nonzero(binned, i, f))
          out.values(i, static_cast<int>(b)) = offset + 1 + binned.bins(i, f);
    }
  }
  return out;
}

BundledMatrix efb_bundle(const BinnedMatrix& binned, double max_conflict_rate) {
  return efb_encode(binned, efb_plan(binned, max_conflict_rate));
}

std::pair<int, int> decode_code(const BundleLayout& layout,
                                const std::vector<FeatureBins>& columns,
                                int bundle, int code) {
  for (int f : layout.bundle_features[static_cast<std::size_t>(bundle)]) {
    const int offset = layout.feature_map[static_cast<std::size_t>(f)].offset;
    const int nb = columns[static_cast<std::size_t>(f)].num_bins();
    if (code > offset && code <= offset + nb) return {f, code - offset - 1};
  }
  throw data_error("bundle code " + std::to_string(code) +
                   " does not decode in bundle " + std::to_string(bundle));
}

int decode_feature_bin(const BundleLayout& layout,
                       const std::vector<FeatureBins>& columns, int f,
                       int cell) {
  const FeatureSlot slot = layout.feature_map[static_cast<std::size_t>(f)];
  const FeatureBins& col = columns[static_cast<std::size_t>(f)];
  if (cell > slot.offset && cell <= slot.offset + col.num_bins())
    return cell - slot.offset - 1;
  return bin_of(col, 0.0);
}

}  // namespace selboost
