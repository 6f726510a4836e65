#include "selboost/goss.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "selboost/errors.hpp"

namespace selboost {

GossSample goss_sample(const MatrixRd& g, double a, double b, Rng& rng) {
  if (!(a > 0.0) || a > 1.0) throw config_error("goss top rate must be in (0, 1]");
  if (b < 0.0 || b >= 1.0) throw config_error("goss other rate must be in [0, 1)");
  if (a + b > 1.0) throw config_error("goss rates must satisfy a + b <= 1");
  if (a == 1.0 && b != 0.0)
    throw config_error("goss other rate must be 0 when the top rate is 1");
  if (a < 1.0 && b == 0.0)
    throw config_error("goss other rate must be positive when the top rate is below 1");

  const int n = static_cast<int>(g.rows());
  GossSample out;

  if (a == 1.0) {
    out.top_idx.resize(static_cast<std::size_t>(n));
    std::iota(out.top_idx.begin(), out.top_idx.end(), 0);
    out.weight = 1.0;
    return out;
  }

  VectorXd magnitude = g.cwiseAbs().rowwise().sum();
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) {
    if (magnitude[x] != magnitude[y]) return magnitude[x] > magnitude[y];
    return x < y;
  });

  const int top = static_cast<int>(std::ceil(a * n));
  out.top_idx.assign(order.begin(), order.begin() + top);
  std::sort(out.top_idx.begin(), out.top_idx.end());

  std::vector<int> rest(order.begin() + top, order.end());
  std::sort(rest.begin(), rest.end());
  const int want = std::min(static_cast<int>(std::ceil(b * n)),
                            static_cast<int>(rest.size()));
  rng.shuffle(rest);
  out.rest_idx.assign(rest.begin(), rest.begin() + want);
  std::sort(out.rest_idx.begin(), out.rest_idx.end());

  out.weight = (1.0 - a) / b;
  return out;
}

double estimated_variance_gain(double left_gsum, double right_gsum,
                               double left_count, double right_count,
                               double n) {
  return ((left_gsum * left_gsum) / left_count +
          (right_gsum * right_gsum) / right_count) /
         n;
}

}  // namespace selboost
