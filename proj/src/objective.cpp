#include "selboost/objective.hpp"

#include <algorithm>
#include <cmath>

#include "selboost/errors.hpp"

namespace selboost {

namespace {

constexpr double kMinHessian = 1e-16;

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

// log(1 + e^x) without overflow
double log1p_exp(double x) {
  return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
}

}  // namespace

std::string to_string(Objective obj) {
  return obj == Objective::binary_logistic ? "binary_logistic"
                                           : "multiclass_softmax";
}

Objective objective_from_string(const std::string& name) {
  if (name == "binary_logistic") return Objective::binary_logistic;
  if (name == "multiclass_softmax") return Objective::multiclass_softmax;
  throw config_error("unknown objective: " + name);
}

Gradients compute_gradients(Objective objective, const VectorXi& labels,
                            const MatrixRd& raw) {
  const int n = static_cast<int>(raw.rows());
  const int k = static_cast<int>(raw.cols());
  if (labels.size() != n) throw data_error("label count does not match scores");

  Gradients out;
  out.g.resize(n, k);
  out.h.resize(n, k);

  if (objective == Objective::binary_logistic) {
    if (k != 1) throw data_error("binary objective expects one score column");
    for (int i = 0; i < n; ++i) {
      const int y = labels[i];
      if (y < 0 || y > 1)
        throw data_error("binary label out of range at row " + std::to_string(i + 1));
      const double p = sigmoid(raw(i, 0));
      out.g(i, 0) = p - y;
      out.h(i, 0) = std::max(p * (1.0 - p), kMinHessian);
    }
    return out;
  }

  for (int i = 0; i < n; ++i) {
    const int y = labels[i];
    if (y < 0 || y >= k)
      throw data_error("label out of class range at row " + std::to_string(i + 1));
    const double m = raw.row(i).maxCoeff();
    double z = 0.0;
    for (int c = 0; c < k; ++c) z += std::exp(raw(i, c) - m);
    for (int c = 0; c < k; ++c) {
      const double p = std::exp(raw(i, c) - m) / z;
      out.g(i, c) = p - (y == c ? 1.0 : 0.0);
      out.h(i, c) = std::max(p * (1.0 - p), kMinHessian);
    }
  }
  return out;
}

double mean_log_loss(Objective objective, const VectorXi& labels,
                     const MatrixRd& raw) {
  const int n = static_cast<int>(raw.rows());
  double total = 0.0;
  if (objective == Objective::binary_logistic) {
    for (int i = 0; i < n; ++i)
      total += log1p_exp(raw(i, 0)) - labels[i] * raw(i, 0);
  } else {
    for (int i = 0; i < n; ++i) {
      const double m = raw.row(i).maxCoeff();
      double z = 0.0;
      for (int c = 0; c < raw.cols(); ++c) z += std::exp(raw(i, c) - m);
      total += m + std::log(z) - raw(i, labels[i]);
    }
  }
  return total / n;
}

MatrixRd probabilities_from_raw(Objective objective, const MatrixRd& raw) {
  const int n = static_cast<int>(raw.rows());
  if (objective == Objective::binary_logistic) {
    MatrixRd p(n, 2);
    for (int i = 0; i < n; ++i) {
      const double p1 = sigmoid(raw(i, 0));
      p(i, 0) = 1.0 - p1;
      p(i, 1) = p1;
    }
    return p;
  }
  MatrixRd p(n, raw.cols());
  for (int i = 0; i < n; ++i) {
    const double m = raw.row(i).maxCoeff();
    double z = 0.0;
    for (int c = 0; c < raw.cols(); ++c) z += std::exp(raw(i, c) - m);
    for (int c = 0; c < raw.cols(); ++c) p(i, c) = std::exp(raw(i, c) - m) / z;
  }
  return p;
}

}  // namespace selboost
