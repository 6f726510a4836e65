#pragma once

#include <string>

#include "selboost/types.hpp"

namespace selboost {

enum class Objective { binary_logistic, multiclass_softmax };

std::string to_string(Objective obj);
Objective objective_from_string(const std::string& name);

/// First- and second-order derivatives of the loss w.r.t. raw scores, one
/// column per score dimension (1 for binary, C for softmax). g is the
/// positive gradient p - y; h is clamped below at 1e-16.
struct Gradients {
  MatrixRd g;
  MatrixRd h;
};

/// `raw` is n x 1 (binary) or n x C (softmax).
Gradients compute_gradients(Objective objective, const VectorXi& labels,
                            const MatrixRd& raw);

/// Mean negative log-likelihood of the labels under the raw scores.
double mean_log_loss(Objective objective, const VectorXi& labels,
                     const MatrixRd& raw);

/// Per-class probabilities: n x 2 for binary (P(class 0), P(class 1)),
/// n x C for softmax.
MatrixRd probabilities_from_raw(Objective objective, const MatrixRd& raw);

}  // namespace selboost
