#pragma once

#include "hlv/nn/layers.hpp"

namespace hlv::nn {

struct LossResult {
  double loss = 0.0;
  Matrix grad_logits;
};

/// Row-wise softmax with max subtraction.
Matrix softmax(const Matrix& logits);

/// Mean over the batch of -sum_k t_k log softmax(z)_k, and its gradient
/// (softmax(z) - t) / batch. Targets must be row-normalized to 1e-9; logits finite.
LossResult soft_cross_entropy(const Matrix& logits, const Matrix& targets);

}  // namespace hlv::nn
