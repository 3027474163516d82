#include "hlv/nn/loss.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace hlv::nn {

Matrix softmax(const Matrix& logits) {
  Matrix probs(logits.rows(), logits.cols());
  for (Eigen::Index r = 0; r < logits.rows(); ++r) {
    const double mx = logits.row(r).maxCoeff();
    double sum = 0.0;
    for (Eigen::Index k = 0; k < logits.cols(); ++k) {
      const double e = std::exp(logits(r, k) - mx);
      probs(r, k) = e;
      sum += e;
    }
    probs.row(r) /= sum;
  }
  return probs;
}

LossResult soft_cross_entropy(const Matrix& logits, const Matrix& targets) {
  if (logits.rows() != targets.rows() || logits.cols() != targets.cols()) {
    throw std::invalid_argument("soft_cross_entropy: logits and targets differ in shape");
  }
  if (logits.rows() == 0) throw std::invalid_argument("soft_cross_entropy: empty batch");
  if (!logits.allFinite()) throw std::invalid_argument("soft_cross_entropy: non-finite logits");

  const auto batch = static_cast<double>(logits.rows());
  LossResult result;
  result.grad_logits.resize(logits.rows(), logits.cols());
  double total = 0.0;
  for (Eigen::Index r = 0; r < logits.rows(); ++r) {
    double tsum = 0.0;
    for (Eigen::Index k = 0; k < targets.cols(); ++k) {
      const double t = targets(r, k);
      if (!(t >= 0.0)) throw std::invalid_argument("soft_cross_entropy: negative target in row " + std::to_string(r));
      tsum += t;
    }
    if (std::abs(tsum - 1.0) > 1e-9) {
      throw std::invalid_argument("soft_cross_entropy: target row " + std::to_string(r) + " sums to " +
                                  std::to_string(tsum));
    }
    const double mx = logits.row(r).maxCoeff();
    double z = 0.0;
    for (Eigen::Index k = 0; k < logits.cols(); ++k) z += std::exp(logits(r, k) - mx);
    const double log_z = mx + std::log(z);
    double row_loss = 0.0;
    for (Eigen::Index k = 0; k < logits.cols(); ++k) {
      const double log_p = logits(r, k) - log_z;
      const double t = targets(r, k);
      if (t > 0.0) row_loss -= t * log_p;
      result.grad_logits(r, k) = (std::exp(log_p) - t) / batch;
    }
    total += row_loss;
  }
  result.loss = total / batch;
  return result;
}

}  // namespace hlv::nn
