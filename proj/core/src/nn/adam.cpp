#include "hlv/nn/adam.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace hlv::nn {

void adam_step(ParamState& state, std::span<const double> grads, double lr, const AdamConfig& config) {
  const std::size_t n = state.params.size();
  if (grads.size() != n || state.first_moment.size() != n || state.second_moment.size() != n) {
    throw std::invalid_argument("adam_step: gradient/moment length mismatch");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(grads[i])) {
      throw std::domain_error("adam_step: non-finite gradient at index " + std::to_string(i) +
                              " (step " + std::to_string(state.step + 1) + ")");
    }
  }
  ++state.step;
  const double t = static_cast<double>(state.step);
  const double bias1 = 1.0 - std::pow(config.beta1, t);
  const double bias2 = 1.0 - std::pow(config.beta2, t);
  for (std::size_t i = 0; i < n; ++i) {
    const double g = grads[i];
    double& m = state.first_moment[i];
    double& v = state.second_moment[i];
    m = config.beta1 * m + (1.0 - config.beta1) * g;
    v = config.beta2 * v + (1.0 - config.beta2) * g * g;
    const double m_hat = m / bias1;
    const double v_hat = v / bias2;
    state.params[i] -= lr * m_hat / (std::sqrt(v_hat) + config.epsilon);
  }
}

}  // namespace hlv::nn
