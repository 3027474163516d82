#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace hlv::nn {

struct AdamConfig {
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

/// Flat parameters plus Adam moments. All three vectors share one length.
struct ParamState {
  std::vector<double> params;
  std::vector<double> first_moment;
  std::vector<double> second_moment;
  std::uint64_t step = 0;

  explicit ParamState(std::vector<double> initial)
      : params(std::move(initial)),
        first_moment(params.size(), 0.0),
        second_moment(params.size(), 0.0) {}
};

/// One bias-corrected Adam update. A non-finite gradient leaves the state
/// untouched and throws std::domain_error naming the offending index.
void adam_step(ParamState& state, std::span<const double> grads, double lr,
               const AdamConfig& config = {});

}  // namespace hlv::nn
