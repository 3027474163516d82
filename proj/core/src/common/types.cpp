#include "hlv/common/types.hpp"

#include <cmath>
#include <stdexcept>

namespace hlv {

std::size_t argmax(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("argmax of empty vector");
  std::size_t best = 0;
  for (std::size_t k = 1; k < values.size(); ++k) {
    if (values[k] > values[best]) best = k;
  }
  return best;
}

Distribution one_hot(std::size_t cls) {
  if (cls >= kNumClasses) throw std::out_of_range("class index out of range: " + std::to_string(cls));
  Distribution d{};
  d[cls] = 1.0;
  return d;
}

Distribution embed_digits(std::span<const double> ten_class) {
  if (ten_class.size() == kNumClasses) {
    Distribution d{};
    for (std::size_t k = 0; k < kNumClasses; ++k) d[k] = ten_class[k];
    return d;
  }
  if (ten_class.size() != kNumDigits) {
    throw std::invalid_argument("expected a 10- or 11-class distribution, got " +
                                std::to_string(ten_class.size()) + " entries");
  }
  Distribution d{};
  for (std::size_t k = 0; k < kNumDigits; ++k) d[k] = ten_class[k];
  return d;
}

bool is_normalized(std::span<const double> values, double tol) {
  double sum = 0.0;
  for (double v : values) {
    if (!std::isfinite(v) || v < 0.0) return false;
    sum += v;
  }
  return std::abs(sum - 1.0) <= tol;
}

void require_normalized(std::span<const double> values, const std::string& what, double tol) {
  if (!is_normalized(values, tol)) {
    double sum = 0.0;
    for (double v : values) sum += v;
    throw std::invalid_argument(what + " is not a probability distribution (sum=" +
                                std::to_string(sum) + ")");
  }
}

std::size_t support_size(const Distribution& d) {
  std::size_t n = 0;
  for (double v : d) n += v > 0.0 ? 1 : 0;
  return n;
}

}  // namespace hlv
