#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace hlv {

inline constexpr std::size_t kNumDigits = 10;
/// Ten digits plus the "not a digit" class.
inline constexpr std::size_t kNumClasses = 11;
inline constexpr std::size_t kNanClass = 10;
inline constexpr std::size_t kImageSide = 28;
inline constexpr std::size_t kNumPixels = kImageSide * kImageSide;

/// Probability vector over the 11-class prediction space.
using Distribution = std::array<double, kNumClasses>;

/// Default tolerance for "sums to one" checks on targets and predictions.
inline constexpr double kSimplexTolerance = 1e-9;

/// Index of the largest entry; ties go to the lowest index.
std::size_t argmax(std::span<const double> values);
inline std::size_t argmax(const Distribution& d) { return argmax(std::span<const double>(d)); }

Distribution one_hot(std::size_t cls);

/// Embeds a 10-class distribution (or a bare digit label) into the 11-class space with zero NaN mass.
Distribution embed_digits(std::span<const double> ten_class);

bool is_normalized(std::span<const double> values, double tol = kSimplexTolerance);

/// Throws std::invalid_argument naming `what` if the vector is not a probability distribution.
void require_normalized(std::span<const double> values, const std::string& what,
                        double tol = kSimplexTolerance);

/// Number of strictly positive entries.
std::size_t support_size(const Distribution& d);

}  // namespace hlv
