#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hlv/common/types.hpp"
#include "hlv/nn/layers.hpp"

namespace hlv::nn {

enum class ArchKind { SimpleFFN, DeeperFFN, LeNet };

struct ModelArch {
  ArchKind kind = ArchKind::SimpleFFN;
  std::size_t output_dim = kNumClasses;
};

/// "simple" | "deeper" | "lenet" (CLI spelling).
std::string to_string(ArchKind kind);
ArchKind parse_arch(std::string_view text);

/// Sequential network over a flat, owned parameter vector.
/// Copying a model copies its parameters; layer definitions are shared and immutable.
class Model {
 public:
  Model(ModelArch arch, std::vector<std::shared_ptr<const Layer>> layers);

  /// Deterministic construction: identical (arch, seed) gives bit-identical parameters.
  static Model build(ModelArch arch, std::uint64_t seed);

  const ModelArch& arch() const { return arch_; }
  std::size_t input_size() const { return layers_.front()->input_size(); }
  std::size_t output_size() const { return layers_.back()->output_size(); }
  std::size_t param_count() const { return params_.size(); }
  std::span<const double> params() const { return params_; }
  std::span<double> mutable_params() { return params_; }
  const std::vector<std::shared_ptr<const Layer>>& layers() const { return layers_; }

  /// Logits, batch x output_size. Throws std::invalid_argument on input width mismatch.
  Matrix forward(const Matrix& inputs) const;

  /// Forward + soft-target cross-entropy + backprop. Overwrites `grad` (size param_count()).
  /// Returns the mean loss over the batch.
  double loss_and_gradient(const Matrix& inputs, const Matrix& targets, std::span<double> grad) const;

  /// Softmax probabilities computed in chunks of `chunk` rows to bound memory.
  Matrix predict_proba(const Matrix& inputs, std::size_t chunk = 256) const;

  void save(const std::filesystem::path& path) const;
  static Model load(const std::filesystem::path& path);

 private:
  ModelArch arch_;
  std::vector<std::shared_ptr<const Layer>> layers_;
  std::vector<std::size_t> offsets_;
  std::vector<double> params_;
};

}  // namespace hlv::nn
