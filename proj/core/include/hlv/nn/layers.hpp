#pragma once

#include <Eigen/Core>

#include <cstddef>
#include <memory>
#include <span>
#include <string>

#include "hlv/common/rng.hpp"

namespace hlv::nn {

/// Batch-major activations: one sample per row.
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Stateless layer. Parameters live in the owning model's flat vector and are
/// passed in as spans, so a model can be copied and shared across threads.
/// Spatial layers use channel-last (H, W, C) per-sample layout.
class Layer {
 public:
  virtual ~Layer() = default;

  virtual std::string name() const = 0;
  virtual std::size_t input_size() const = 0;
  virtual std::size_t output_size() const = 0;
  virtual std::size_t param_count() const { return 0; }
  /// Number of inputs feeding each output unit (drives initialization scale).
  virtual std::size_t fan_in() const { return input_size(); }

  virtual void forward(std::span<const double> params, const Matrix& in, Matrix& out) const = 0;

  /// Writes dL/d(in) into grad_in and accumulates dL/d(params) into grad_params.
  virtual void backward(std::span<const double> params, const Matrix& in, const Matrix& out,
                        const Matrix& grad_out, Matrix& grad_in,
                        std::span<double> grad_params) const = 0;
};

/// Fully connected: out = in * W + b, W stored (in x out) row-major, then b.
class Dense final : public Layer {
 public:
  Dense(std::size_t inputs, std::size_t outputs) : inputs_(inputs), outputs_(outputs) {}

  std::string name() const override { return "dense"; }
  std::size_t input_size() const override { return inputs_; }
  std::size_t output_size() const override { return outputs_; }
  std::size_t param_count() const override { return inputs_ * outputs_ + outputs_; }

  void forward(std::span<const double> params, const Matrix& in, Matrix& out) const override;
  void backward(std::span<const double> params, const Matrix& in, const Matrix& out,
                const Matrix& grad_out, Matrix& grad_in,
                std::span<double> grad_params) const override;

 private:
  std::size_t inputs_;
  std::size_t outputs_;
};

class Relu final : public Layer {
 public:
  explicit Relu(std::size_t size) : size_(size) {}
  std::string name() const override { return "relu"; }
  std::size_t input_size() const override { return size_; }
  std::size_t output_size() const override { return size_; }
  void forward(std::span<const double> params, const Matrix& in, Matrix& out) const override;
  void backward(std::span<const double> params, const Matrix& in, const Matrix& out,
                const Matrix& grad_out, Matrix& grad_in,
                std::span<double> grad_params) const override;

 private:
  std::size_t size_;
};

class Tanh final : public Layer {
 public:
  explicit Tanh(std::size_t size) : size_(size) {}
  std::string name() const override { return "tanh"; }
  std::size_t input_size() const override { return size_; }
  std::size_t output_size() const override { return size_; }
  void forward(std::span<const double> params, const Matrix& in, Matrix& out) const override;
  void backward(std::span<const double> params, const Matrix& in, const Matrix& out,
                const Matrix& grad_out, Matrix& grad_in,
                std::span<double> grad_params) const override;

 private:
  std::size_t size_;
};

struct ConvShape {
  std::size_t height = 0;
  std::size_t width = 0;
  std::size_t in_channels = 0;
  std::size_t out_channels = 0;
  std::size_t kernel = 0;
  std::size_t padding = 0;

  std::size_t out_height() const { return height + 2 * padding - kernel + 1; }
  std::size_t out_width() const { return width + 2 * padding - kernel + 1; }
  std::size_t patch_size() const { return kernel * kernel * in_channels; }
};

/// Stride-1 2-D convolution via im2col. Weights stored (k*k*C_in x C_out), then bias.
class Conv2d final : public Layer {
 public:
  explicit Conv2d(ConvShape shape);

  std::string name() const override { return "conv2d"; }
  std::size_t input_size() const override { return s_.height * s_.width * s_.in_channels; }
  std::size_t output_size() const override {
    return s_.out_height() * s_.out_width() * s_.out_channels;
  }
  std::size_t param_count() const override {
    return s_.patch_size() * s_.out_channels + s_.out_channels;
  }
  std::size_t fan_in() const override { return s_.patch_size(); }
  const ConvShape& shape() const { return s_; }

  void forward(std::span<const double> params, const Matrix& in, Matrix& out) const override;
  void backward(std::span<const double> params, const Matrix& in, const Matrix& out,
                const Matrix& grad_out, Matrix& grad_in,
                std::span<double> grad_params) const override;

 private:
  void im2col(const Matrix& in, Matrix& cols) const;
  void col2im(const Matrix& cols, Matrix& grad_in) const;

  ConvShape s_;
};

/// Non-overlapping 2x2 average pooling (odd trailing rows/columns dropped).
class MeanPool2d final : public Layer {
 public:
  MeanPool2d(std::size_t height, std::size_t width, std::size_t channels)
      : height_(height), width_(width), channels_(channels) {}

  std::string name() const override { return "meanpool2d"; }
  std::size_t input_size() const override { return height_ * width_ * channels_; }
  std::size_t output_size() const override { return (height_ / 2) * (width_ / 2) * channels_; }
  void forward(std::span<const double> params, const Matrix& in, Matrix& out) const override;
  void backward(std::span<const double> params, const Matrix& in, const Matrix& out,
                const Matrix& grad_out, Matrix& grad_in,
                std::span<double> grad_params) const override;

 private:
  std::size_t height_;
  std::size_t width_;
  std::size_t channels_;
};

/// Fills a layer's parameter block uniformly in +-sqrt(1/fan_in).
void init_uniform_fan_in(const Layer& layer, std::span<double> params, Rng& rng);

}  // namespace hlv::nn
