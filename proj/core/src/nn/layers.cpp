#include "hlv/nn/layers.hpp"

#include <cmath>
#include <stdexcept>

namespace hlv::nn {

namespace {

using ConstMap = Eigen::Map<const Matrix>;
using MutMap = Eigen::Map<Matrix>;
using RowVec = Eigen::Matrix<double, 1, Eigen::Dynamic>;

void require_width(const Layer& layer, const Matrix& in) {
  if (static_cast<std::size_t>(in.cols()) != layer.input_size()) {
    throw std::invalid_argument(layer.name() + ": expected " + std::to_string(layer.input_size()) +
                                " inputs per sample, got " + std::to_string(in.cols()));
  }
}

}  // namespace

void Dense::forward(std::span<const double> params, const Matrix& in, Matrix& out) const {
  require_width(*this, in);
  const ConstMap w(params.data(), inputs_, outputs_);
  const Eigen::Map<const RowVec> b(params.data() + inputs_ * outputs_, outputs_);
  out.noalias() = in * w;
  out.rowwise() += b;
}

void Dense::backward(std::span<const double> params, const Matrix& in, const Matrix&,
                     const Matrix& grad_out, Matrix& grad_in, std::span<double> grad_params) const {
  const ConstMap w(params.data(), inputs_, outputs_);
  MutMap gw(grad_params.data(), inputs_, outputs_);
  Eigen::Map<RowVec> gb(grad_params.data() + inputs_ * outputs_, outputs_);
  gw.noalias() += in.transpose() * grad_out;
  gb += grad_out.colwise().sum();
  grad_in.noalias() = grad_out * w.transpose();
}

void Relu::forward(std::span<const double>, const Matrix& in, Matrix& out) const {
  require_width(*this, in);
  out = in.cwiseMax(0.0);
}

void Relu::backward(std::span<const double>, const Matrix& in, const Matrix&,
                    const Matrix& grad_out, Matrix& grad_in, std::span<double>) const {
  grad_in = (in.array() > 0.0).select(grad_out.array(), 0.0).matrix();
}

void Tanh::forward(std::span<const double>, const Matrix& in, Matrix& out) const {
  require_width(*this, in);
  out = in.array().tanh().matrix();
}

void Tanh::backward(std::span<const double>, const Matrix&, const Matrix& out,
                    const Matrix& grad_out, Matrix& grad_in, std::span<double>) const {
  grad_in = (grad_out.array() * (1.0 - out.array().square())).matrix();
}

Conv2d::Conv2d(ConvShape shape) : s_(shape) {
  if (s_.kernel == 0 || s_.in_channels == 0 || s_.out_channels == 0 ||
      s_.height + 2 * s_.padding < s_.kernel || s_.width + 2 * s_.padding < s_.kernel) {
    throw std::invalid_argument("conv2d: invalid shape");
  }
}

void Conv2d::im2col(const Matrix& in, Matrix& cols) const {
  const std::size_t batch = static_cast<std::size_t>(in.rows());
  const std::size_t oh = s_.out_height(), ow = s_.out_width();
  const std::size_t positions = oh * ow;
  const std::size_t c = s_.in_channels, k = s_.kernel;
  cols.setZero(static_cast<Eigen::Index>(batch * positions), static_cast<Eigen::Index>(s_.patch_size()));
  for (std::size_t b = 0; b < batch; ++b) {
    const double* src = in.row(static_cast<Eigen::Index>(b)).data();
    for (std::size_t oy = 0; oy < oh; ++oy) {
      for (std::size_t ox = 0; ox < ow; ++ox) {
        double* dst = cols.row(static_cast<Eigen::Index>(b * positions + oy * ow + ox)).data();
        for (std::size_t ky = 0; ky < k; ++ky) {
          const std::ptrdiff_t iy = static_cast<std::ptrdiff_t>(oy + ky) - static_cast<std::ptrdiff_t>(s_.padding);
          if (iy < 0 || iy >= static_cast<std::ptrdiff_t>(s_.height)) continue;
          for (std::size_t kx = 0; kx < k; ++kx) {
            const std::ptrdiff_t ix = static_cast<std::ptrdiff_t>(ox + kx) - static_cast<std::ptrdiff_t>(s_.padding);
            if (ix < 0 || ix >= static_cast<std::ptrdiff_t>(s_.width)) continue;
            const double* px = src + (static_cast<std::size_t>(iy) * s_.width + static_cast<std::size_t>(ix)) * c;
            double* q = dst + (ky * k + kx) * c;
            for (std::size_t ch = 0; ch < c; ++ch) q[ch] = px[ch];
          }
        }
      }
    }
  }
}

void Conv2d::col2im(const Matrix& cols, Matrix& grad_in) const {
  const std::size_t batch = static_cast<std::size_t>(grad_in.rows());
  const std::size_t oh = s_.out_height(), ow = s_.out_width();
  const std::size_t positions = oh * ow;
  const std::size_t c = s_.in_channels, k = s_.kernel;
  for (std::size_t b = 0; b < batch; ++b) {
    double* dst = grad_in.row(static_cast<Eigen::Index>(b)).data();
    for (std::size_t oy = 0; oy < oh; ++oy) {
      for (std::size_t ox = 0; ox < ow; ++ox) {
        const double* src = cols.row(static_cast<Eigen::Index>(b * positions + oy * ow + ox)).data();
        for (std::size_t ky = 0; ky < k; ++ky) {
          const std::ptrdiff_t iy = static_cast<std::ptrdiff_t>(oy + ky) - static_cast<std::ptrdiff_t>(s_.padding);
          if (iy < 0 || iy >= static_cast<std::ptrdiff_t>(s_.height)) continue;
          for (std::size_t kx = 0; kx < k; ++kx) {
            const std::ptrdiff_t ix = static_cast<std::ptrdiff_t>(ox + kx) - static_cast<std::ptrdiff_t>(s_.padding);
            if (ix < 0 || ix >= static_cast<std::ptrdiff_t>(s_.width)) continue;
            double* px = dst + (static_cast<std::size_t>(iy) * s_.width + static_cast<std::size_t>(ix)) * c;
            const double* q = src + (ky * k + kx) * c;
            for (std::size_t ch = 0; ch < c; ++ch) px[ch] += q[ch];
          }
        }
      }
    }
  }
}

void Conv2d::forward(std::span<const double> params, const Matrix& in, Matrix& out) const {
  require_width(*this, in);
  const auto batch = in.rows();
  const auto positions = static_cast<Eigen::Index>(s_.out_height() * s_.out_width());
  const auto cout = static_cast<Eigen::Index>(s_.out_channels);
  const ConstMap w(params.data(), static_cast<Eigen::Index>(s_.patch_size()), cout);
  const Eigen::Map<const RowVec> bias(params.data() + s_.patch_size() * s_.out_channels, cout);

  Matrix cols;
  im2col(in, cols);
  out.resize(batch, positions * cout);
  MutMap flat(out.data(), batch * positions, cout);
  flat.noalias() = cols * w;
  flat.rowwise() += bias;
}

void Conv2d::backward(std::span<const double> params, const Matrix& in, const Matrix&,
                      const Matrix& grad_out, Matrix& grad_in, std::span<double> grad_params) const {
  const auto batch = in.rows();
  const auto positions = static_cast<Eigen::Index>(s_.out_height() * s_.out_width());
  const auto cout = static_cast<Eigen::Index>(s_.out_channels);
  const auto patch = static_cast<Eigen::Index>(s_.patch_size());
  const ConstMap w(params.data(), patch, cout);
  MutMap gw(grad_params.data(), patch, cout);
  Eigen::Map<RowVec> gb(grad_params.data() + s_.patch_size() * s_.out_channels, cout);
  const ConstMap g(grad_out.data(), batch * positions, cout);

  Matrix cols;
  im2col(in, cols);
  gw.noalias() += cols.transpose() * g;
  gb += g.colwise().sum();

  Matrix grad_cols = g * w.transpose();
  grad_in.setZero(batch, static_cast<Eigen::Index>(input_size()));
  col2im(grad_cols, grad_in);
}

void MeanPool2d::forward(std::span<const double>, const Matrix& in, Matrix& out) const {
  require_width(*this, in);
  const std::size_t oh = height_ / 2, ow = width_ / 2, c = channels_;
  out.resize(in.rows(), static_cast<Eigen::Index>(output_size()));
  for (Eigen::Index b = 0; b < in.rows(); ++b) {
    const double* src = in.row(b).data();
    double* dst = out.row(b).data();
    for (std::size_t oy = 0; oy < oh; ++oy) {
      for (std::size_t ox = 0; ox < ow; ++ox) {
        const double* p00 = src + ((2 * oy) * width_ + 2 * ox) * c;
        const double* p01 = p00 + c;
        const double* p10 = p00 + width_ * c;
        const double* p11 = p10 + c;
        double* q = dst + (oy * ow + ox) * c;
        for (std::size_t ch = 0; ch < c; ++ch) q[ch] = 0.25 * (p00[ch] + p01[ch] + p10[ch] + p11[ch]);
      }
    }
  }
}

void MeanPool2d::backward(std::span<const double>, const Matrix& in, const Matrix&,
                          const Matrix& grad_out, Matrix& grad_in, std::span<double>) const {
  const std::size_t oh = height_ / 2, ow = width_ / 2, c = channels_;
  grad_in.setZero(in.rows(), in.cols());
  for (Eigen::Index b = 0; b < in.rows(); ++b) {
    const double* g = grad_out.row(b).data();
    double* dst = grad_in.row(b).data();
    for (std::size_t oy = 0; oy < oh; ++oy) {
      for (std::size_t ox = 0; ox < ow; ++ox) {
        double* p00 = dst + ((2 * oy) * width_ + 2 * ox) * c;
        double* p01 = p00 + c;
        double* p10 = p00 + width_ * c;
        double* p11 = p10 + c;
        const double* q = g + (oy * ow + ox) * c;
        for (std::size_t ch = 0; ch < c; ++ch) {
          const double share = 0.25 * q[ch];
          p00[ch] += share;
          p01[ch] += share;
          p10[ch] += share;
          p11[ch] += share;
        }
      }
    }
  }
}

void init_uniform_fan_in(const Layer& layer, std::span<double> params, Rng& rng) {
  const double bound = std::sqrt(1.0 / static_cast<double>(layer.fan_in()));
  for (double& p : params) p = rng.uniform(-bound, bound);
}

}  // namespace hlv::nn
