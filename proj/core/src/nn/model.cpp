#include "hlv/nn/model.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include "hlv/nn/loss.hpp"

namespace hlv::nn {

std::string to_string(ArchKind kind) {
  switch (kind) {
    case ArchKind::SimpleFFN: return "simple";
    case ArchKind::DeeperFFN: return "deeper";
    case ArchKind::LeNet: return "lenet";
  }
  return "unknown";
}

ArchKind parse_arch(std::string_view text) {
  if (text == "simple" || text == "SimpleFFN") return ArchKind::SimpleFFN;
  if (text == "deeper" || text == "DeeperFFN") return ArchKind::DeeperFFN;
  if (text == "lenet" || text == "LeNet") return ArchKind::LeNet;
  throw std::invalid_argument("unknown architecture: " + std::string(text));
}

namespace {

std::vector<std::shared_ptr<const Layer>> make_layers(const ModelArch& arch) {
  std::vector<std::shared_ptr<const Layer>> layers;
  const std::size_t out = arch.output_dim;
  switch (arch.kind) {
    case ArchKind::SimpleFFN:
      layers.push_back(std::make_shared<Dense>(kNumPixels, 128));
      layers.push_back(std::make_shared<Relu>(128));
      layers.push_back(std::make_shared<Dense>(128, out));
      break;
    case ArchKind::DeeperFFN:
      layers.push_back(std::make_shared<Dense>(kNumPixels, 256));
      layers.push_back(std::make_shared<Relu>(256));
      layers.push_back(std::make_shared<Dense>(256, 128));
      layers.push_back(std::make_shared<Relu>(128));
      layers.push_back(std::make_shared<Dense>(128, out));
      break;
    case ArchKind::LeNet: {
      // 28x28x1 -> conv5 pad2 -> 28x28x6 -> pool -> 14x14x6 -> conv5 -> 10x10x16 -> pool -> 5x5x16
      auto c1 = std::make_shared<Conv2d>(ConvShape{28, 28, 1, 6, 5, 2});
      auto c2 = std::make_shared<Conv2d>(ConvShape{14, 14, 6, 16, 5, 0});
      layers.push_back(c1);
      layers.push_back(std::make_shared<Tanh>(c1->output_size()));
      layers.push_back(std::make_shared<MeanPool2d>(28, 28, 6));
      layers.push_back(c2);
      layers.push_back(std::make_shared<Tanh>(c2->output_size()));
      layers.push_back(std::make_shared<MeanPool2d>(10, 10, 16));
      layers.push_back(std::make_shared<Dense>(400, 120));
      layers.push_back(std::make_shared<Tanh>(120));
      layers.push_back(std::make_shared<Dense>(120, 84));
      layers.push_back(std::make_shared<Tanh>(84));
      layers.push_back(std::make_shared<Dense>(84, out));
      break;
    }
  }
  return layers;
}

constexpr char kMagic[4] = {'H', 'L', 'V', 'M'};
constexpr std::uint32_t kFormatVersion = 1;

}  // namespace

Model::Model(ModelArch arch, std::vector<std::shared_ptr<const Layer>> layers)
    : arch_(arch), layers_(std::move(layers)) {
  if (layers_.empty()) throw std::invalid_argument("model needs at least one layer");
  std::size_t total = 0;
  for (std::size_t i = 0; i < layers_.size(); ++i) {
    if (i > 0 && layers_[i]->input_size() != layers_[i - 1]->output_size()) {
      throw std::invalid_argument("layer " + std::to_string(i) + " (" + layers_[i]->name() +
                                  ") input size does not match previous output");
    }
    offsets_.push_back(total);
    total += layers_[i]->param_count();
  }
  offsets_.push_back(total);
  params_.assign(total, 0.0);
}

Model Model::build(ModelArch arch, std::uint64_t seed) {
  Model model(arch, make_layers(arch));
  Rng rng(derive_seed({seed, 0x1417ULL}));
  for (std::size_t i = 0; i < model.layers_.size(); ++i) {
    const auto n = model.layers_[i]->param_count();
    if (n == 0) continue;
    init_uniform_fan_in(*model.layers_[i], std::span<double>(model.params_).subspan(model.offsets_[i], n), rng);
  }
  return model;
}

Matrix Model::forward(const Matrix& inputs) const {
  Matrix current = inputs;
  Matrix next;
  for (std::size_t i = 0; i < layers_.size(); ++i) {
    const auto block = std::span<const double>(params_).subspan(offsets_[i], layers_[i]->param_count());
    layers_[i]->forward(block, current, next);
    current.swap(next);
  }
  return current;
}

double Model::loss_and_gradient(const Matrix& inputs, const Matrix& targets, std::span<double> grad) const {
  if (grad.size() != params_.size()) throw std::invalid_argument("gradient buffer has wrong size");
  std::vector<Matrix> acts(layers_.size() + 1);
  acts[0] = inputs;
  for (std::size_t i = 0; i < layers_.size(); ++i) {
    const auto block = std::span<const double>(params_).subspan(offsets_[i], layers_[i]->param_count());
    layers_[i]->forward(block, acts[i], acts[i + 1]);
  }
  LossResult lr = soft_cross_entropy(acts.back(), targets);

  std::fill(grad.begin(), grad.end(), 0.0);
  Matrix g = std::move(lr.grad_logits);
  Matrix g_in;
  for (std::size_t i = layers_.size(); i-- > 0;) {
    const auto n = layers_[i]->param_count();
    const auto block = std::span<const double>(params_).subspan(offsets_[i], n);
    layers_[i]->backward(block, acts[i], acts[i + 1], g, g_in, grad.subspan(offsets_[i], n));
    g.swap(g_in);
  }
  return lr.loss;
}

Matrix Model::predict_proba(const Matrix& inputs, std::size_t chunk) const {
  if (chunk == 0) chunk = 1;
  Matrix probs(inputs.rows(), static_cast<Eigen::Index>(output_size()));
  for (Eigen::Index start = 0; start < inputs.rows(); start += static_cast<Eigen::Index>(chunk)) {
    const Eigen::Index n = std::min<Eigen::Index>(static_cast<Eigen::Index>(chunk), inputs.rows() - start);
    probs.middleRows(start, n) = softmax(forward(inputs.middleRows(start, n)));
  }
  return probs;
}

void Model::save(const std::filesystem::path& path) const {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write model to " + path.string());
  const auto kind = static_cast<std::uint32_t>(arch_.kind);
  const auto outputs = static_cast<std::uint64_t>(arch_.output_dim);
  const auto count = static_cast<std::uint64_t>(params_.size());
  out.write(kMagic, sizeof kMagic);
  out.write(reinterpret_cast<const char*>(&kFormatVersion), sizeof kFormatVersion);
  out.write(reinterpret_cast<const char*>(&kind), sizeof kind);
  out.write(reinterpret_cast<const char*>(&outputs), sizeof outputs);
  out.write(reinterpret_cast<const char*>(&count), sizeof count);
  out.write(reinterpret_cast<const char*>(params_.data()),
            static_cast<std::streamsize>(params_.size() * sizeof(double)));
  if (!out) throw std::runtime_error("failed writing model to " + path.string());
}

Model Model::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open model " + path.string());
  char magic[4];
  std::uint32_t version = 0, kind = 0;
  std::uint64_t outputs = 0, count = 0;
  in.read(magic, sizeof magic);
  in.read(reinterpret_cast<char*>(&version), sizeof version);
  in.read(reinterpret_cast<char*>(&kind), sizeof kind);
  in.read(reinterpret_cast<char*>(&outputs), sizeof outputs);
  in.read(reinterpret_cast<char*>(&count), sizeof count);
  if (!in || std::memcmp(magic, kMagic, sizeof magic) != 0 || version != kFormatVersion || kind > 2) {
    throw std::runtime_error("not a model file: " + path.string());
  }
  Model model = build(ModelArch{static_cast<ArchKind>(kind), static_cast<std::size_t>(outputs)}, 0);
  if (count != model.params_.size()) throw std::runtime_error("parameter count mismatch in " + path.string());
  in.read(reinterpret_cast<char*>(model.params_.data()), static_cast<std::streamsize>(count * sizeof(double)));
  if (!in) throw std::runtime_error("truncated model file " + path.string());
  return model;
}

}  // namespace hlv::nn
