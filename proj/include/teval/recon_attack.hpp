// Copyright 2026 The tandem-eval Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TEVAL_RECON_ATTACK_HPP
#define TEVAL_RECON_ATTACK_HPP

#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <string_view>
#include <type_traits>
#include <vector>

#include <Eigen/Core>

#include "teval/error.hpp"
#include "teval/types.hpp"

namespace teval {

// Embedding reconstruction attack: a regressor F mapping anonymized speaker
// embeddings back to the originals, trained on pairs of (anonymized, raw)
// examples through two weight-shared branches. The loss for a pair of pairs
// is
//
//   w_r * (|F(a1) - r1|^2 + |F(a2) - r2|^2) + w_c * phi(cos(F(a1), F(a2)) - d)
//
// where d = 1 when both pairs come from the same datum and 0 otherwise, and
// phi is x^2 (default) or |x|.

template <typename Scalar>
struct DenseLayer {
  Matrix<Scalar> weight;  // out x in
  Vector<Scalar> bias;
};

template <typename Scalar>
using ParameterSet = std::vector<DenseLayer<Scalar>>;

template <typename Scalar>
struct EmbeddingPair {
  Vector<Scalar> x_anon;
  Vector<Scalar> x_raw;
  std::string datum_id;
};

enum class CosinePenalty { kSquared, kAbsolute };

struct LossConfig {
  double reconstruction_weight = 1.0;
  double cosine_weight = 1.0;
  CosinePenalty penalty = CosinePenalty::kSquared;
};

inline int delta(std::string_view id1, std::string_view id2) {
  return id1 == id2 ? 1 : 0;
}

/// Feed-forward net with tanh hidden layers and a linear output layer.
template <typename Scalar>
class ReconNet {
 public:
  // Zero-initialised layers for dims = {d, h1, ..., d}.
  explicit ReconNet(std::vector<int> dims) : dims_(std::move(dims)) {
    if (dims_.size() < 2) {
      throw Error(ErrorCategory::kShape, "net needs at least two layer sizes");
    }
    if (dims_.front() != dims_.back()) {
      throw Error(ErrorCategory::kShape,
                  "net input and output dimensions must match");
    }
    for (std::size_t l = 0; l + 1 < dims_.size(); ++l) {
      if (dims_[l] < 1 || dims_[l + 1] < 1) {
        throw Error(ErrorCategory::kShape, "layer sizes must be positive");
      }
      layers_.push_back({Matrix<Scalar>::Zero(dims_[l + 1], dims_[l]),
                         Vector<Scalar>::Zero(dims_[l + 1])});
    }
  }

  // Single linear layer computing x -> x.
  static ReconNet identity(int d) {
    ReconNet net({d, d});
    net.layers_[0].weight.setIdentity();
    return net;
  }

  // Weights and biases uniform in [-1/sqrt(fan_in), 1/sqrt(fan_in)].
  static ReconNet random(std::vector<int> dims, std::uint64_t seed) {
    ReconNet net(std::move(dims));
    std::mt19937_64 engine(seed);
    for (auto& layer : net.layers_) {
      const Scalar bound = Scalar(1) / std::sqrt(Scalar(layer.weight.cols()));
      auto draw = [&]() {
        const Scalar u = Scalar(static_cast<double>(engine() >> 11) * 0x1.0p-53);
        return (Scalar(2) * u - Scalar(1)) * bound;
      };
      for (Eigen::Index i = 0; i < layer.weight.size(); ++i) {
        layer.weight.data()[i] = draw();
      }
      for (Eigen::Index i = 0; i < layer.bias.size(); ++i) {
        layer.bias[i] = draw();
      }
    }
    return net;
  }

  const std::vector<int>& dims() const { return dims_; }
  int dim() const { return dims_.front(); }
  ParameterSet<Scalar>& layers() { return layers_; }
  const ParameterSet<Scalar>& layers() const { return layers_; }

  Vector<Scalar> forward(const Eigen::Ref<const Vector<Scalar>>& x) const {
    check_input(x);
    Vector<Scalar> a = x;
    for (std::size_t l = 0; l < layers_.size(); ++l) {
      a = layers_[l].weight * a + layers_[l].bias;
      if (l + 1 < layers_.size()) a = a.array().tanh().matrix();
    }
    return a;
  }

  // Activations of every layer, input first; used for backpropagation.
  std::vector<Vector<Scalar>> trace(
      const Eigen::Ref<const Vector<Scalar>>& x) const {
    check_input(x);
    std::vector<Vector<Scalar>> acts{x};
    for (std::size_t l = 0; l < layers_.size(); ++l) {
      Vector<Scalar> z = layers_[l].weight * acts.back() + layers_[l].bias;
      if (l + 1 < layers_.size()) z = z.array().tanh().matrix();
      acts.push_back(std::move(z));
    }
    return acts;
  }

  // Accumulates d(loss)/d(params) into grad given d(loss)/d(output).
  void backward(const std::vector<Vector<Scalar>>& acts,
                Vector<Scalar> upstream, ParameterSet<Scalar>& grad) const {
    for (std::size_t l = layers_.size(); l-- > 0;) {
      grad[l].weight.noalias() += upstream * acts[l].transpose();
      grad[l].bias += upstream;
      if (l == 0) break;
      upstream = layers_[l].weight.transpose() * upstream;
      upstream.array() *= Scalar(1) - acts[l].array().square();
    }
  }

  ParameterSet<Scalar> zero_like() const {
    ParameterSet<Scalar> out;
    for (const auto& layer : layers_) {
      out.push_back({Matrix<Scalar>::Zero(layer.weight.rows(),
                                          layer.weight.cols()),
                     Vector<Scalar>::Zero(layer.bias.size())});
    }
    return out;
  }

  Eigen::Index num_parameters() const {
    Eigen::Index n = 0;
    for (const auto& layer : layers_) n += layer.weight.size() + layer.bias.size();
    return n;
  }

  bool all_finite() const {
    for (const auto& layer : layers_) {
      if (!layer.weight.allFinite() || !layer.bias.allFinite()) return false;
    }
    return true;
  }

 private:
  void check_input(const Eigen::Ref<const Vector<Scalar>>& x) const {
    if (x.size() != dim()) {
      throw Error(ErrorCategory::kShape,
                  "embedding has dimension " + std::to_string(x.size()) +
                      ", net expects " + std::to_string(dim()));
    }
  }

  std::vector<int> dims_;
  ParameterSet<Scalar> layers_;
};

// Column-major weights then bias, layer by layer.
template <typename Scalar>
Vector<Scalar> flatten(const ParameterSet<Scalar>& params) {
  Eigen::Index n = 0;
  for (const auto& layer : params) n += layer.weight.size() + layer.bias.size();
  Vector<Scalar> out(n);
  Eigen::Index k = 0;
  for (const auto& layer : params) {
    out.segment(k, layer.weight.size()) = layer.weight.reshaped();
    k += layer.weight.size();
    out.segment(k, layer.bias.size()) = layer.bias;
    k += layer.bias.size();
  }
  return out;
}

template <typename Scalar>
void unflatten(const Eigen::Ref<const Vector<Scalar>>& flat,
               ParameterSet<Scalar>& params) {
  Eigen::Index k = 0;
  for (auto& layer : params) {
    layer.weight.reshaped() = flat.segment(k, layer.weight.size());
    k += layer.weight.size();
    layer.bias = flat.segment(k, layer.bias.size());
    k += layer.bias.size();
  }
}

template <typename Scalar>
Vector<Scalar> reconstruct(
    const ReconNet<Scalar>& net,
    const std::type_identity_t<Eigen::Ref<const Vector<Scalar>>>& x_anon) {
  return net.forward(x_anon);
}

namespace detail {

template <typename Scalar>
Scalar checked_norm(const Vector<Scalar>& v) {
  const Scalar n = v.norm();
  if (!(n >= Scalar(1e-12))) {
    throw Error(ErrorCategory::kDegenerateCosine,
                "reconstructed embedding has (near) zero norm");
  }
  return n;
}

// A single square root keeps cos(u, u) == 1 exactly.
template <typename Scalar>
Scalar cosine(const Vector<Scalar>& u, const Vector<Scalar>& v) {
  return u.dot(v) / std::sqrt(u.squaredNorm() * v.squaredNorm());
}

template <typename Scalar>
Scalar penalty(CosinePenalty shape, Scalar x) {
  return shape == CosinePenalty::kSquared ? x * x : std::abs(x);
}

template <typename Scalar>
Scalar penalty_slope(CosinePenalty shape, Scalar x) {
  if (shape == CosinePenalty::kSquared) return Scalar(2) * x;
  return x > 0 ? Scalar(1) : (x < 0 ? Scalar(-1) : Scalar(0));
}

}  // namespace detail

template <typename Scalar>
Scalar siamese_loss(const ReconNet<Scalar>& net, const EmbeddingPair<Scalar>& p1,
                    const EmbeddingPair<Scalar>& p2,
                    const LossConfig& config = {}) {
  const Vector<Scalar> u = net.forward(p1.x_anon);
  const Vector<Scalar> v = net.forward(p2.x_anon);
  if (p1.x_raw.size() != u.size() || p2.x_raw.size() != v.size()) {
    throw Error(ErrorCategory::kShape, "raw embedding dimension mismatch");
  }
  detail::checked_norm(u);
  detail::checked_norm(v);
  const Scalar cosine = detail::cosine(u, v);
  const Scalar target = Scalar(delta(p1.datum_id, p2.datum_id));
  return Scalar(config.reconstruction_weight) *
             ((u - p1.x_raw).squaredNorm() + (v - p2.x_raw).squaredNorm()) +
         Scalar(config.cosine_weight) *
             detail::penalty(config.penalty, cosine - target);
}

template <typename Scalar>
struct LossGradient {
  Scalar loss;
  ParameterSet<Scalar> grad;
};

/// Exact gradient of siamese_loss by backpropagation through both branches.
/// When accumulate_into is given the gradient is added to it and the
/// returned grad is left empty.
template <typename Scalar>
LossGradient<Scalar> loss_gradient(const ReconNet<Scalar>& net,
                                   const EmbeddingPair<Scalar>& p1,
                                   const EmbeddingPair<Scalar>& p2,
                                   const LossConfig& config = {},
                                   ParameterSet<Scalar>* accumulate_into = nullptr) {
  const auto acts1 = net.trace(p1.x_anon);
  const auto acts2 = net.trace(p2.x_anon);
  const Vector<Scalar>& u = acts1.back();
  const Vector<Scalar>& v = acts2.back();
  if (p1.x_raw.size() != u.size() || p2.x_raw.size() != v.size()) {
    throw Error(ErrorCategory::kShape, "raw embedding dimension mismatch");
  }
  const Scalar nu = detail::checked_norm(u);
  const Scalar nv = detail::checked_norm(v);
  const Scalar cosine = detail::cosine(u, v);
  const Scalar gap = cosine - Scalar(delta(p1.datum_id, p2.datum_id));
  const Scalar wr = Scalar(config.reconstruction_weight);
  const Scalar wc = Scalar(config.cosine_weight);

  LossGradient<Scalar> out;
  out.loss = wr * ((u - p1.x_raw).squaredNorm() + (v - p2.x_raw).squaredNorm()) +
             wc * detail::penalty(config.penalty, gap);

  // d cos / du = v / (|u||v|) - cos * u / |u|^2, symmetric in v.
  const Scalar slope = wc * detail::penalty_slope(config.penalty, gap);
  Vector<Scalar> du = Scalar(2) * wr * (u - p1.x_raw) +
                      slope * (v / (nu * nv) - cosine * u / (nu * nu));
  Vector<Scalar> dv = Scalar(2) * wr * (v - p2.x_raw) +
                      slope * (u / (nu * nv) - cosine * v / (nv * nv));

  ParameterSet<Scalar>* grad = accumulate_into;
  if (grad == nullptr) {
    out.grad = net.zero_like();
    grad = &out.grad;
  }
  net.backward(acts1, std::move(du), *grad);
  net.backward(acts2, std::move(dv), *grad);
  return out;
}

enum class InitScheme { kRandom, kIdentity };

struct TrainOptions {
  std::vector<int> hidden;  // empty: a single linear layer
  int epochs = 100;
  double learning_rate = 0.01;
  std::size_t batch_size = 16;
  // 0 selects max(1, number of pairs / batch_size).
  std::size_t steps_per_epoch = 0;
  std::size_t eval_batch_size = 64;
  std::uint64_t seed = 0;
  InitScheme init = InitScheme::kRandom;
  LossConfig loss;
};

template <typename Scalar>
struct TrainResult {
  ReconNet<Scalar> net;
  Scalar initial_loss;
  Scalar final_loss;
  int best_epoch;  // 0 is the initial net
  std::vector<Scalar> history;  // evaluation loss after each epoch
};

/// Draws pair-of-pairs: half share a datum (delta = 1), half do not.
class PairSampler {
 public:
  PairSampler(const std::vector<std::string>& datum_ids, std::uint64_t seed)
      : engine_(seed) {
    for (std::size_t i = 0; i < datum_ids.size(); ++i) {
      groups_[datum_ids[i]].push_back(i);
      owner_.push_back(datum_ids[i]);
    }
  }

  std::pair<std::size_t, std::size_t> draw(bool same_datum) {
    const std::size_t i = pick(owner_.size());
    if (same_datum || groups_.size() < 2) {
      const auto& group = groups_.at(owner_[i]);
      return {i, group[pick(group.size())]};
    }
    for (;;) {
      const std::size_t j = pick(owner_.size());
      if (owner_[j] != owner_[i]) return {i, j};
    }
  }

 private:
  std::size_t pick(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }

  std::mt19937_64 engine_;
  std::map<std::string, std::vector<std::size_t>> groups_;
  std::vector<std::string> owner_;
};

template <typename Scalar>
Scalar mean_batch_loss(
    const ReconNet<Scalar>& net, const std::vector<EmbeddingPair<Scalar>>& pairs,
    const std::vector<std::pair<std::size_t, std::size_t>>& batch,
    const LossConfig& config) {
  Scalar total(0);
  for (auto [i, j] : batch) total += siamese_loss(net, pairs[i], pairs[j], config);
  return total / Scalar(batch.size());
}

/// Plain mini-batch gradient descent. Returns the parameters with the lowest
/// loss on a fixed evaluation batch among the initial net and the end of
/// every epoch, so final_loss <= initial_loss. Deterministic given the seed.
template <typename Scalar>
TrainResult<Scalar> train(const std::vector<EmbeddingPair<Scalar>>& pairs,
                          const TrainOptions& options) {
  if (pairs.size() < 2) {
    throw Error(ErrorCategory::kDomain, "training needs at least two pairs");
  }
  const int d = static_cast<int>(pairs.front().x_anon.size());
  std::vector<std::string> ids;
  for (const auto& p : pairs) {
    if (p.x_anon.size() != d || p.x_raw.size() != d) {
      throw Error(ErrorCategory::kShape,
                  "pair '" + p.datum_id + "' does not have dimension " +
                      std::to_string(d));
    }
    ids.push_back(p.datum_id);
  }
  if (options.epochs < 0 || options.batch_size == 0 ||
      !(options.learning_rate > 0)) {
    throw Error(ErrorCategory::kDomain,
                "need epochs >= 0, batch size > 0 and learning rate > 0");
  }

  std::vector<int> dims{d};
  dims.insert(dims.end(), options.hidden.begin(), options.hidden.end());
  dims.push_back(d);
  ReconNet<Scalar> net = ReconNet<Scalar>::random(dims, options.seed);
  if (options.init == InitScheme::kIdentity) {
    if (!options.hidden.empty()) {
      throw Error(ErrorCategory::kDomain,
                  "identity initialisation needs a single linear layer");
    }
    net = ReconNet<Scalar>::identity(d);
  }

  PairSampler eval_sampler(ids, options.seed ^ 0x9e3779b97f4a7c15ULL);
  std::vector<std::pair<std::size_t, std::size_t>> eval_batch;
  for (std::size_t k = 0; k < options.eval_batch_size; ++k) {
    eval_batch.push_back(eval_sampler.draw(k % 2 == 0));
  }
  PairSampler sampler(ids, options.seed + 1);

  const std::size_t steps =
      options.steps_per_epoch > 0
          ? options.steps_per_epoch
          : std::max<std::size_t>(1, pairs.size() / options.batch_size);
  const Scalar step_size =
      Scalar(options.learning_rate) / Scalar(options.batch_size);

  TrainResult<Scalar> result{net, Scalar(0), Scalar(0), 0, {}};
  result.initial_loss = mean_batch_loss(net, pairs, eval_batch, options.loss);
  result.final_loss = result.initial_loss;

  for (int epoch = 1; epoch <= options.epochs; ++epoch) {
    for (std::size_t s = 0; s < steps; ++s) {
      ParameterSet<Scalar> grad = net.zero_like();
      for (std::size_t b = 0; b < options.batch_size; ++b) {
        auto [i, j] = sampler.draw(b % 2 == 0);
        loss_gradient(net, pairs[i], pairs[j], options.loss, &grad);
      }
      auto& layers = net.layers();
      for (std::size_t l = 0; l < layers.size(); ++l) {
        layers[l].weight -= step_size * grad[l].weight;
        layers[l].bias -= step_size * grad[l].bias;
      }
    }
    Scalar loss = net.all_finite()
                      ? mean_batch_loss(net, pairs, eval_batch, options.loss)
                      : Scalar(NAN);
    if (!std::isfinite(static_cast<double>(loss))) {
      throw Error(ErrorCategory::kDivergence,
                  "training loss became non-finite at epoch " +
                      std::to_string(epoch));
    }
    result.history.push_back(loss);
    if (loss < result.final_loss) {
      result.final_loss = loss;
      result.net = net;
      result.best_epoch = epoch;
    }
  }
  return result;
}

}  // namespace teval

#endif  // TEVAL_RECON_ATTACK_HPP
