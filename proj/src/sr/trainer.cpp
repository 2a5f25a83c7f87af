// Copyright 2026 The survx Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "survx/sr/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "survx/nn/init.hpp"

namespace survx::sr {

nn::Tensor image_to_tensor(const ImageTensor& img) {
  return nn::Tensor({static_cast<std::size_t>(img.channels()), static_cast<std::size_t>(img.height()),
                     static_cast<std::size_t>(img.width())},
                    img.samples());
}

ImageTensor tensor_to_image(const nn::Tensor& t) {
  const nn::Chw s = nn::chw_of(t);
  std::vector<double> v = t.values();
  for (double& x : v) x = std::isfinite(x) ? std::clamp(x, 0.0, 1.0) : 0.0;
  return ImageTensor(static_cast<int>(s.c), static_cast<int>(s.h), static_cast<int>(s.w), std::move(v));
}

namespace {

double patch_loss(const nn::Tensor& pred, const nn::Tensor& target) {
  double acc = 0.0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    const double d = pred[i] - target[i];
    acc += d * d;
  }
  return acc / static_cast<double>(pred.size());
}

class Stepper {
 public:
  Stepper(const TrainConfig& cfg, const nn::WeightStore& weights) : cfg_(cfg) {
    if (cfg.optimizer == Optimizer::kAdam) {
      for (const auto& [name, t] : weights) {
        m_.set(name, nn::Tensor(t.dims()));
        v_.set(name, nn::Tensor(t.dims()));
      }
    }
  }

  void apply(nn::WeightStore& weights, const nn::WeightStore& grads, double lr) {
    ++t_;
    for (const auto& [name, g] : grads) {
      nn::Tensor& w = weights.mutable_get(name);
      if (cfg_.optimizer == Optimizer::kSgd) {
        for (std::size_t i = 0; i < w.size(); ++i) w[i] -= lr * g[i];
        continue;
      }
      nn::Tensor& m = m_.mutable_get(name);
      nn::Tensor& v = v_.mutable_get(name);
      const double c1 = 1.0 - std::pow(cfg_.adam_beta1, t_);
      const double c2 = 1.0 - std::pow(cfg_.adam_beta2, t_);
      for (std::size_t i = 0; i < w.size(); ++i) {
        m[i] = cfg_.adam_beta1 * m[i] + (1.0 - cfg_.adam_beta1) * g[i];
        v[i] = cfg_.adam_beta2 * v[i] + (1.0 - cfg_.adam_beta2) * g[i] * g[i];
        w[i] -= lr * (m[i] / c1) / (std::sqrt(v[i] / c2) + cfg_.adam_eps);
      }
    }
  }

 private:
  const TrainConfig& cfg_;
  nn::WeightStore m_, v_;
  int t_ = 0;
};

void check_config(const TrainConfig& cfg) {
  if (!(cfg.lr_final > 0.0) || cfg.lr_final > cfg.lr_initial) {
    throw SrError(SrErrc::kInvalidConfig, "need 0 < lr_final <= lr_initial");
  }
  if (cfg.patience_epochs < 1 || cfg.batch_size < 1 || cfg.max_epochs < 1) {
    throw SrError(SrErrc::kInvalidConfig, "patience, batch size and epoch limit must be >= 1");
  }
  if (!(cfg.lr_decay > 0.0 && cfg.lr_decay < 1.0)) throw SrError(SrErrc::kInvalidConfig, "lr_decay must be in (0,1)");
}

}  // namespace

double dataset_mse(const nn::NetworkSpec& spec, const nn::WeightStore& weights, const std::vector<PatchPair>& patches) {
  double acc = 0.0;
  for (const auto& p : patches) {
    acc += patch_loss(nn::run(spec, weights, image_to_tensor(p.lr)), image_to_tensor(p.hr));
  }
  return acc / static_cast<double>(patches.size());
}

TrainResult train_espcn(const nn::NetworkSpec& spec, const std::vector<PatchPair>& patches, const TrainConfig& cfg,
                        const std::vector<PatchPair>& validation,
                        const std::function<void(const EpochLog&)>& on_epoch) {
  if (patches.empty()) throw SrError(SrErrc::kEmptyDataset, "no training patches");
  check_config(cfg);

  std::vector<nn::Tensor> inputs, targets;
  for (const auto& p : patches) {
    inputs.push_back(image_to_tensor(p.lr));
    targets.push_back(image_to_tensor(p.hr));
  }
  const auto& monitor = validation.empty() ? patches : validation;

  std::mt19937_64 rng(cfg.seed);
  nn::WeightStore weights = nn::init_weights(spec, rng());
  Stepper stepper(cfg, weights);

  TrainResult result;
  double lr = cfg.lr_initial;
  double train_loss = dataset_mse(spec, weights, patches);
  double val_loss = validation.empty() ? train_loss : dataset_mse(spec, weights, validation);
  double best = val_loss;
  result.weights = weights;
  result.log.push_back({0, train_loss, val_loss, best, lr});
  if (on_epoch) on_epoch(result.log.back());

  std::vector<std::size_t> order(patches.size());
  std::iota(order.begin(), order.end(), 0);
  int since_best = 0;
  for (int epoch = 1; epoch <= cfg.max_epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    for (std::size_t start = 0; start < order.size(); start += static_cast<std::size_t>(cfg.batch_size)) {
      const std::size_t stop = std::min(order.size(), start + static_cast<std::size_t>(cfg.batch_size));
      const double scale = 1.0 / static_cast<double>(stop - start);
      nn::WeightStore batch_grad;
      for (std::size_t k = start; k < stop; ++k) {
        const std::size_t i = order[k];
        nn::ForwardResult fr = nn::forward(spec, weights, inputs[i], true);
        const nn::Tensor& pred = fr.outputs.front();
        nn::Tensor g(pred.dims());
        const double norm = 2.0 * scale / static_cast<double>(pred.size());
        for (std::size_t j = 0; j < pred.size(); ++j) g[j] = norm * (pred[j] - targets[i][j]);
        nn::Gradients grads = nn::backward(fr.tape, g);
        for (const auto& [name, t] : grads.params) {
          if (!batch_grad.contains(name)) {
            batch_grad.set(name, t);
          } else {
            nn::Tensor& acc = batch_grad.mutable_get(name);
            for (std::size_t j = 0; j < t.size(); ++j) acc[j] += t[j];
          }
        }
      }
      stepper.apply(weights, batch_grad, lr);
    }

    const double prev_train = train_loss;
    train_loss = dataset_mse(spec, weights, patches);
    val_loss = validation.empty() ? train_loss : dataset_mse(spec, weights, monitor);
    if (!std::isfinite(train_loss) || !std::isfinite(val_loss)) {
      throw SrError(SrErrc::kDivergedLoss, "loss became non-finite at epoch " + std::to_string(epoch));
    }
    if (val_loss < best) {
      best = val_loss;
      result.weights = weights;
      result.best_epoch = epoch;
      since_best = 0;
    } else {
      ++since_best;
    }
    result.log.push_back({epoch, train_loss, val_loss, best, lr});
    if (on_epoch) on_epoch(result.log.back());

    const double improvement = prev_train > 0.0 ? (prev_train - train_loss) / prev_train : 0.0;
    if (improvement < cfg.improvement_threshold_mu) lr = std::max(cfg.lr_final, lr * cfg.lr_decay);
    if (since_best >= cfg.patience_epochs) break;
  }
  return result;
}

}  // namespace survx::sr
