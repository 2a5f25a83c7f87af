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

#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "survx/nn/graph.hpp"
#include "survx/sr/models.hpp"
#include "survx/sr/patches.hpp"

namespace survx::sr {

enum class Optimizer { kSgd, kAdam };

struct TrainConfig {
  double lr_initial = 0.01;
  double lr_final = 0.0001;
  // Relative epoch-over-epoch improvement below which the rate decays.
  double improvement_threshold_mu = 1e-4;
  double lr_decay = 0.5;
  int patience_epochs = 100;
  int max_epochs = 500;
  int batch_size = 4;
  std::uint64_t seed = 0;
  Optimizer optimizer = Optimizer::kSgd;
  double adam_beta1 = 0.9;
  double adam_beta2 = 0.999;
  double adam_eps = 1e-8;
};

struct EpochLog {
  int epoch = 0;  // 0 is the untrained network
  double train_loss = 0.0;
  double validation_loss = 0.0;
  double best_loss = 0.0;
  double learning_rate = 0.0;
};

struct TrainResult {
  nn::WeightStore weights;  // parameters at the best validation loss
  std::vector<EpochLog> log;
  int best_epoch = 0;
};

// Mean squared error between forward(spec, lr) and hr, averaged over patches.
double dataset_mse(const nn::NetworkSpec& spec, const nn::WeightStore& weights,
                   const std::vector<PatchPair>& patches);

// Minibatch gradient descent on per-patch MSE. With no validation patches the
// training loss drives the schedule and early stopping.
TrainResult train_espcn(const nn::NetworkSpec& spec, const std::vector<PatchPair>& patches,
                        const TrainConfig& cfg, const std::vector<PatchPair>& validation = {},
                        const std::function<void(const EpochLog&)>& on_epoch = {});

nn::Tensor image_to_tensor(const ImageTensor& img);
// Clamps into [0,1].
ImageTensor tensor_to_image(const nn::Tensor& t);

}  // namespace survx::sr
