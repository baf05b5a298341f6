// Copyright 2026 The CSGCL Authors.
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
#include <filesystem>
#include <functional>
#include <vector>

#include "csgcl/augment.hpp"
#include "csgcl/community.hpp"
#include "csgcl/model.hpp"
#include "csgcl/objective.hpp"

namespace csgcl {

struct TrainConfig {
  int epochs = 2000;
  double learning_rate = 0.01;
  std::size_t hidden_dim = 256;
  Activation activation = Activation::PReLU;
  AugmentationConfig aug;
  TeamupSchedule sched;
  std::uint64_t seed = 0;
  double adam_beta1 = 0.9;
  double adam_beta2 = 0.999;
  double adam_eps = 1e-8;
  // Runs the two view branches concurrently when > 1. Results do not depend on it.
  int threads = 1;

  void validate() const;
};

struct AdamState {
  ParamGradients first_moment;
  ParamGradients second_moment;

  static AdamState zeros_like(const EncoderParams& params);
};

// Bias-corrected Adam update; step_index starts at 1. Throws on a non-finite
// gradient.
void adam_step(EncoderParams& params, const ParamGradients& grads, AdamState& state, double lr, double beta1,
               double beta2, double eps, std::int64_t step_index);

struct EpochMetrics {
  int epoch = 0;
  double loss = 0.0;
  double gamma = 0.0;
};

struct TrainResult {
  EncoderParams params;
  std::vector<EpochMetrics> metrics;
};

using EpochCallback = std::function<void(const EpochMetrics&)>;

// Epochs are numbered from 1; epoch k evaluates the schedule at t = k / 100.
TrainResult train(const AttributedGraph& g, const Partition& p, const TrainConfig& cfg,
                  const EpochCallback& on_epoch = {});

// One line per epoch: `epoch<TAB>loss<TAB>gamma`.
void write_metrics(const std::filesystem::path& path, const std::vector<EpochMetrics>& metrics);

}  // namespace csgcl
