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

#include "csgcl/training.hpp"

#include <cmath>
#include <string>

#include "csgcl/error.hpp"
#include "csgcl/io.hpp"

namespace csgcl {

void TrainConfig::validate() const {
  if (epochs < 0) throw Error("epochs must be non-negative");
  if (!(learning_rate > 0.0)) throw Error("learning_rate must be positive");
  if (hidden_dim == 0) throw Error("hidden_dim must be positive");
  if (!(adam_beta1 > 0.0 && adam_beta1 < 1.0)) throw Error("adam_beta1 must lie in (0, 1)");
  if (!(adam_beta2 > 0.0 && adam_beta2 < 1.0)) throw Error("adam_beta2 must lie in (0, 1)");
  if (!(adam_eps > 0.0)) throw Error("adam_eps must be positive");
  if (threads < 1) throw Error("threads must be at least 1");
  aug.validate();
  sched.validate();
}

AdamState AdamState::zeros_like(const EncoderParams& params) {
  return {ParamGradients::zeros_like(params), ParamGradients::zeros_like(params)};
}

namespace {

void adam_tensor(Eigen::MatrixXd& param, const Eigen::MatrixXd& grad, Eigen::MatrixXd& m, Eigen::MatrixXd& v,
                 double lr, double beta1, double beta2, double eps, double correction1, double correction2) {
  m = beta1 * m + (1.0 - beta1) * grad;
  v = beta2 * v + (1.0 - beta2) * grad.cwiseAbs2();
  param.array() -= lr * (m.array() / correction1) / ((v.array() / correction2).sqrt() + eps);
}

}  // namespace

void adam_step(EncoderParams& params, const ParamGradients& grads, AdamState& state, double lr, double beta1,
               double beta2, double eps, std::int64_t step_index) {
  if (step_index < 1) throw Error("adam_step: step_index must be >= 1");
  if (!grads.all_finite()) throw Error("adam_step: non-finite gradient");
  const double c1 = 1.0 - std::pow(beta1, static_cast<double>(step_index));
  const double c2 = 1.0 - std::pow(beta2, static_cast<double>(step_index));
  auto& m = state.first_moment;
  auto& v = state.second_moment;
  adam_tensor(params.w1, grads.w1, m.w1, v.w1, lr, beta1, beta2, eps, c1, c2);
  adam_tensor(params.w2, grads.w2, m.w2, v.w2, lr, beta1, beta2, eps, c1, c2);
  adam_tensor(params.p1, grads.p1, m.p1, v.p1, lr, beta1, beta2, eps, c1, c2);
  adam_tensor(params.p2, grads.p2, m.p2, v.p2, lr, beta1, beta2, eps, c1, c2);
  if (params.activation == Activation::PReLU) {
    m.prelu_slope = beta1 * m.prelu_slope + (1.0 - beta1) * grads.prelu_slope;
    v.prelu_slope = beta2 * v.prelu_slope + (1.0 - beta2) * grads.prelu_slope * grads.prelu_slope;
    params.prelu_slope -= lr * (m.prelu_slope / c1) / (std::sqrt(v.prelu_slope / c2) + eps);
  }
}

TrainResult train(const AttributedGraph& g, const Partition& p, const TrainConfig& cfg,
                  const EpochCallback& on_epoch) {
  cfg.validate();
  if (p.num_nodes() != g.num_nodes()) throw Error("train: partition does not cover the graph");

  // Initialization and sampling use separate streams derived from the seed.
  std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed), static_cast<std::uint32_t>(cfg.seed >> 32), 0x5eedu};
  std::uint64_t seeds[2];
  {
    std::uint32_t words[4];
    seq.generate(words, words + 4);
    seeds[0] = (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
    seeds[1] = (static_cast<std::uint64_t>(words[2]) << 32) | words[3];
  }

  TrainResult result;
  result.params = init_params(g.num_attributes(), cfg.hidden_dim, cfg.activation, seeds[0]);
  if (cfg.epochs == 0) return result;

  Rng rng(seeds[1]);
  const ViewGenerator views(g, p);
  AdamState state = AdamState::zeros_like(result.params);
  result.metrics.reserve(static_cast<std::size_t>(cfg.epochs));

  GradientOptions options;
  options.mode = Mode::Train;
  options.rng = &rng;
  options.threads = cfg.threads;

  for (int epoch = 1; epoch <= cfg.epochs; ++epoch) {
    const double t = static_cast<double>(epoch) / 100.0;
    const auto [view1, view2] = views.generate(cfg.aug, rng);
    TrainingStep step;
    try {
      step = loss_gradients(result.params, view1, view2, p, cfg.sched, t, options);
    } catch (const Error& e) {
      throw Error("epoch " + std::to_string(epoch) + ": " + e.what());
    }
    if (!std::isfinite(step.loss)) throw Error("epoch " + std::to_string(epoch) + ": non-finite loss");
    adam_step(result.params, step.grads, state, cfg.learning_rate, cfg.adam_beta1, cfg.adam_beta2, cfg.adam_eps,
              epoch);
    EpochMetrics metrics{epoch, step.loss, step.gamma};
    result.metrics.push_back(metrics);
    if (on_epoch) on_epoch(metrics);
  }
  return result;
}

void write_metrics(const std::filesystem::path& path, const std::vector<EpochMetrics>& metrics) {
  std::string out;
  for (const auto& m : metrics) {
    out += std::to_string(m.epoch);
    out += '\t';
    out += io::format_double(m.loss);
    out += '\t';
    out += io::format_double(m.gamma);
    out += '\n';
  }
  io::write_file(path, out);
}

}  // namespace csgcl
