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

#include <span>

#include <Eigen/Dense>

#include "csgcl/augment.hpp"
#include "csgcl/community.hpp"
#include "csgcl/model.hpp"

namespace csgcl {

// Team-up schedule. t0 and gamma_max are in units of 100 epochs.
struct TeamupSchedule {
  double t0 = 10.0;
  double gamma_max = 1.0;
  double tau = 0.5;

  void validate() const;
};

// Cosine similarity divided by the temperature. Throws on a zero vector.
double similarity(std::span<const double> z1, std::span<const double> z2, double tau);

// min(max(0, t - t0), gamma_max)
double gamma(double t, const TeamupSchedule& sched);

struct LossWithGradient {
  double loss = 0.0;
  Eigen::MatrixXd grad_z1;
  Eigen::MatrixXd grad_z2;
};

// Symmetrized Team-up contrastive loss over two projected embeddings.
// Every similarity term, intra- and inter-view, is shifted by
// gamma_value * (node_strength[i] + node_strength[j]); gamma_value = 0 gives
// plain InfoNCE. A zero row (e.g. a node whose view lost every attribute
// and edge) has cosine similarity 0 to all rows and a zero gradient.
LossWithGradient teamup_loss_with_gradient(const Eigen::MatrixXd& z1, const Eigen::MatrixXd& z2,
                                           std::span<const double> node_strength, double tau, double gamma_value);

double teamup_loss(const Eigen::MatrixXd& z1, const Eigen::MatrixXd& z2, const Partition& p,
                   const TeamupSchedule& sched, double t);

struct GradientOptions {
  Mode mode = Mode::Eval;
  // Drives RReLU slopes in training mode: one child seed per view is drawn
  // from it (view 1 first) whether or not the views run concurrently.
  Rng* rng = nullptr;
  int threads = 1;
};

struct TrainingStep {
  double loss = 0.0;
  double gamma = 0.0;
  ParamGradients grads;
  Eigen::MatrixXd z1;
  Eigen::MatrixXd z2;
};

// Loss of encode(view1), encode(view2) and its exact gradient with respect
// to the shared parameters (sum of both branches).
TrainingStep loss_gradients(const EncoderParams& params, const GraphView& view1, const GraphView& view2,
                            const Partition& p, const TeamupSchedule& sched, double t,
                            const GradientOptions& options = {});

}  // namespace csgcl
