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
#include <string>
#include <string_view>

#include <Eigen/Dense>

#include "csgcl/augment.hpp"
#include "csgcl/graph.hpp"

namespace csgcl {

enum class Activation : std::uint32_t { ReLU = 0, PReLU = 1, RReLU = 2 };

std::string_view to_string(Activation a);
Activation parse_activation(std::string_view name);

// RReLU draws its negative slope from this interval in training mode and
// uses the midpoint in evaluation mode.
inline constexpr double kRReLULower = 1.0 / 8.0;
inline constexpr double kRReLUUpper = 1.0 / 3.0;
inline constexpr double kRReLUEvalSlope = (kRReLULower + kRReLUUpper) / 2.0;
inline constexpr double kPReLUInitialSlope = 0.25;

enum class Mode { Train, Eval };

// Weights of the two-layer GCN encoder (w1: d x h, w2: h x h) and of the
// projection head (p1, p2: h x h). No bias terms. prelu_slope is learned only
// for Activation::PReLU and shared by both activation sites.
struct EncoderParams {
  Activation activation = Activation::ReLU;
  Eigen::MatrixXd w1;
  Eigen::MatrixXd w2;
  Eigen::MatrixXd p1;
  Eigen::MatrixXd p2;
  double prelu_slope = kPReLUInitialSlope;

  std::size_t input_dim() const { return static_cast<std::size_t>(w1.rows()); }
  std::size_t hidden_dim() const { return static_cast<std::size_t>(w1.cols()); }

  friend bool operator==(const EncoderParams& a, const EncoderParams& b) {
    return a.activation == b.activation && a.w1 == b.w1 && a.w2 == b.w2 && a.p1 == b.p1 && a.p2 == b.p2 &&
           a.prelu_slope == b.prelu_slope;
  }
};

// Same layout as EncoderParams; prelu_slope is zero unless the activation is PReLU.
struct ParamGradients {
  Eigen::MatrixXd w1;
  Eigen::MatrixXd w2;
  Eigen::MatrixXd p1;
  Eigen::MatrixXd p2;
  double prelu_slope = 0.0;

  static ParamGradients zeros_like(const EncoderParams& params);
  ParamGradients& operator+=(const ParamGradients& other);
  ParamGradients& operator*=(double factor);
  bool all_finite() const;
};

EncoderParams init_params(std::size_t input_dim, std::size_t hidden_dim, Activation activation, std::uint64_t seed);

// Cached intermediates of one forward pass, kept for the backward pass.
struct ForwardPass {
  Eigen::MatrixXd pre1;  // A X W1
  Eigen::MatrixXd h1;
  Eigen::MatrixXd h2;  // A h1 W2: the representation kept for downstream tasks
  Eigen::MatrixXd pre3;
  Eigen::MatrixXd h3;
  Eigen::MatrixXd z;  // projection used by the contrastive loss
  // Per-element negative slopes; filled only for RReLU in training mode.
  Eigen::MatrixXd slopes1;
  Eigen::MatrixXd slopes3;
};

// `rng` is required for RReLU in training mode and ignored otherwise.
ForwardPass forward(const EncoderParams& params, const SparseMatrix& a_hat, const Eigen::MatrixXd& x, Mode mode,
                    Rng* rng = nullptr);

ParamGradients backward(const EncoderParams& params, const SparseMatrix& a_hat, const Eigen::MatrixXd& x,
                        const ForwardPass& pass, const Eigen::MatrixXd& grad_z);

struct Embedding {
  Eigen::MatrixXd representation;  // encoder output
  Eigen::MatrixXd projection;      // projection-head output
};

// Evaluation-mode forward pass on a view.
Embedding encode(const EncoderParams& params, const GraphView& view);

// Checkpoint: magic `CSGP`, u64 d, u64 h, u64 activation tag, then w1, w2,
// p1, p2 as little-endian f64 row-major, then the PReLU slope as one f64.
void save_checkpoint(const std::filesystem::path& path, const EncoderParams& params);
EncoderParams load_checkpoint(const std::filesystem::path& path);

}  // namespace csgcl
