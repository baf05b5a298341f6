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

#include "csgcl/model.hpp"

#include <cctype>
#include <cmath>
#include <cstring>
#include <random>

#include "csgcl/error.hpp"
#include "csgcl/io.hpp"

namespace csgcl {

std::string_view to_string(Activation a) {
  switch (a) {
    case Activation::ReLU:
      return "relu";
    case Activation::PReLU:
      return "prelu";
    case Activation::RReLU:
      return "rrelu";
  }
  throw Error("unknown activation tag");
}

Activation parse_activation(std::string_view name) {
  std::string lower(name);
  for (auto& ch : lower) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  if (lower == "relu") return Activation::ReLU;
  if (lower == "prelu") return Activation::PReLU;
  if (lower == "rrelu") return Activation::RReLU;
  throw Error("unknown activation '" + std::string(name) + "' (expected relu, prelu or rrelu)");
}

ParamGradients ParamGradients::zeros_like(const EncoderParams& params) {
  ParamGradients g;
  g.w1 = Eigen::MatrixXd::Zero(params.w1.rows(), params.w1.cols());
  g.w2 = Eigen::MatrixXd::Zero(params.w2.rows(), params.w2.cols());
  g.p1 = Eigen::MatrixXd::Zero(params.p1.rows(), params.p1.cols());
  g.p2 = Eigen::MatrixXd::Zero(params.p2.rows(), params.p2.cols());
  return g;
}

ParamGradients& ParamGradients::operator+=(const ParamGradients& other) {
  w1 += other.w1;
  w2 += other.w2;
  p1 += other.p1;
  p2 += other.p2;
  prelu_slope += other.prelu_slope;
  return *this;
}

ParamGradients& ParamGradients::operator*=(double factor) {
  w1 *= factor;
  w2 *= factor;
  p1 *= factor;
  p2 *= factor;
  prelu_slope *= factor;
  return *this;
}

bool ParamGradients::all_finite() const {
  return w1.allFinite() && w2.allFinite() && p1.allFinite() && p2.allFinite() && std::isfinite(prelu_slope);
}

EncoderParams init_params(std::size_t input_dim, std::size_t hidden_dim, Activation activation, std::uint64_t seed) {
  if (input_dim == 0 || hidden_dim == 0) throw Error("init_params: dimensions must be positive");
  std::mt19937_64 rng(seed);
  auto glorot = [&rng](std::size_t fan_in, std::size_t fan_out) {
    const double bound = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
    std::uniform_real_distribution<double> dist(-bound, bound);
    Eigen::MatrixXd m(static_cast<Eigen::Index>(fan_in), static_cast<Eigen::Index>(fan_out));
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = dist(rng);
    return m;
  };
  EncoderParams params;
  params.activation = activation;
  params.w1 = glorot(input_dim, hidden_dim);
  params.w2 = glorot(hidden_dim, hidden_dim);
  params.p1 = glorot(hidden_dim, hidden_dim);
  params.p2 = glorot(hidden_dim, hidden_dim);
  params.prelu_slope = kPReLUInitialSlope;
  return params;
}

namespace {

double negative_slope(const EncoderParams& params) {
  switch (params.activation) {
    case Activation::ReLU:
      return 0.0;
    case Activation::PReLU:
      return params.prelu_slope;
    case Activation::RReLU:
      return kRReLUEvalSlope;
  }
  return 0.0;
}

// Applies the activation; returns per-element slopes when they are random.
Eigen::MatrixXd activate(const EncoderParams& params, const Eigen::MatrixXd& pre, Mode mode, Rng* rng,
                         Eigen::MatrixXd& slopes) {
  Eigen::MatrixXd out = pre;
  if (params.activation == Activation::RReLU && mode == Mode::Train) {
    if (!rng) throw Error("RReLU in training mode needs a random stream");
    std::uniform_real_distribution<double> dist(kRReLULower, kRReLUUpper);
    slopes.resize(pre.rows(), pre.cols());
    for (Eigen::Index i = 0; i < pre.rows(); ++i)
      for (Eigen::Index j = 0; j < pre.cols(); ++j) {
        slopes(i, j) = dist(*rng);
        if (pre(i, j) < 0.0) out(i, j) *= slopes(i, j);
      }
    return out;
  }
  const double a = negative_slope(params);
  for (Eigen::Index i = 0; i < out.size(); ++i)
    if (out.data()[i] < 0.0) out.data()[i] *= a;
  return out;
}

// dL/dpre given dL/dout; accumulates the PReLU slope gradient.
Eigen::MatrixXd activation_backward(const EncoderParams& params, const Eigen::MatrixXd& pre,
                                    const Eigen::MatrixXd& slopes, const Eigen::MatrixXd& grad_out,
                                    double& slope_grad) {
  Eigen::MatrixXd grad = grad_out;
  const bool per_element = slopes.size() == pre.size() && slopes.size() > 0;
  const double a = negative_slope(params);
  for (Eigen::Index k = 0; k < pre.size(); ++k) {
    const double p = pre.data()[k];
    if (p > 0.0) continue;
    if (p < 0.0 && params.activation == Activation::PReLU) slope_grad += grad_out.data()[k] * p;
    grad.data()[k] *= per_element ? slopes.data()[k] : a;
  }
  return grad;
}

}  // namespace

ForwardPass forward(const EncoderParams& params, const SparseMatrix& a_hat, const Eigen::MatrixXd& x, Mode mode,
                    Rng* rng) {
  if (static_cast<std::size_t>(x.cols()) != params.input_dim())
    throw Error("encode: attribute width " + std::to_string(x.cols()) + " does not match encoder input " +
                std::to_string(params.input_dim()));
  if (a_hat.rows() != x.rows() || a_hat.cols() != x.rows())
    throw Error("encode: adjacency size does not match node count");
  ForwardPass f;
  const Eigen::MatrixXd xw = x * params.w1;
  f.pre1 = a_hat * xw;
  f.h1 = activate(params, f.pre1, mode, rng, f.slopes1);
  const Eigen::MatrixXd hw = f.h1 * params.w2;
  f.h2 = a_hat * hw;
  f.pre3 = f.h2 * params.p1;
  f.h3 = activate(params, f.pre3, mode, rng, f.slopes3);
  f.z = f.h3 * params.p2;
  return f;
}

ParamGradients backward(const EncoderParams& params, const SparseMatrix& a_hat, const Eigen::MatrixXd& x,
                        const ForwardPass& pass, const Eigen::MatrixXd& grad_z) {
  ParamGradients g;
  double slope_grad = 0.0;
  g.p2 = pass.h3.transpose() * grad_z;
  const Eigen::MatrixXd grad_h3 = grad_z * params.p2.transpose();
  const Eigen::MatrixXd grad_pre3 = activation_backward(params, pass.pre3, pass.slopes3, grad_h3, slope_grad);
  g.p1 = pass.h2.transpose() * grad_pre3;
  const Eigen::MatrixXd grad_h2 = grad_pre3 * params.p1.transpose();
  // a_hat is symmetric, so a_hat^T * grad == a_hat * grad.
  const Eigen::MatrixXd prop_h2 = a_hat * grad_h2;
  g.w2 = pass.h1.transpose() * prop_h2;
  const Eigen::MatrixXd grad_h1 = prop_h2 * params.w2.transpose();
  const Eigen::MatrixXd grad_pre1 = activation_backward(params, pass.pre1, pass.slopes1, grad_h1, slope_grad);
  const Eigen::MatrixXd prop_pre1 = a_hat * grad_pre1;
  g.w1 = x.transpose() * prop_pre1;
  g.prelu_slope = params.activation == Activation::PReLU ? slope_grad : 0.0;
  return g;
}

Embedding encode(const EncoderParams& params, const GraphView& view) {
  const auto pass = forward(params, normalized_adjacency(view.adjacency), view.attributes, Mode::Eval);
  return {pass.h2, pass.z};
}

void save_checkpoint(const std::filesystem::path& path, const EncoderParams& params) {
  const auto& magic = io::kCheckpointMagic;
  std::string out(magic.data(), magic.size());
  io::put_u64(out, params.input_dim());
  io::put_u64(out, params.hidden_dim());
  io::put_u64(out, static_cast<std::uint64_t>(params.activation));
  io::put_matrix_data(out, params.w1);
  io::put_matrix_data(out, params.w2);
  io::put_matrix_data(out, params.p1);
  io::put_matrix_data(out, params.p2);
  io::put_f64(out, params.prelu_slope);
  io::write_file(path, out);
}

EncoderParams load_checkpoint(const std::filesystem::path& path) {
  const std::string data = io::read_file(path);
  if (data.size() < 4 || std::memcmp(data.data(), io::kCheckpointMagic.data(), 4) != 0)
    throw Error(path.string() + ": not a CSGP checkpoint");
  std::size_t pos = 4;
  const auto d = io::get_u64(data, pos);
  const auto h = io::get_u64(data, pos);
  const auto tag = io::get_u64(data, pos);
  if (tag > static_cast<std::uint64_t>(Activation::RReLU)) throw Error(path.string() + ": unknown activation tag");
  EncoderParams params;
  params.activation = static_cast<Activation>(tag);
  params.w1 = io::get_matrix_data(data, pos, d, h);
  params.w2 = io::get_matrix_data(data, pos, h, h);
  params.p1 = io::get_matrix_data(data, pos, h, h);
  params.p2 = io::get_matrix_data(data, pos, h, h);
  params.prelu_slope = io::get_f64(data, pos);
  if (pos != data.size()) throw Error(path.string() + ": trailing bytes in checkpoint");
  return params;
}

}  // namespace csgcl
