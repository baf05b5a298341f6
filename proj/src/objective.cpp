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

#include "csgcl/objective.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <string>

#include "csgcl/error.hpp"

namespace csgcl {

void TeamupSchedule::validate() const {
  if (!(tau > 0.0)) throw Error("tau must be positive, got " + std::to_string(tau));
  if (!(gamma_max >= 0.0)) throw Error("gamma_max must be non-negative, got " + std::to_string(gamma_max));
  if (!(t0 >= 0.0)) throw Error("t0 must be non-negative, got " + std::to_string(t0));
}

double similarity(std::span<const double> z1, std::span<const double> z2, double tau) {
  if (z1.size() != z2.size()) throw Error("similarity: vectors differ in length");
  double dot = 0.0;
  double n1 = 0.0;
  double n2 = 0.0;
  for (std::size_t i = 0; i < z1.size(); ++i) {
    dot += z1[i] * z2[i];
    n1 += z1[i] * z1[i];
    n2 += z2[i] * z2[i];
  }
  if (n1 == 0.0 || n2 == 0.0) throw Error("similarity: zero-norm vector");
  return dot / (std::sqrt(n1) * std::sqrt(n2) * tau);
}

double gamma(double t, const TeamupSchedule& sched) {
  return std::min(std::max(0.0, t - sched.t0), sched.gamma_max);
}

namespace {

struct Normalized {
  Eigen::MatrixXd unit;
  Eigen::VectorXd norm;
};

// A zero row stays zero: it has similarity 0 to everything and receives no
// gradient.
Normalized normalize_rows(const Eigen::MatrixXd& z) {
  Normalized out{z, z.rowwise().norm()};
  for (Eigen::Index i = 0; i < z.rows(); ++i) {
    if (!std::isfinite(out.norm(i))) throw Error("non-finite embedding row " + std::to_string(i));
    if (out.norm(i) > 0.0) out.unit.row(i) /= out.norm(i);
  }
  return out;
}

// One anchor direction. Fills d(loss)/d(inter) and d(loss)/d(intra), each
// scaled by `scale`, and returns the summed per-anchor loss.
double anchor_direction(const Eigen::MatrixXd& inter, const Eigen::MatrixXd& intra, double scale,
                        Eigen::MatrixXd& grad_inter, Eigen::MatrixXd& grad_intra) {
  const Eigen::Index n = inter.rows();
  grad_inter.resize(n, n);
  grad_intra.resize(n, n);
  double total = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    double hi = inter.row(i).maxCoeff();
    for (Eigen::Index j = 0; j < n; ++j)
      if (j != i) hi = std::max(hi, intra(i, j));
    double sum = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      sum += std::exp(inter(i, j) - hi);
      if (j != i) sum += std::exp(intra(i, j) - hi);
    }
    const double lse = hi + std::log(sum);
    total += lse - inter(i, i);
    for (Eigen::Index j = 0; j < n; ++j) {
      grad_inter(i, j) = scale * std::exp(inter(i, j) - lse);
      grad_intra(i, j) = j == i ? 0.0 : scale * std::exp(intra(i, j) - lse);
    }
    grad_inter(i, i) -= scale;
  }
  return total;
}

Eigen::MatrixXd through_normalization(const Normalized& z, const Eigen::MatrixXd& grad_unit) {
  Eigen::MatrixXd g(grad_unit.rows(), grad_unit.cols());
  for (Eigen::Index i = 0; i < g.rows(); ++i) {
    if (z.norm(i) == 0.0) {
      g.row(i).setZero();
      continue;
    }
    const double radial = z.unit.row(i).dot(grad_unit.row(i));
    g.row(i) = (grad_unit.row(i) - radial * z.unit.row(i)) / z.norm(i);
  }
  return g;
}

}  // namespace

LossWithGradient teamup_loss_with_gradient(const Eigen::MatrixXd& z1, const Eigen::MatrixXd& z2,
                                           std::span<const double> node_strength, double tau, double gamma_value) {
  if (z1.rows() != z2.rows() || z1.cols() != z2.cols()) throw Error("teamup_loss: embeddings differ in shape");
  if (static_cast<std::size_t>(z1.rows()) != node_strength.size())
    throw Error("teamup_loss: node strength vector does not match node count");
  if (!(tau > 0.0)) throw Error("teamup_loss: tau must be positive");
  const Eigen::Index n = z1.rows();
  if (n == 0) throw Error("teamup_loss: empty embedding");

  const auto u1 = normalize_rows(z1);
  const auto u2 = normalize_rows(z2);
  const Eigen::Map<const Eigen::VectorXd> s(node_strength.data(), n);
  const Eigen::MatrixXd shift =
      gamma_value * (s.replicate(1, n) + s.transpose().replicate(n, 1));

  const Eigen::MatrixXd s12 = u1.unit * u2.unit.transpose() / tau;
  const Eigen::MatrixXd s11 = u1.unit * u1.unit.transpose() / tau;
  const Eigen::MatrixXd s22 = u2.unit * u2.unit.transpose() / tau;

  const double scale = 1.0 / (2.0 * static_cast<double>(n));
  Eigen::MatrixXd g12_a, g11, g21_b, g22;
  const double la = anchor_direction(s12 + shift, s11 + shift, scale, g12_a, g11);
  const double lb = anchor_direction(s12.transpose() + shift, s22 + shift, scale, g21_b, g22);

  const Eigen::MatrixXd g12 = g12_a + g21_b.transpose();
  const Eigen::MatrixXd grad_u1 = (g12 * u2.unit + (g11 + g11.transpose()) * u1.unit) / tau;
  const Eigen::MatrixXd grad_u2 = (g12.transpose() * u1.unit + (g22 + g22.transpose()) * u2.unit) / tau;

  LossWithGradient out;
  out.loss = (la + lb) * scale;
  out.grad_z1 = through_normalization(u1, grad_u1);
  out.grad_z2 = through_normalization(u2, grad_u2);
  return out;
}

double teamup_loss(const Eigen::MatrixXd& z1, const Eigen::MatrixXd& z2, const Partition& p,
                   const TeamupSchedule& sched, double t) {
  sched.validate();
  const auto strengths = p.node_strengths();
  return teamup_loss_with_gradient(z1, z2, strengths, sched.tau, gamma(t, sched)).loss;
}

TrainingStep loss_gradients(const EncoderParams& params, const GraphView& view1, const GraphView& view2,
                            const Partition& p, const TeamupSchedule& sched, double t,
                            const GradientOptions& options) {
  sched.validate();
  const bool random_slopes = options.mode == Mode::Train && params.activation == Activation::RReLU;
  if (random_slopes && !options.rng) throw Error("loss_gradients: RReLU training mode needs a random stream");
  Rng rng1(random_slopes ? (*options.rng)() : 0);
  Rng rng2(random_slopes ? (*options.rng)() : 0);

  const SparseMatrix a1 = normalized_adjacency(view1.adjacency);
  const SparseMatrix a2 = normalized_adjacency(view2.adjacency);
  const bool parallel = options.threads > 1;

  ForwardPass f1, f2;
  if (parallel) {
    auto job = std::async(std::launch::async,
                          [&] { return forward(params, a2, view2.attributes, options.mode, &rng2); });
    f1 = forward(params, a1, view1.attributes, options.mode, &rng1);
    f2 = job.get();
  } else {
    f1 = forward(params, a1, view1.attributes, options.mode, &rng1);
    f2 = forward(params, a2, view2.attributes, options.mode, &rng2);
  }

  TrainingStep step;
  step.gamma = gamma(t, sched);
  const auto strengths = p.node_strengths();
  auto loss = teamup_loss_with_gradient(f1.z, f2.z, strengths, sched.tau, step.gamma);
  step.loss = loss.loss;
  if (!std::isfinite(step.loss)) throw Error("loss_gradients: non-finite loss");

  ParamGradients g2;
  if (parallel) {
    auto job = std::async(std::launch::async,
                          [&] { return backward(params, a2, view2.attributes, f2, loss.grad_z2); });
    step.grads = backward(params, a1, view1.attributes, f1, loss.grad_z1);
    g2 = job.get();
  } else {
    step.grads = backward(params, a1, view1.attributes, f1, loss.grad_z1);
    g2 = backward(params, a2, view2.attributes, f2, loss.grad_z2);
  }
  step.grads += g2;
  if (!step.grads.all_finite()) throw Error("loss_gradients: non-finite gradient");
  step.z1 = std::move(f1.z);
  step.z2 = std::move(f2.z);
  return step;
}

}  // namespace csgcl
