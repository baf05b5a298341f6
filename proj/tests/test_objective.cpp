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

#include <doctest.h>

#include <cmath>
#include <vector>

#include "csgcl/augment.hpp"
#include "csgcl/community.hpp"
#include "csgcl/error.hpp"
#include "csgcl/objective.hpp"
#include "test_support.hpp"

using namespace csgcl;
using csgcl::testing::make_adjacency;
using csgcl::testing::random_matrix;

namespace {

// A zero row counts as similarity 0.
double cos_tau(const Eigen::MatrixXd& a, Eigen::Index i, const Eigen::MatrixXd& b, Eigen::Index j, double tau) {
  if (a.row(i).norm() == 0.0 || b.row(j).norm() == 0.0) return 0.0;
  return a.row(i).dot(b.row(j)) / (a.row(i).norm() * b.row(j).norm() * tau);
}

// Direct double-loop evaluation of the shifted contrastive objective,
// averaged over both anchor views.
double brute_teamup(const Eigen::MatrixXd& z1, const Eigen::MatrixXd& z2, const std::vector<double>& s, double tau,
                    double gamma) {
  const auto n = z1.rows();
  double total = 0.0;
  for (int dir = 0; dir < 2; ++dir) {
    const auto& u = dir == 0 ? z1 : z2;
    const auto& v = dir == 0 ? z2 : z1;
    for (Eigen::Index i = 0; i < n; ++i) {
      auto shifted = [&](const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, Eigen::Index j) {
        return cos_tau(a, i, b, j, tau) + gamma * (s[i] + s[j]);
      };
      const double positive = std::exp(shifted(u, v, i));
      double denom = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        denom += std::exp(shifted(u, v, j));
        if (j != i) denom += std::exp(shifted(u, u, j));
      }
      total += -std::log(positive / denom);
    }
  }
  return total / (2.0 * static_cast<double>(n));
}

// Plain InfoNCE written independently of the shift machinery.
double info_nce(const Eigen::MatrixXd& z1, const Eigen::MatrixXd& z2, double tau) {
  const Eigen::MatrixXd u = z1.rowwise().normalized();
  const Eigen::MatrixXd v = z2.rowwise().normalized();
  const auto n = u.rows();
  auto one_side = [&](const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    const Eigen::MatrixXd inter = (a * b.transpose() / tau).array().exp();
    const Eigen::MatrixXd intra = (a * a.transpose() / tau).array().exp();
    double sum = 0.0;
    for (Eigen::Index i = 0; i < n; ++i)
      sum -= std::log(inter(i, i) / (inter.row(i).sum() + intra.row(i).sum() - intra(i, i)));
    return sum / static_cast<double>(n);
  };
  return 0.5 * (one_side(u, v) + one_side(v, u));
}

struct Instance {
  EncoderParams params;
  GraphView v1;
  GraphView v2;
  Partition partition;
};

Instance tiny_instance(Activation act, std::uint64_t seed) {
  Instance inst;
  inst.params = init_params(4, 3, act, seed);
  inst.params.prelu_slope = 0.1 + 0.05 * static_cast<double>(seed % 5);
  const auto x1 = random_matrix(5, 4, 100 + seed);
  const auto x2 = random_matrix(5, 4, 200 + seed);
  inst.v1 = {x1, make_adjacency(5, {{0, 1}, {1, 2}, {3, 4}}), {}, {}};
  inst.v2 = {x2, make_adjacency(5, {{0, 2}, {2, 3}, {1, 4}, {0, 4}}), {}, {}};
  inst.partition.assignment = {0, 0, 0, 1, 1};
  inst.partition.strength = {0.3, 0.15};
  inst.partition.raw_strength = inst.partition.strength;
  return inst;
}

double loss_at(const Instance& inst, const EncoderParams& params, double t, Mode mode, std::uint64_t rng_seed) {
  Rng rng(rng_seed);
  GradientOptions options{mode, &rng, 1};
  return loss_gradients(params, inst.v1, inst.v2, inst.partition, {0.0, 2.0, 0.5}, t, options).loss;
}

void check_entry(double analytic, double numeric) {
  const double scale = std::max({std::abs(analytic), std::abs(numeric), 1e-6});
  CHECK(std::abs(analytic - numeric) / scale < 1e-4);
}

}  // namespace

TEST_CASE("similarity") {
  const std::vector<double> a = {1, 0}, b = {1, 1}, c = {0, 3};
  const std::vector<double> z = {0.3, -2, 5};
  CHECK(similarity(z, z, 0.5) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(similarity(a, c, 0.5) == 0.0);
  CHECK(similarity(a, b, 1.0) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
  CHECK_THROWS_AS(similarity(a, std::vector<double>{0, 0}, 1.0), Error);
  CHECK_THROWS_AS(similarity(a, z, 1.0), Error);
}

TEST_CASE("gamma schedule") {
  const TeamupSchedule s{10.0, 5.0, 0.5};
  CHECK(gamma(10.0, s) == 0.0);
  CHECK(gamma(3.0, s) == 0.0);
  CHECK(gamma(12.5, s) == 2.5);
  CHECK(gamma(15.0, s) == 5.0);
  CHECK(gamma(400.0, s) == 5.0);
  double previous = -1.0;
  for (int k = 0; k < 2000; ++k) {
    const double g = gamma(k / 100.0, s);
    CHECK(g >= previous);
    CHECK(g <= 5.0);
    previous = g;
  }
}

TEST_CASE("team-up loss") {
  SUBCASE("gamma = 0 is InfoNCE") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const auto z1 = random_matrix(6, 4, seed);
      const auto z2 = random_matrix(6, 4, seed + 50);
      const std::vector<double> s = {0.1, 0.1, 0.2, 0.2, 0.3, 0};
      const auto got = teamup_loss_with_gradient(z1, z2, s, 0.5, 0.0).loss;
      CHECK(std::abs(got - info_nce(z1, z2, 0.5)) < 1e-12);
    }
  }
  SUBCASE("one node, gamma = 0: loss 0 and zero gradient") {
    const auto z1 = random_matrix(1, 3, 1);
    const auto z2 = random_matrix(1, 3, 2);
    const auto r = teamup_loss_with_gradient(z1, z2, std::vector<double>{0.4}, 0.5, 0.0);
    CHECK(std::abs(r.loss) < 1e-15);
    CHECK(r.grad_z1.norm() < 1e-15);
    CHECK(r.grad_z2.norm() < 1e-15);
  }
  SUBCASE("three nodes, two communities, gamma = 0.5 against brute force") {
    const auto z1 = random_matrix(3, 2, 3);
    const auto z2 = random_matrix(3, 2, 4);
    Partition p;
    p.assignment = {0, 1, 1};
    p.strength = {0.2, 0.05};
    p.raw_strength = p.strength;
    const TeamupSchedule sched{1.0, 1.0, 0.5};
    CHECK(gamma(1.5, sched) == 0.5);
    const double got = teamup_loss(z1, z2, p, sched, 1.5);
    CHECK(std::abs(got - brute_teamup(z1, z2, p.node_strengths(), 0.5, 0.5)) < 1e-12);
  }
  SUBCASE("random instances against brute force") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const auto z1 = random_matrix(7, 3, seed);
      const auto z2 = random_matrix(7, 3, seed + 20);
      std::vector<double> s(7);
      for (int i = 0; i < 7; ++i) s[i] = 0.05 * (i % 3);
      const double g = 0.3 * static_cast<double>(seed);
      const double got = teamup_loss_with_gradient(z1, z2, s, 0.7, g).loss;
      CHECK(std::abs(got - brute_teamup(z1, z2, s, 0.7, g)) < 1e-11);
    }
  }
  SUBCASE("scaling rows leaves the loss unchanged") {
    const auto z1 = random_matrix(5, 3, 8);
    const auto z2 = random_matrix(5, 3, 9);
    const std::vector<double> s(5, 0.0);
    const double a = teamup_loss_with_gradient(z1, z2, s, 0.5, 0.0).loss;
    const double b = teamup_loss_with_gradient(3.7 * z1, 3.7 * z2, s, 0.5, 0.0).loss;
    CHECK(std::abs(a - b) < 1e-9);
  }
  SUBCASE("a uniform shift cancels; a community-dependent shift does not") {
    const auto z1 = random_matrix(5, 3, 10);
    const auto z2 = random_matrix(5, 3, 11);
    const std::vector<double> flat(5, 0.25);
    const auto base = teamup_loss_with_gradient(z1, z2, flat, 0.5, 0.0);
    const auto shifted = teamup_loss_with_gradient(z1, z2, flat, 0.5, 2.0);
    CHECK(std::abs(base.loss - shifted.loss) < 1e-12);
    CHECK((base.grad_z1 - shifted.grad_z1).cwiseAbs().maxCoeff() < 1e-12);
    const std::vector<double> uneven = {0.25, 0.25, 0.0, 0.0, 0.1};
    CHECK(std::abs(teamup_loss_with_gradient(z1, z2, uneven, 0.5, 2.0).loss - base.loss) > 1e-6);
  }
  SUBCASE("large shifts stay finite") {
    const auto z1 = random_matrix(4, 3, 12);
    const auto z2 = random_matrix(4, 3, 13);
    const auto r = teamup_loss_with_gradient(z1, z2, std::vector<double>{1, 1, 0, 0}, 0.01, 500.0);
    CHECK(std::isfinite(r.loss));
    CHECK(r.grad_z1.allFinite());
  }
  SUBCASE("zero rows have zero similarity and no gradient") {
    Eigen::MatrixXd z1 = random_matrix(4, 3, 14);
    const Eigen::MatrixXd z2 = random_matrix(4, 3, 15);
    z1.row(2).setZero();
    const std::vector<double> s(4, 0.0);
    const auto r = teamup_loss_with_gradient(z1, z2, s, 0.5, 0.0);
    CHECK(std::isfinite(r.loss));
    CHECK(r.grad_z1.row(2).isZero(0));
    CHECK(std::abs(r.loss - brute_teamup(z1, z2, s, 0.5, 0.0)) < 1e-12);
  }
  SUBCASE("errors") {
    const auto z = random_matrix(3, 2, 1);
    CHECK_THROWS_AS(teamup_loss_with_gradient(z, random_matrix(3, 3, 1), std::vector<double>(3), 0.5, 0), Error);
    CHECK_THROWS_AS(teamup_loss_with_gradient(z, z, std::vector<double>(2), 0.5, 0), Error);
    CHECK_THROWS_AS(teamup_loss_with_gradient(z, z, std::vector<double>(3), 0.0, 0), Error);
  }
}

TEST_CASE("analytic gradients match central differences") {
  const double h = 1e-5;
  int instances = 0;
  for (auto act : {Activation::ReLU, Activation::PReLU, Activation::RReLU}) {
    for (std::uint64_t seed = 0; seed < 7; ++seed) {
      ++instances;
      const auto inst = tiny_instance(act, seed);
      const double t = 0.5 + 0.25 * static_cast<double>(seed);  // gamma from 0.5 to 2
      const Mode mode = seed % 2 ? Mode::Train : Mode::Eval;
      const std::uint64_t rng_seed = 1000 + seed;
      Rng rng(rng_seed);
      GradientOptions options{mode, &rng, 1};
      const auto step = loss_gradients(inst.params, inst.v1, inst.v2, inst.partition, {0.0, 2.0, 0.5}, t, options);

      auto numeric = [&](auto&& poke) {
        EncoderParams plus = inst.params, minus = inst.params;
        poke(plus, h);
        poke(minus, -h);
        return (loss_at(inst, plus, t, mode, rng_seed) - loss_at(inst, minus, t, mode, rng_seed)) / (2 * h);
      };
      Eigen::MatrixXd EncoderParams::*mats[] = {&EncoderParams::w1, &EncoderParams::w2, &EncoderParams::p1,
                                                &EncoderParams::p2};
      const Eigen::MatrixXd* grads[] = {&step.grads.w1, &step.grads.w2, &step.grads.p1, &step.grads.p2};
      for (int m = 0; m < 4; ++m)
        for (Eigen::Index i = 0; i < (inst.params.*mats[m]).size(); ++i)
          check_entry(grads[m]->data()[i], numeric([&](EncoderParams& p, double d) { (p.*mats[m]).data()[i] += d; }));
      if (act == Activation::PReLU)
        check_entry(step.grads.prelu_slope, numeric([](EncoderParams& p, double d) { p.prelu_slope += d; }));
      else
        CHECK(step.grads.prelu_slope == 0.0);
    }
  }
  CHECK(instances >= 20);
}

TEST_CASE("concurrent branches give identical results") {
  for (auto act : {Activation::ReLU, Activation::RReLU}) {
    const auto inst = tiny_instance(act, 3);
    Rng r1(5), r2(5);
    const auto a = loss_gradients(inst.params, inst.v1, inst.v2, inst.partition, {}, 12.0, {Mode::Train, &r1, 1});
    const auto b = loss_gradients(inst.params, inst.v1, inst.v2, inst.partition, {}, 12.0, {Mode::Train, &r2, 2});
    CHECK(a.loss == b.loss);
    CHECK(a.grads.w1 == b.grads.w1);
    CHECK(a.grads.p2 == b.grads.p2);
    CHECK(r1() == r2());
  }
}
