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
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "csgcl/graph.hpp"

namespace csgcl {

struct MetricSummary {
  double mean = 0.0;
  double std = 0.0;  // population standard deviation over repeats
};

MetricSummary summarize(std::span<const double> values);

struct EvalReport {
  std::string task;  // classification | clustering | link_prediction
  std::vector<std::pair<std::string, MetricSummary>> metrics;
  std::vector<std::pair<std::string, std::string>> split;

  const MetricSummary& metric(const std::string& name) const;
  // Flat `key = value` lines: task, metric.<name>.mean/std, split.<key>.
  std::string to_text() const;
  void write(const std::filesystem::path& path) const;
};

// --- classification -------------------------------------------------------

double accuracy(std::span<const int> truth, std::span<const int> predicted);
double micro_f1(std::span<const int> truth, std::span<const int> predicted);
// Unweighted mean of per-class F1 over classes present in truth or predictions.
double macro_f1(std::span<const int> truth, std::span<const int> predicted);

// Multinomial logistic regression with an l2 penalty on the weights (the
// intercept is not penalized), fit by accelerated gradient descent.
class LogisticRegression {
 public:
  LogisticRegression(double l2, int iterations = 500) : l2_(l2), iterations_(iterations) {}
  void fit(const Eigen::MatrixXd& x, std::span<const int> y, int num_classes);
  std::vector<int> predict(const Eigen::MatrixXd& x) const;

 private:
  double l2_;
  int iterations_;
  Eigen::MatrixXd weights_;
  Eigen::RowVectorXd bias_;
};

struct ProbeOptions {
  double train_frac = 0.1;
  double val_frac = 0.1;
  double test_frac = 0.8;
  // Penalties tried on the validation split; a single entry skips selection.
  std::vector<double> l2_grid{1e-4, 1e-3, 1e-2, 1e-1, 1.0};
  int repeats = 10;
  std::uint64_t seed = 0;
  int max_split_retries = 100;
  int iterations = 500;
};

// Embeddings are l2-normalized per row before fitting.
EvalReport linear_probe(const Eigen::MatrixXd& z, std::span<const int> labels, const ProbeOptions& options = {});

// --- clustering -----------------------------------------------------------

// Normalized mutual information with arithmetic-mean normalization.
double nmi(std::span<const int> a, std::span<const int> b);

struct KMeansOptions {
  int n_init = 10;
  int max_iterations = 300;
};

// Lloyd's algorithm with k-means++ seeding; the lowest-inertia run wins.
std::vector<int> kmeans(const Eigen::MatrixXd& points, int k, std::uint64_t seed, const KMeansOptions& options = {});

// Embeddings are l2-normalized per row before clustering.
EvalReport kmeans_nmi(const Eigen::MatrixXd& z, std::span<const int> labels, int k, std::uint64_t seed,
                      int repeats = 1, const KMeansOptions& options = {});

// --- link prediction ------------------------------------------------------

// Exact Mann-Whitney AUC; ties count one half.
double auc_score(std::span<const double> positive, std::span<const double> negative);
double average_precision(std::span<const double> positive, std::span<const double> negative);

double cosine(const Eigen::MatrixXd& z, NodeId u, NodeId v);

EvalReport link_prediction(const Eigen::MatrixXd& z, const AttributedGraph& g, double holdout_frac,
                           std::uint64_t seed, int repeats = 1);

}  // namespace csgcl
