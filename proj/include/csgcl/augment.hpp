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
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "csgcl/community.hpp"
#include "csgcl/graph.hpp"

namespace csgcl {

using Rng = std::mt19937_64;

// Sampling-range hyperparameters of the two views.
struct AugmentationConfig {
  double p_a1 = 0.2;
  double p_a2 = 0.2;
  double p_e1 = 0.2;
  double p_e2 = 0.2;

  void validate() const;
};

// One perturbed graph. attr_mask has one entry per attribute column and
// edge_mask one entry per edge of the source graph's canonical edge list.
struct GraphView {
  Eigen::MatrixXd attributes;
  Adjacency adjacency;
  std::vector<std::uint8_t> attr_mask;
  std::vector<std::uint8_t> edge_mask;
};

// (max(x) - x_i) / (max(x) - mean(x)); all ones for a constant vector.
std::vector<double> normalize_attr(std::span<const double> x);
// (x_i - min(x)) / (mean(x) - min(x)); all ones for a constant vector.
std::vector<double> normalize_edge(std::span<const double> x);

// Community penalty per attribute column. All-zero columns are excluded
// from the normalization and get penalty 0.
std::vector<double> attribute_penalties(const AttributedGraph& g, const Partition& p);

// Un-normalized edge weights: S_c for an edge inside community c, and
// -(S_{c(u)} + S_{c(v)}) across communities. Indexed like g.edges().
std::vector<double> raw_edge_weights(const AttributedGraph& g, const Partition& p);
std::vector<double> edge_weights(const AttributedGraph& g, const Partition& p);

struct AttributeVote {
  std::vector<std::uint8_t> mask;
  Eigen::MatrixXd attributes;
};

struct EdgeDrop {
  std::vector<std::uint8_t> mask;
  Adjacency adjacency;
};

// Column j is kept with probability clamp(1 - penalties[j] * p_a, 0, 1).
AttributeVote vote_attributes(const Eigen::MatrixXd& x, std::span<const double> penalties, double p_a, Rng& rng);
// Edge e is kept (in both directions) with probability clamp(weights[e] * p_e, 0, 1).
EdgeDrop drop_edges(const Adjacency& adjacency, std::span<const double> weights, double p_e, Rng& rng);

AttributeVote cav(const AttributedGraph& g, const Partition& p, double p_a, Rng& rng);
EdgeDrop ced(const AttributedGraph& g, const Partition& p, double p_e, Rng& rng);

// Holds the per-run penalties and edge weights so that each epoch only pays
// for sampling.
class ViewGenerator {
 public:
  ViewGenerator(const AttributedGraph& g, const Partition& p);

  const std::vector<double>& attr_penalties() const { return attr_penalties_; }
  const std::vector<double>& edge_weights() const { return edge_weights_; }

  // Draw order: view-1 attributes, view-1 edges, view-2 attributes, view-2 edges.
  std::pair<GraphView, GraphView> generate(const AugmentationConfig& cfg, Rng& rng) const;
  GraphView generate_one(double p_a, double p_e, Rng& rng) const;

 private:
  const AttributedGraph* graph_;
  std::vector<double> attr_penalties_;
  std::vector<double> edge_weights_;
};

std::pair<GraphView, GraphView> generate_views(const AttributedGraph& g, const Partition& p,
                                               const AugmentationConfig& cfg, Rng& rng);

// Unperturbed view of the graph (all masks one).
GraphView identity_view(const AttributedGraph& g);

}  // namespace csgcl
