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

#include "csgcl/augment.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "csgcl/error.hpp"

namespace csgcl {

void AugmentationConfig::validate() const {
  const std::pair<const char*, double> fields[] = {{"p_a1", p_a1}, {"p_a2", p_a2}, {"p_e1", p_e1}, {"p_e2", p_e2}};
  for (const auto& [name, value] : fields)
    if (!(value >= 0.0 && value <= 1.0))
      throw Error(std::string(name) + " must lie in [0, 1], got " + std::to_string(value));
}

namespace {

double mean_of(std::span<const double> x) {
  return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

bool bernoulli(double q, Rng& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  return unit(rng) < q;
}

}  // namespace

std::vector<double> normalize_attr(std::span<const double> x) {
  if (x.empty()) throw Error("normalize_attr: empty vector");
  const double hi = *std::max_element(x.begin(), x.end());
  const double mean = mean_of(x);
  std::vector<double> out(x.size(), 1.0);
  if (hi == mean) return out;
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = (hi - x[i]) / (hi - mean);
  return out;
}

std::vector<double> normalize_edge(std::span<const double> x) {
  if (x.empty()) throw Error("normalize_edge: empty vector");
  const double lo = *std::min_element(x.begin(), x.end());
  const double mean = mean_of(x);
  std::vector<double> out(x.size(), 1.0);
  if (mean == lo) return out;
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = (x[i] - lo) / (mean - lo);
  return out;
}

std::vector<double> attribute_penalties(const AttributedGraph& g, const Partition& p) {
  const auto& x = g.attributes();
  const auto d = static_cast<std::size_t>(x.cols());
  if (p.num_nodes() != g.num_nodes()) throw Error("attribute_penalties: partition does not cover the graph");

  // abs(X)^T H S == abs(X)^T s, where s_i is the strength of node i's community.
  const auto node_s = p.node_strengths();
  const Eigen::Map<const Eigen::VectorXd> s(node_s.data(), static_cast<Eigen::Index>(node_s.size()));
  const Eigen::VectorXd scores = x.cwiseAbs().transpose() * s;

  std::vector<std::size_t> voting;
  std::vector<double> voting_scores;
  for (std::size_t j = 0; j < d; ++j) {
    if (x.col(static_cast<Eigen::Index>(j)).cwiseAbs().maxCoeff() == 0.0) continue;
    voting.push_back(j);
    voting_scores.push_back(scores(static_cast<Eigen::Index>(j)));
  }
  std::vector<double> penalties(d, 0.0);
  if (voting.empty()) return penalties;
  const auto normalized = normalize_attr(voting_scores);
  for (std::size_t k = 0; k < voting.size(); ++k) penalties[voting[k]] = normalized[k];
  return penalties;
}

std::vector<double> raw_edge_weights(const AttributedGraph& g, const Partition& p) {
  if (p.num_nodes() != g.num_nodes()) throw Error("edge_weights: partition does not cover the graph");
  std::vector<double> w;
  w.reserve(g.num_edges());
  for (const auto& e : g.edges()) {
    if (p.community_of(e.u) == p.community_of(e.v))
      w.push_back(p.node_strength(e.u));
    else
      w.push_back(-(p.node_strength(e.u) + p.node_strength(e.v)));
  }
  return w;
}

std::vector<double> edge_weights(const AttributedGraph& g, const Partition& p) {
  if (g.num_edges() == 0) throw Error("edge_weights: graph has no edges");
  return normalize_edge(raw_edge_weights(g, p));
}

AttributeVote vote_attributes(const Eigen::MatrixXd& x, std::span<const double> penalties, double p_a, Rng& rng) {
  if (penalties.size() != static_cast<std::size_t>(x.cols()))
    throw Error("vote_attributes: penalty count does not match attribute width");
  AttributeVote out;
  out.mask.resize(penalties.size());
  out.attributes = x;
  for (std::size_t j = 0; j < penalties.size(); ++j) {
    const double keep = std::clamp(1.0 - penalties[j] * p_a, 0.0, 1.0);
    out.mask[j] = bernoulli(keep, rng) ? 1 : 0;
    if (!out.mask[j]) out.attributes.col(static_cast<Eigen::Index>(j)).setZero();
  }
  return out;
}

EdgeDrop drop_edges(const Adjacency& adjacency, std::span<const double> weights, double p_e, Rng& rng) {
  const auto& edges = adjacency.edges();
  if (weights.size() != edges.size()) throw Error("drop_edges: weight count does not match edge count");
  EdgeDrop out;
  out.mask.resize(edges.size());
  std::vector<Edge> kept;
  kept.reserve(edges.size());
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const double keep = std::clamp(weights[e] * p_e, 0.0, 1.0);
    out.mask[e] = bernoulli(keep, rng) ? 1 : 0;
    if (out.mask[e]) kept.push_back(edges[e]);
  }
  out.adjacency = Adjacency::from_edges(adjacency.num_nodes(), kept);
  return out;
}

AttributeVote cav(const AttributedGraph& g, const Partition& p, double p_a, Rng& rng) {
  return vote_attributes(g.attributes(), attribute_penalties(g, p), p_a, rng);
}

EdgeDrop ced(const AttributedGraph& g, const Partition& p, double p_e, Rng& rng) {
  if (g.num_edges() == 0) return {{}, g.adjacency()};
  return drop_edges(g.adjacency(), edge_weights(g, p), p_e, rng);
}

ViewGenerator::ViewGenerator(const AttributedGraph& g, const Partition& p)
    : graph_(&g), attr_penalties_(attribute_penalties(g, p)) {
  if (g.num_edges() > 0) edge_weights_ = csgcl::edge_weights(g, p);
}

GraphView ViewGenerator::generate_one(double p_a, double p_e, Rng& rng) const {
  auto attrs = vote_attributes(graph_->attributes(), attr_penalties_, p_a, rng);
  auto edges = drop_edges(graph_->adjacency(), edge_weights_, p_e, rng);
  return {std::move(attrs.attributes), std::move(edges.adjacency), std::move(attrs.mask), std::move(edges.mask)};
}

std::pair<GraphView, GraphView> ViewGenerator::generate(const AugmentationConfig& cfg, Rng& rng) const {
  cfg.validate();
  auto first = generate_one(cfg.p_a1, cfg.p_e1, rng);
  auto second = generate_one(cfg.p_a2, cfg.p_e2, rng);
  return {std::move(first), std::move(second)};
}

std::pair<GraphView, GraphView> generate_views(const AttributedGraph& g, const Partition& p,
                                               const AugmentationConfig& cfg, Rng& rng) {
  return ViewGenerator(g, p).generate(cfg, rng);
}

GraphView identity_view(const AttributedGraph& g) {
  return {g.attributes(), g.adjacency(), std::vector<std::uint8_t>(g.num_attributes(), 1),
          std::vector<std::uint8_t>(g.num_edges(), 1)};
}

}  // namespace csgcl
