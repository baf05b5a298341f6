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

#include "csgcl/synthetic.hpp"

#include <algorithm>
#include <random>

#include "csgcl/error.hpp"

namespace csgcl::synthetic {

Adjacency erdos_renyi(std::size_t n, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw Error("erdos_renyi: p must lie in [0, 1]");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Edge> edges;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v)
      if (unit(rng) < p) edges.push_back({static_cast<NodeId>(u), static_cast<NodeId>(v)});
  return Adjacency::from_edges(n, edges);
}

PlantedGraph planted_partition(const std::vector<std::size_t>& block_sizes, double p_in, double p_out,
                               std::uint64_t seed) {
  if (!(p_in >= 0.0 && p_in <= 1.0 && p_out >= 0.0 && p_out <= 1.0))
    throw Error("planted_partition: probabilities must lie in [0, 1]");
  PlantedGraph out;
  for (std::size_t b = 0; b < block_sizes.size(); ++b)
    out.blocks.insert(out.blocks.end(), block_sizes[b], static_cast<int>(b));
  const auto n = out.blocks.size();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Edge> edges;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v)
      if (unit(rng) < (out.blocks[u] == out.blocks[v] ? p_in : p_out))
        edges.push_back({static_cast<NodeId>(u), static_cast<NodeId>(v)});
  out.adjacency = Adjacency::from_edges(n, edges);
  return out;
}

Eigen::MatrixXd block_attributes(const std::vector<int>& blocks, std::size_t dim, double noise, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const int num_blocks = blocks.empty() ? 0 : *std::max_element(blocks.begin(), blocks.end()) + 1;
  Eigen::MatrixXd means(num_blocks, static_cast<Eigen::Index>(dim));
  for (Eigen::Index i = 0; i < means.size(); ++i) means.data()[i] = normal(rng);
  Eigen::MatrixXd x(static_cast<Eigen::Index>(blocks.size()), static_cast<Eigen::Index>(dim));
  for (std::size_t v = 0; v < blocks.size(); ++v)
    for (std::size_t j = 0; j < dim; ++j)
      x(static_cast<Eigen::Index>(v), static_cast<Eigen::Index>(j)) =
          means(blocks[v], static_cast<Eigen::Index>(j)) + noise * normal(rng);
  return x;
}

}  // namespace csgcl::synthetic
