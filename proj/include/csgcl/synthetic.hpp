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
#include <vector>

#include "csgcl/graph.hpp"

namespace csgcl::synthetic {

// G(n, p): every unordered pair is an edge independently with probability p.
Adjacency erdos_renyi(std::size_t n, double p, std::uint64_t seed);

struct PlantedGraph {
  Adjacency adjacency;
  std::vector<int> blocks;
};

// Stochastic block model: pairs inside a block connect with p_in, pairs
// across blocks with p_out. Nodes are laid out block by block.
PlantedGraph planted_partition(const std::vector<std::size_t>& block_sizes, double p_in, double p_out,
                               std::uint64_t seed);

// Attributes correlated with block membership: each block draws a mean
// vector from N(0, 1) and each node adds N(0, noise^2) per dimension.
Eigen::MatrixXd block_attributes(const std::vector<int>& blocks, std::size_t dim, double noise, std::uint64_t seed);

}  // namespace csgcl::synthetic
