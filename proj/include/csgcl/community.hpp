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
#include <vector>

#include "csgcl/graph.hpp"

namespace csgcl {

// Non-overlapping node -> community assignment together with the strength
// of every community. Community ids are dense in [0, num_communities()).
//
// `raw_strength` holds the per-community modularity contributions as
// computed; `strength` is the clamped copy (max(S_c, 0)) that every
// downstream consumer uses.
struct Partition {
  std::vector<int> assignment;
  std::vector<double> strength;
  std::vector<double> raw_strength;

  std::size_t num_nodes() const { return assignment.size(); }
  std::size_t num_communities() const { return strength.size(); }

  int community_of(NodeId v) const { return assignment[static_cast<std::size_t>(v)]; }
  // Indicator lookup H[v, c].
  bool member(NodeId v, int c) const { return community_of(v) == c; }
  // Row product H[v, :] * S.
  double node_strength(NodeId v) const { return strength[static_cast<std::size_t>(community_of(v))]; }
  std::vector<double> node_strengths() const;

  // Copy in which every community carries the mean clamped strength.
  Partition with_mean_strength() const;
};

// Remaps arbitrary non-negative ids to dense ids in ascending id order.
std::vector<int> densify_assignment(std::span<const long long> ids);

// S_c = |E_c|/|E| - (sum_{v in c} d(v))^2 / (4 |E|^2), before clamping.
// The assignment must be dense. Throws when the graph has no edges.
std::vector<double> community_strength_raw(const AttributedGraph& g, std::span<const int> assignment);

// Same as community_strength_raw, clamped at zero. Emits a warning when any
// community has non-positive raw strength.
std::vector<double> community_strength(const AttributedGraph& g, std::span<const int> assignment);

// Newman modularity of the partition, evaluated independently of the
// per-community strength routine.
double modularity(const AttributedGraph& g, std::span<const int> assignment);

// Builds a Partition from any community ids (remapped densely).
Partition make_partition(const AttributedGraph& g, std::span<const long long> ids);
Partition make_partition(const AttributedGraph& g, std::span<const int> ids);

struct LouvainOptions {
  double resolution = 1.0;
  std::uint64_t seed = 0;
};

Partition louvain(const AttributedGraph& g, const LouvainOptions& options = {});

// Partition file: one integer community id per line, line index = node id.
Partition import_partition(const AttributedGraph& g, const std::filesystem::path& path);
void export_partition(const std::filesystem::path& path, const Partition& p);

}  // namespace csgcl
