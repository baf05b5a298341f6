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

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

namespace csgcl {

using NodeId = std::int32_t;
using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

// An undirected edge in canonical orientation (u < v).
struct Edge {
  NodeId u = 0;
  NodeId v = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Symmetric 0/1 adjacency without self-loops in compressed-row form.
// Every undirected edge appears once in edges() and twice in the rows.
class Adjacency {
 public:
  Adjacency() = default;

  // Accepts edges in any orientation; duplicates and self-loops are dropped.
  // Throws Error when an endpoint is outside [0, num_nodes).
  static Adjacency from_edges(std::size_t num_nodes, std::span<const Edge> edges);

  std::size_t num_nodes() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t num_edges() const { return edges_.size(); }

  // Canonical undirected edge list sorted lexicographically; the index of an
  // edge in this list is its edge id.
  const std::vector<Edge>& edges() const { return edges_; }

  std::span<const NodeId> neighbors(NodeId v) const {
    return {neighbors_.data() + offsets_[v], neighbors_.data() + offsets_[v + 1]};
  }
  std::size_t degree(NodeId v) const { return offsets_[v + 1] - offsets_[v]; }
  bool has_edge(NodeId u, NodeId v) const;

  friend bool operator==(const Adjacency&, const Adjacency&) = default;

 private:
  std::vector<std::size_t> offsets_;
  std::vector<NodeId> neighbors_;
  std::vector<Edge> edges_;
};

class AttributedGraph {
 public:
  AttributedGraph() = default;
  AttributedGraph(Adjacency adjacency, Eigen::MatrixXd attributes,
                  std::optional<std::vector<int>> labels = std::nullopt);

  std::size_t num_nodes() const { return adjacency_.num_nodes(); }
  std::size_t num_edges() const { return adjacency_.num_edges(); }
  std::size_t num_attributes() const { return static_cast<std::size_t>(attributes_.cols()); }

  const Adjacency& adjacency() const { return adjacency_; }
  const std::vector<Edge>& edges() const { return adjacency_.edges(); }
  std::span<const NodeId> neighbors(NodeId v) const { return adjacency_.neighbors(v); }
  std::size_t degree(NodeId v) const { return adjacency_.degree(v); }

  const Eigen::MatrixXd& attributes() const { return attributes_; }
  bool has_labels() const { return labels_.has_value(); }
  const std::vector<int>& labels() const;

 private:
  Adjacency adjacency_;
  Eigen::MatrixXd attributes_;
  std::optional<std::vector<int>> labels_;
};

std::vector<std::size_t> degree_vector(const AttributedGraph& g);

// D^{-1/2} (A + I) D^{-1/2} with D the degree matrix of A + I.
SparseMatrix normalized_adjacency(const Adjacency& adjacency);
inline SparseMatrix normalized_adjacency(const AttributedGraph& g) {
  return normalized_adjacency(g.adjacency());
}

struct LoadOptions {
  // Declares the edge file as directed; reverse arcs are added so that the
  // stored structure is the undirected closure.
  bool as_undirected = false;
};

struct LoadStats {
  std::size_t lines = 0;
  std::size_t self_loops_dropped = 0;
  std::size_t duplicates_dropped = 0;
  std::size_t reverse_arcs_added = 0;
};

AttributedGraph load_dataset(const std::filesystem::path& edge_path,
                             const std::filesystem::path& attr_path,
                             const std::optional<std::filesystem::path>& label_path = std::nullopt,
                             const LoadOptions& options = {}, LoadStats* stats = nullptr);

// Edge list text: `u v` per line, `#` comments and blank lines ignored.
std::vector<std::pair<NodeId, NodeId>> read_edge_file(const std::filesystem::path& path);
void write_edge_list(const std::filesystem::path& path, const Adjacency& adjacency);

// Attribute matrix: text CSV or binary (`CSGM` magic), detected by magic.
Eigen::MatrixXd read_attributes(const std::filesystem::path& path);
void write_attributes_text(const std::filesystem::path& path, const Eigen::MatrixXd& x);

}  // namespace csgcl
