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

#include "csgcl/graph.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <string>

#include "csgcl/error.hpp"
#include "csgcl/io.hpp"

namespace csgcl {

Adjacency Adjacency::from_edges(std::size_t num_nodes, std::span<const Edge> edges) {
  Adjacency adj;
  adj.edges_.reserve(edges.size());
  const auto n = static_cast<long long>(num_nodes);
  for (const auto& e : edges) {
    if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n)
      throw Error("edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) +
                  ") has a node id outside [0, " + std::to_string(num_nodes) + ")");
    if (e.u == e.v) continue;
    adj.edges_.push_back(e.u < e.v ? e : Edge{e.v, e.u});
  }
  std::sort(adj.edges_.begin(), adj.edges_.end());
  adj.edges_.erase(std::unique(adj.edges_.begin(), adj.edges_.end()), adj.edges_.end());

  std::vector<std::size_t> counts(num_nodes + 1, 0);
  for (const auto& e : adj.edges_) {
    ++counts[e.u + 1];
    ++counts[e.v + 1];
  }
  for (std::size_t i = 1; i <= num_nodes; ++i) counts[i] += counts[i - 1];
  adj.offsets_ = counts;
  adj.neighbors_.resize(2 * adj.edges_.size());
  auto fill = counts;
  for (const auto& e : adj.edges_) {
    adj.neighbors_[fill[e.u]++] = e.v;
    adj.neighbors_[fill[e.v]++] = e.u;
  }
  for (std::size_t v = 0; v < num_nodes; ++v)
    std::sort(adj.neighbors_.begin() + static_cast<std::ptrdiff_t>(adj.offsets_[v]),
              adj.neighbors_.begin() + static_cast<std::ptrdiff_t>(adj.offsets_[v + 1]));
  return adj;
}

bool Adjacency::has_edge(NodeId u, NodeId v) const {
  auto row = neighbors(u);
  return std::binary_search(row.begin(), row.end(), v);
}

AttributedGraph::AttributedGraph(Adjacency adjacency, Eigen::MatrixXd attributes,
                                 std::optional<std::vector<int>> labels)
    : adjacency_(std::move(adjacency)), attributes_(std::move(attributes)), labels_(std::move(labels)) {
  if (static_cast<std::size_t>(attributes_.rows()) != adjacency_.num_nodes())
    throw Error("attribute matrix has " + std::to_string(attributes_.rows()) + " rows but the graph has " +
                std::to_string(adjacency_.num_nodes()) + " nodes");
  if (labels_ && labels_->size() != adjacency_.num_nodes())
    throw Error("label vector has " + std::to_string(labels_->size()) + " entries but the graph has " +
                std::to_string(adjacency_.num_nodes()) + " nodes");
}

const std::vector<int>& AttributedGraph::labels() const {
  if (!labels_) throw Error("graph has no labels");
  return *labels_;
}

std::vector<std::size_t> degree_vector(const AttributedGraph& g) {
  std::vector<std::size_t> deg(g.num_nodes());
  for (std::size_t v = 0; v < deg.size(); ++v) deg[v] = g.degree(static_cast<NodeId>(v));
  return deg;
}

SparseMatrix normalized_adjacency(const Adjacency& adjacency) {
  const auto n = adjacency.num_nodes();
  // Entries are 1/sqrt(d_u d_v) with self-loop degrees; the product is exact
  // in integers, so small cases such as 1/2 and 1/3 come out exact.
  std::vector<double> deg(n);
  for (std::size_t v = 0; v < n; ++v) deg[v] = static_cast<double>(adjacency.degree(static_cast<NodeId>(v)) + 1);

  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(n + 2 * adjacency.num_edges());
  for (std::size_t v = 0; v < n; ++v) {
    const auto row = static_cast<NodeId>(v);
    triplets.emplace_back(row, row, 1.0 / deg[v]);
    for (NodeId u : adjacency.neighbors(row)) triplets.emplace_back(row, u, 1.0 / std::sqrt(deg[v] * deg[u]));
  }
  SparseMatrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  m.setFromTriplets(triplets.begin(), triplets.end());
  return m;
}

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <typename T>
bool parse_number(std::string_view token, T& out) {
  token = trim(token);
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), out);
  return !token.empty() && ec == std::errc() && ptr == token.data() + token.size();
}

Eigen::MatrixXd read_attributes_text(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    std::vector<double> row;
    std::string_view rest(line);
    while (true) {
      const auto comma = rest.find(',');
      double value = 0.0;
      if (!parse_number(rest.substr(0, comma), value))
        throw Error(path.string() + ":" + std::to_string(line_no) + ": non-numeric attribute entry '" +
                    std::string(trim(rest.substr(0, comma))) + "'");
      row.push_back(value);
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (!rows.empty() && row.size() != rows.front().size())
      throw Error(path.string() + ":" + std::to_string(line_no) + ": expected " +
                  std::to_string(rows.front().size()) + " columns, found " + std::to_string(row.size()));
    rows.push_back(std::move(row));
  }
  const auto d = rows.empty() ? 0 : rows.front().size();
  Eigen::MatrixXd x(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(d));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < d; ++j) x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
  return x;
}

}  // namespace

std::vector<std::pair<NodeId, NodeId>> read_edge_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  std::vector<std::pair<NodeId, NodeId>> arcs;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    const auto split = body.find_first_of(" \t");
    long long u = 0;
    long long v = 0;
    if (split == std::string_view::npos || !parse_number(body.substr(0, split), u) ||
        !parse_number(body.substr(split + 1), v))
      throw Error(path.string() + ":" + std::to_string(line_no) + ": expected `u v` integer pair");
    if (u < 0 || v < 0 || u > INT32_MAX || v > INT32_MAX)
      throw Error(path.string() + ":" + std::to_string(line_no) + ": node id out of range");
    arcs.emplace_back(static_cast<NodeId>(u), static_cast<NodeId>(v));
  }
  return arcs;
}

void write_edge_list(const std::filesystem::path& path, const Adjacency& adjacency) {
  std::string out;
  for (const auto& e : adjacency.edges()) {
    out += std::to_string(e.u);
    out += ' ';
    out += std::to_string(e.v);
    out += '\n';
  }
  io::write_file(path, out);
}

Eigen::MatrixXd read_attributes(const std::filesystem::path& path) {
  if (io::has_magic(path, io::kAttributeMagic)) return io::read_matrix(path, io::kAttributeMagic);
  return read_attributes_text(path);
}

void write_attributes_text(const std::filesystem::path& path, const Eigen::MatrixXd& x) {
  std::string out;
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
      if (j) out += ',';
      out += io::format_double(x(i, j));
    }
    out += '\n';
  }
  io::write_file(path, out);
}

AttributedGraph load_dataset(const std::filesystem::path& edge_path, const std::filesystem::path& attr_path,
                             const std::optional<std::filesystem::path>& label_path, const LoadOptions& options,
                             LoadStats* stats) {
  Eigen::MatrixXd x = read_attributes(attr_path);
  const auto n = static_cast<std::size_t>(x.rows());
  const auto arcs = read_edge_file(edge_path);

  LoadStats local;
  local.lines = arcs.size();
  std::set<std::pair<NodeId, NodeId>> arc_set;
  std::vector<Edge> edges;
  edges.reserve(arcs.size());
  for (const auto& [u, v] : arcs) {
    if (static_cast<std::size_t>(u) >= n || static_cast<std::size_t>(v) >= n)
      throw Error(edge_path.string() + ": node id " + std::to_string(std::max(u, v)) + " out of range for " +
                  std::to_string(n) + " attribute rows");
    if (u == v) {
      ++local.self_loops_dropped;
      continue;
    }
    arc_set.emplace(u, v);
    edges.push_back({u, v});
  }
  if (options.as_undirected) {
    for (const auto& [u, v] : arc_set)
      if (!arc_set.contains({v, u})) ++local.reverse_arcs_added;
  }

  auto adjacency = Adjacency::from_edges(n, edges);
  local.duplicates_dropped = edges.size() - adjacency.num_edges();

  std::optional<std::vector<int>> labels;
  if (label_path) {
    const auto raw = io::read_int_lines(*label_path);
    if (raw.size() != n)
      throw Error(label_path->string() + ": " + std::to_string(raw.size()) + " labels for " + std::to_string(n) +
                  " nodes");
    labels.emplace();
    labels->reserve(n);
    for (auto v : raw) {
      if (v < 0 || v > INT32_MAX) throw Error(label_path->string() + ": negative or oversized class id");
      labels->push_back(static_cast<int>(v));
    }
  }
  if (stats) *stats = local;
  return AttributedGraph(std::move(adjacency), std::move(x), std::move(labels));
}

}  // namespace csgcl
