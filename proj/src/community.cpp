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

#include "csgcl/community.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <string>

#include "csgcl/error.hpp"
#include "csgcl/io.hpp"

namespace csgcl {

std::vector<double> Partition::node_strengths() const {
  std::vector<double> out(assignment.size());
  for (std::size_t v = 0; v < out.size(); ++v) out[v] = strength[static_cast<std::size_t>(assignment[v])];
  return out;
}

Partition Partition::with_mean_strength() const {
  Partition out = *this;
  if (strength.empty()) return out;
  const double mean = std::accumulate(strength.begin(), strength.end(), 0.0) / static_cast<double>(strength.size());
  std::fill(out.strength.begin(), out.strength.end(), mean);
  return out;
}

std::vector<int> densify_assignment(std::span<const long long> ids) {
  std::map<long long, int> remap;
  for (auto id : ids) {
    if (id < 0) throw Error("community ids must be non-negative, got " + std::to_string(id));
    remap.emplace(id, 0);
  }
  int next = 0;
  for (auto& [id, dense] : remap) dense = next++;
  std::vector<int> out;
  out.reserve(ids.size());
  for (auto id : ids) out.push_back(remap.at(id));
  return out;
}

namespace {

std::size_t check_assignment(const AttributedGraph& g, std::span<const int> assignment) {
  if (assignment.size() != g.num_nodes())
    throw Error("assignment covers " + std::to_string(assignment.size()) + " nodes, graph has " +
                std::to_string(g.num_nodes()));
  if (g.num_edges() == 0) throw Error("community strength is undefined on a graph without edges");
  int max_id = -1;
  for (int c : assignment) {
    if (c < 0) throw Error("negative community id in assignment");
    max_id = std::max(max_id, c);
  }
  return static_cast<std::size_t>(max_id + 1);
}

}  // namespace

std::vector<double> community_strength_raw(const AttributedGraph& g, std::span<const int> assignment) {
  const auto num_communities = check_assignment(g, assignment);
  std::vector<double> intra(num_communities, 0.0);
  std::vector<double> degree_mass(num_communities, 0.0);
  for (const auto& e : g.edges())
    if (assignment[e.u] == assignment[e.v]) intra[assignment[e.u]] += 1.0;
  for (std::size_t v = 0; v < g.num_nodes(); ++v)
    degree_mass[assignment[v]] += static_cast<double>(g.degree(static_cast<NodeId>(v)));

  const double m = static_cast<double>(g.num_edges());
  std::vector<double> s(num_communities);
  for (std::size_t c = 0; c < num_communities; ++c)
    s[c] = intra[c] / m - degree_mass[c] * degree_mass[c] / (4.0 * m * m);
  return s;
}

std::vector<double> community_strength(const AttributedGraph& g, std::span<const int> assignment) {
  auto s = community_strength_raw(g, assignment);
  std::size_t clamped = 0;
  for (auto& value : s) {
    if (value <= 0.0) ++clamped;
    value = std::max(value, 0.0);
  }
  if (clamped > 0)
    warn(std::to_string(clamped) + " of " + std::to_string(s.size()) +
         " communities have non-positive strength; clamped to 0");
  return s;
}

double modularity(const AttributedGraph& g, std::span<const int> assignment) {
  const auto num_communities = check_assignment(g, assignment);
  const double two_m = 2.0 * static_cast<double>(g.num_edges());
  // (1/2m) sum_ij A_ij delta(c_i, c_j) walked over adjacency rows.
  double same = 0.0;
  for (std::size_t v = 0; v < g.num_nodes(); ++v)
    for (NodeId u : g.neighbors(static_cast<NodeId>(v)))
      if (assignment[v] == assignment[static_cast<std::size_t>(u)]) same += 1.0;
  std::vector<double> total_degree(num_communities, 0.0);
  for (std::size_t v = 0; v < g.num_nodes(); ++v)
    total_degree[assignment[v]] += static_cast<double>(g.degree(static_cast<NodeId>(v)));
  double expected = 0.0;
  for (double k : total_degree) expected += (k / two_m) * (k / two_m);
  return same / two_m - expected;
}

Partition make_partition(const AttributedGraph& g, std::span<const long long> ids) {
  Partition p;
  p.assignment = densify_assignment(ids);
  p.raw_strength = community_strength_raw(g, p.assignment);
  p.strength = community_strength(g, p.assignment);
  return p;
}

Partition make_partition(const AttributedGraph& g, std::span<const int> ids) {
  std::vector<long long> wide(ids.begin(), ids.end());
  return make_partition(g, std::span<const long long>(wide));
}

namespace {

// Weighted graph used across Louvain levels. Self-loop weight stores twice
// the internal edge weight so that row sums equal weighted degrees.
struct LevelGraph {
  std::vector<std::vector<std::pair<int, double>>> rows;
  std::vector<double> self_loop;

  std::size_t size() const { return rows.size(); }
};

LevelGraph level_from(const AttributedGraph& g) {
  LevelGraph lg;
  lg.rows.resize(g.num_nodes());
  lg.self_loop.assign(g.num_nodes(), 0.0);
  for (std::size_t v = 0; v < g.num_nodes(); ++v)
    for (NodeId u : g.neighbors(static_cast<NodeId>(v))) lg.rows[v].emplace_back(u, 1.0);
  return lg;
}

// One round of local moving. Returns true when any node changed community.
bool local_moving(const LevelGraph& lg, std::vector<int>& community, double resolution, std::mt19937_64& rng) {
  const auto n = lg.size();
  std::vector<double> k(n, 0.0);
  double two_m = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    k[i] = lg.self_loop[i];
    for (const auto& [j, w] : lg.rows[i]) k[i] += w;
    two_m += k[i];
  }
  std::vector<double> total(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) total[community[i]] += k[i];

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);

  std::vector<double> link(n, 0.0);
  std::vector<char> seen(n, 0);
  std::vector<int> touched;
  bool any_move = false;
  bool moved = true;
  while (moved) {
    moved = false;
    for (int i : order) {
      const int own = community[i];
      touched.clear();
      touched.push_back(own);
      seen[own] = 1;
      for (const auto& [j, w] : lg.rows[i]) {
        const int c = community[j];
        if (!seen[c]) {
          seen[c] = 1;
          touched.push_back(c);
        }
        link[c] += w;
      }
      total[own] -= k[i];
      const double scale = resolution * k[i] / two_m;
      const double own_gain = link[own] - scale * total[own];
      int best = own;
      double best_gain = own_gain;
      for (int c : touched) {
        const double gain = link[c] - scale * total[c];
        if (gain > best_gain + 1e-12) {
          best = c;
          best_gain = gain;
        }
      }
      total[best] += k[i];
      if (best != own) {
        community[i] = best;
        moved = true;
        any_move = true;
      }
      for (int c : touched) {
        link[c] = 0.0;
        seen[c] = 0;
      }
    }
  }
  return any_move;
}

// Renumbers communities densely (first-appearance order) and returns count.
int renumber(std::vector<int>& community) {
  std::vector<int> map(community.size(), -1);
  int next = 0;
  for (auto& c : community) {
    if (map[c] < 0) map[c] = next++;
    c = map[c];
  }
  return next;
}

LevelGraph aggregate(const LevelGraph& lg, const std::vector<int>& community, int num_communities) {
  LevelGraph out;
  out.rows.resize(static_cast<std::size_t>(num_communities));
  out.self_loop.assign(static_cast<std::size_t>(num_communities), 0.0);
  std::vector<std::map<int, double>> acc(static_cast<std::size_t>(num_communities));
  for (std::size_t i = 0; i < lg.size(); ++i) {
    const int ci = community[i];
    out.self_loop[ci] += lg.self_loop[i];
    for (const auto& [j, w] : lg.rows[i]) {
      const int cj = community[j];
      if (ci == cj)
        out.self_loop[ci] += w;
      else
        acc[ci][cj] += w;
    }
  }
  for (std::size_t c = 0; c < acc.size(); ++c)
    for (const auto& [d, w] : acc[c]) out.rows[c].emplace_back(d, w);
  return out;
}

}  // namespace

Partition louvain(const AttributedGraph& g, const LouvainOptions& options) {
  if (g.num_edges() == 0) throw Error("louvain: graph has no edges, modularity is undefined");
  if (!(options.resolution > 0.0)) throw Error("louvain: resolution must be positive");

  std::mt19937_64 rng(options.seed);
  std::vector<int> node_community(g.num_nodes());
  std::iota(node_community.begin(), node_community.end(), 0);

  LevelGraph level = level_from(g);
  while (true) {
    std::vector<int> community(level.size());
    std::iota(community.begin(), community.end(), 0);
    if (!local_moving(level, community, options.resolution, rng)) break;
    const int count = renumber(community);
    for (auto& c : node_community) c = community[c];
    if (static_cast<std::size_t>(count) == level.size()) break;
    level = aggregate(level, community, count);
  }
  std::vector<long long> ids(node_community.begin(), node_community.end());
  return make_partition(g, std::span<const long long>(ids));
}

Partition import_partition(const AttributedGraph& g, const std::filesystem::path& path) {
  const auto ids = io::read_int_lines(path);
  if (ids.size() != g.num_nodes())
    throw Error(path.string() + ": " + std::to_string(ids.size()) + " community ids for " +
                std::to_string(g.num_nodes()) + " nodes");
  return make_partition(g, std::span<const long long>(ids));
}

void export_partition(const std::filesystem::path& path, const Partition& p) {
  io::write_int_lines(path, p.assignment);
}

}  // namespace csgcl
