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

#include <algorithm>
#include <map>
#include <numeric>

#include "csgcl/community.hpp"
#include "csgcl/error.hpp"
#include "csgcl/io.hpp"
#include "csgcl/synthetic.hpp"
#include "test_support.hpp"

using namespace csgcl;
using csgcl::testing::make_graph;
using csgcl::testing::QuietWarnings;
using csgcl::testing::TempDir;

namespace {

// Dense double-sum definition: Q = 1/(2m) sum_ij [A_ij - k_i k_j / 2m] delta(c_i, c_j).
double brute_modularity(const AttributedGraph& g, const std::vector<int>& c) {
  const auto n = g.num_nodes();
  const double two_m = 2.0 * static_cast<double>(g.num_edges());
  double q = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (c[i] != c[j]) continue;
      const double a = g.adjacency().has_edge(static_cast<NodeId>(i), static_cast<NodeId>(j)) ? 1.0 : 0.0;
      q += a - static_cast<double>(g.degree(static_cast<NodeId>(i)) * g.degree(static_cast<NodeId>(j))) / two_m;
    }
  return q / two_m;
}

// Per-community edge counting straight from the edge list.
std::vector<double> brute_strength(const AttributedGraph& g, const std::vector<int>& c, int k) {
  std::vector<double> inside(k, 0.0), volume(k, 0.0);
  for (const auto& e : g.edges()) {
    if (c[e.u] == c[e.v]) inside[c[e.u]] += 1.0;
    volume[c[e.u]] += 1.0;
    volume[c[e.v]] += 1.0;
  }
  const double m = static_cast<double>(g.num_edges());
  std::vector<double> s(k);
  for (int i = 0; i < k; ++i) s[i] = inside[i] / m - volume[i] * volume[i] / (4.0 * m * m);
  return s;
}

}  // namespace

TEST_CASE("community strength hand examples") {
  QuietWarnings quiet;
  const auto tri = csgcl::testing::two_triangles(false);
  SUBCASE("whole graph") {
    const std::vector<int> one(6, 0);
    CHECK(community_strength(tri, one) == std::vector<double>{0.0});
  }
  SUBCASE("two disjoint triangles") {
    const std::vector<int> split = {0, 0, 0, 1, 1, 1};
    const auto s = community_strength(tri, split);
    REQUIRE(s.size() == 2);
    CHECK(s[0] == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(s[1] == doctest::Approx(0.25).epsilon(1e-15));
  }
  SUBCASE("singleton with degree 3 in a 10-edge graph") {
    const auto g = make_graph(8, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {4, 7}});
    REQUIRE(g.num_edges() == 10);
    std::vector<int> c(8, 1);
    c[0] = 0;
    const auto raw = community_strength_raw(g, c);
    CHECK(raw[0] == doctest::Approx(-9.0 / 400.0).epsilon(1e-15));
    std::vector<std::string> warnings;
    auto previous = set_warning_sink([&](std::string_view m) { warnings.emplace_back(m); });
    const auto clamped = community_strength(g, c);
    set_warning_sink(previous);
    CHECK(clamped[0] == 0.0);
    for (std::size_t c = 0; c < raw.size(); ++c) CHECK(clamped[c] == std::max(raw[c], 0.0));
    CHECK(warnings.size() == 1);
  }
  SUBCASE("no edges") { CHECK_THROWS_AS(community_strength(make_graph(3, {}), std::vector<int>{0, 0, 0}), Error); }
}

TEST_CASE("modularity hand examples") {
  const auto tri = csgcl::testing::two_triangles(false);
  CHECK(modularity(tri, std::vector<int>(6, 0)) == doctest::Approx(0.0));
  CHECK(modularity(tri, std::vector<int>{0, 0, 0, 1, 1, 1}) == doctest::Approx(0.5).epsilon(1e-15));
  const auto k3 = make_graph(3, {{0, 1}, {1, 2}, {0, 2}});
  CHECK(modularity(k3, std::vector<int>{0, 1, 2}) == doctest::Approx(-1.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("sum of raw strengths equals modularity and the brute-force oracle") {
  QuietWarnings quiet;
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const auto adj = synthetic::erdos_renyi(25, 0.15, 100 + trial);
    if (adj.num_edges() == 0) continue;
    AttributedGraph g(adj, Eigen::MatrixXd::Ones(25, 1));
    const int k = 1 + trial % 5;
    std::vector<int> c(25);
    for (auto& v : c) v = static_cast<int>(rng() % k);
    const auto p = make_partition(g, c);
    const double q = modularity(g, p.assignment);
    const auto raw = community_strength_raw(g, p.assignment);
    CHECK(std::abs(std::accumulate(raw.begin(), raw.end(), 0.0) - q) < 1e-12);
    CHECK(std::abs(brute_modularity(g, p.assignment) - q) < 1e-12);
    const auto oracle = brute_strength(g, p.assignment, static_cast<int>(p.num_communities()));
    for (std::size_t i = 0; i < raw.size(); ++i) CHECK(std::abs(raw[i] - oracle[i]) < 1e-12);
  }
}

TEST_CASE("permuting community labels keeps the strength multiset") {
  QuietWarnings quiet;
  const auto g = csgcl::testing::karate();
  std::vector<int> c(34);
  for (int i = 0; i < 34; ++i) c[i] = i % 4;
  std::vector<int> permuted(34);
  const int perm[4] = {2, 0, 3, 1};
  for (int i = 0; i < 34; ++i) permuted[i] = perm[c[i]];
  auto a = community_strength(g, c);
  auto b = community_strength(g, permuted);
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  CHECK(a == b);
}

TEST_CASE("louvain") {
  QuietWarnings quiet;
  SUBCASE("two disjoint 4-cliques") {
    std::vector<std::pair<int, int>> e;
    for (int base : {0, 4})
      for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) e.push_back({base + i, base + j});
    const auto g = make_graph(8, e);
    const auto p = louvain(g);
    REQUIRE(p.num_communities() == 2);
    for (int i = 0; i < 4; ++i) {
      CHECK(p.assignment[i] == p.assignment[0]);
      CHECK(p.assignment[4 + i] == p.assignment[4]);
    }
    CHECK(p.assignment[0] != p.assignment[4]);
  }
  SUBCASE("karate reaches modularity 0.40") {
    const auto g = csgcl::testing::karate();
    CHECK(brute_modularity(g, louvain(g).assignment) >= 0.40);
    // Some visit orders stop in a local optimum just under 0.40.
    for (std::uint64_t seed = 0; seed < 20; ++seed) CHECK(modularity(g, louvain(g, {1.0, seed}).assignment) >= 0.39);
  }
  SUBCASE("single edge does not worsen on singletons") {
    const auto g = make_graph(2, {{0, 1}});
    const auto p = louvain(g);
    CHECK(p.num_communities() >= 1);
    CHECK(p.num_communities() <= 2);
    CHECK(modularity(g, p.assignment) >= modularity(g, std::vector<int>{0, 1}));
  }
  SUBCASE("never below the singleton partition, deterministic under a seed") {
    for (int trial = 0; trial < 10; ++trial) {
      const auto adj = synthetic::erdos_renyi(40, 0.1, 500 + trial);
      if (adj.num_edges() == 0) continue;
      AttributedGraph g(adj, Eigen::MatrixXd::Ones(40, 1));
      std::vector<int> singletons(40);
      std::iota(singletons.begin(), singletons.end(), 0);
      const auto a = louvain(g, {1.0, static_cast<std::uint64_t>(trial)});
      const auto b = louvain(g, {1.0, static_cast<std::uint64_t>(trial)});
      CHECK(modularity(g, a.assignment) >= modularity(g, singletons));
      CHECK(a.assignment == b.assignment);
      CHECK(a.raw_strength == b.raw_strength);
      for (double s : a.strength) CHECK(s >= 0.0);
    }
  }
}

TEST_CASE("import and export partitions") {
  QuietWarnings quiet;
  TempDir dir;
  SUBCASE("all zeros") {
    const auto g = csgcl::testing::two_triangles(true);
    io::write_file(dir / "p.txt", "0\n0\n0\n0\n0\n0\n");
    const auto p = import_partition(g, dir / "p.txt");
    CHECK(p.num_communities() == 1);
  }
  SUBCASE("sparse ids are remapped densely") {
    const auto g = make_graph(2, {{0, 1}});
    io::write_file(dir / "p.txt", "9\n5\n");
    const auto p = import_partition(g, dir / "p.txt");
    CHECK(p.assignment == std::vector<int>{1, 0});
  }
  SUBCASE("external karate partition matches per-community edge counting") {
    const auto g = csgcl::testing::karate();
    const auto labels = g.labels();
    // Four groups cut across the factions so that the file is not a Louvain output.
    std::string text;
    for (int v = 0; v < 34; ++v) text += std::to_string(10 * labels[v] + (v % 2)) + "\n";
    io::write_file(dir / "p.txt", text);
    const auto p = import_partition(g, dir / "p.txt");
    REQUIRE(p.num_communities() == 4);
    const auto oracle = brute_strength(g, p.assignment, 4);
    for (int c = 0; c < 4; ++c) CHECK(std::abs(p.raw_strength[c] - oracle[c]) < 1e-12);

    export_partition(dir / "out.txt", p);
    CHECK(import_partition(g, dir / "out.txt").assignment == p.assignment);
  }
  SUBCASE("errors") {
    const auto g = make_graph(2, {{0, 1}});
    io::write_file(dir / "short.txt", "0\n");
    CHECK_THROWS_AS(import_partition(g, dir / "short.txt"), Error);
    io::write_file(dir / "neg.txt", "0\n-1\n");
    CHECK_THROWS_AS(import_partition(g, dir / "neg.txt"), Error);
    io::write_file(dir / "text.txt", "0\nx\n");
    CHECK_THROWS_AS(import_partition(g, dir / "text.txt"), Error);
  }
}

TEST_CASE("mean-strength ablation keeps the assignment") {
  QuietWarnings quiet;
  const auto g = csgcl::testing::two_triangles(true);
  auto p = make_partition(g, std::vector<int>{0, 0, 0, 1, 1, 1, });
  p.strength = {0.1, 0.3};
  const auto m = p.with_mean_strength();
  CHECK(m.assignment == p.assignment);
  CHECK(m.strength == std::vector<double>{0.2, 0.2});
}
