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

// Python bindings for the csgcl core library.

#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "csgcl/augment.hpp"
#include "csgcl/community.hpp"
#include "csgcl/config.hpp"
#include "csgcl/error.hpp"
#include "csgcl/eval.hpp"
#include "csgcl/graph.hpp"
#include "csgcl/model.hpp"
#include "csgcl/objective.hpp"
#include "csgcl/pipeline.hpp"
#include "csgcl/training.hpp"

namespace py = pybind11;
using namespace csgcl;

namespace {

using EdgeArray = Eigen::Matrix<std::int64_t, Eigen::Dynamic, 2, Eigen::RowMajor>;

Adjacency adjacency_from_array(std::size_t n, const EdgeArray& pairs) {
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(pairs.rows()));
  for (Eigen::Index i = 0; i < pairs.rows(); ++i) {
    const auto u = pairs(i, 0), v = pairs(i, 1);
    if (u < 0 || v < 0 || static_cast<std::size_t>(u) >= n || static_cast<std::size_t>(v) >= n)
      throw Error("edge (" + std::to_string(u) + ", " + std::to_string(v) + ") out of range");
    edges.push_back({static_cast<NodeId>(u), static_cast<NodeId>(v)});
  }
  return Adjacency::from_edges(n, edges);
}

EdgeArray edges_to_array(const Adjacency& a) {
  EdgeArray out(static_cast<Eigen::Index>(a.num_edges()), 2);
  for (std::size_t i = 0; i < a.num_edges(); ++i) {
    out(static_cast<Eigen::Index>(i), 0) = a.edges()[i].u;
    out(static_cast<Eigen::Index>(i), 1) = a.edges()[i].v;
  }
  return out;
}

py::dict report_to_dict(const EvalReport& r) {
  py::dict metrics;
  for (const auto& [name, s] : r.metrics) metrics[py::str(name)] = py::make_tuple(s.mean, s.std);
  py::dict split;
  for (const auto& [key, value] : r.split) split[py::str(key)] = value;
  py::dict out;
  out["task"] = r.task;
  out["metrics"] = metrics;
  out["split"] = split;
  return out;
}

py::dict view_to_dict(const GraphView& v) {
  py::dict out;
  out["attributes"] = v.attributes;
  out["edges"] = edges_to_array(v.adjacency);
  out["attr_mask"] = v.attr_mask;
  out["edge_mask"] = v.edge_mask;
  return out;
}

}  // namespace

PYBIND11_MODULE(_csgcl, m) {
  m.doc() = "Community-strength-enhanced graph contrastive learning";
  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);

  py::enum_<Activation>(m, "Activation")
      .value("ReLU", Activation::ReLU)
      .value("PReLU", Activation::PReLU)
      .value("RReLU", Activation::RReLU);

  py::class_<AttributedGraph>(m, "Graph")
      .def(py::init([](std::size_t n, const EdgeArray& edges, const Eigen::MatrixXd& x,
                       std::optional<std::vector<int>> labels) {
             return AttributedGraph(adjacency_from_array(n, edges), x, std::move(labels));
           }),
           py::arg("num_nodes"), py::arg("edges"), py::arg("attributes"), py::arg("labels") = py::none())
      .def_static(
          "load",
          [](const std::filesystem::path& edges, const std::filesystem::path& attributes,
             std::optional<std::filesystem::path> labels, bool as_undirected) {
            return load_dataset(edges, attributes, labels, {as_undirected});
          },
          py::arg("edges"), py::arg("attributes"), py::arg("labels") = py::none(), py::arg("as_undirected") = false)
      .def_property_readonly("num_nodes", &AttributedGraph::num_nodes)
      .def_property_readonly("num_edges", &AttributedGraph::num_edges)
      .def_property_readonly("edges", [](const AttributedGraph& g) { return edges_to_array(g.adjacency()); })
      .def_property_readonly("attributes", &AttributedGraph::attributes)
      .def_property_readonly("labels",
                             [](const AttributedGraph& g) -> std::optional<std::vector<int>> {
                               if (!g.has_labels()) return std::nullopt;
                               return g.labels();
                             })
      .def("degrees", &degree_vector)
      .def("normalized_adjacency",
           [](const AttributedGraph& g) { return Eigen::MatrixXd(normalized_adjacency(g)); });

  py::class_<Partition>(m, "Partition")
      .def_readonly("assignment", &Partition::assignment)
      .def_readonly("strength", &Partition::strength)
      .def_readonly("raw_strength", &Partition::raw_strength)
      .def_property_readonly("num_communities", &Partition::num_communities)
      .def("node_strengths", &Partition::node_strengths)
      .def("with_mean_strength", &Partition::with_mean_strength);

  m.def(
      "make_partition",
      [](const AttributedGraph& g, const std::vector<long long>& ids) {
        return make_partition(g, std::span<const long long>(ids));
      },
      py::arg("graph"), py::arg("ids"));
  m.def(
      "community_strength",
      [](const AttributedGraph& g, const std::vector<int>& a, bool clamp) {
        return clamp ? community_strength(g, a) : community_strength_raw(g, a);
      },
      py::arg("graph"), py::arg("assignment"), py::arg("clamp") = true);
  m.def(
      "modularity", [](const AttributedGraph& g, const std::vector<int>& a) { return modularity(g, a); },
      py::arg("graph"), py::arg("assignment"));
  m.def(
      "louvain",
      [](const AttributedGraph& g, double resolution, std::uint64_t seed) { return louvain(g, {resolution, seed}); },
      py::arg("graph"), py::arg("resolution") = 1.0, py::arg("seed") = 0);
  m.def("import_partition", &import_partition, py::arg("graph"), py::arg("path"));

  m.def("normalize_attr", [](const std::vector<double>& x) { return normalize_attr(x); });
  m.def("normalize_edge", [](const std::vector<double>& x) { return normalize_edge(x); });
  m.def("attribute_penalties", &attribute_penalties, py::arg("graph"), py::arg("partition"));
  m.def("edge_weights", py::overload_cast<const AttributedGraph&, const Partition&>(&edge_weights), py::arg("graph"),
        py::arg("partition"));
  m.def(
      "generate_views",
      [](const AttributedGraph& g, const Partition& p, double p_a1, double p_a2, double p_e1, double p_e2,
         std::uint64_t seed) {
        Rng rng(seed);
        auto [a, b] = generate_views(g, p, {p_a1, p_a2, p_e1, p_e2}, rng);
        return py::make_tuple(view_to_dict(a), view_to_dict(b));
      },
      py::arg("graph"), py::arg("partition"), py::arg("p_a1") = 0.2, py::arg("p_a2") = 0.2, py::arg("p_e1") = 0.2,
      py::arg("p_e2") = 0.2, py::arg("seed") = 0);

  m.def(
      "similarity",
      [](const std::vector<double>& a, const std::vector<double>& b, double tau) { return similarity(a, b, tau); },
      py::arg("z1"), py::arg("z2"), py::arg("tau"));
  m.def(
      "gamma",
      [](double t, double t0, double gamma_max) { return gamma(t, {t0, gamma_max, 0.5}); }, py::arg("t"),
      py::arg("t0") = 10.0, py::arg("gamma_max") = 1.0);
  m.def(
      "teamup_loss",
      [](const Eigen::MatrixXd& z1, const Eigen::MatrixXd& z2, const std::vector<double>& node_strength, double tau,
         double gamma_value) {
        auto r = teamup_loss_with_gradient(z1, z2, node_strength, tau, gamma_value);
        return py::make_tuple(r.loss, r.grad_z1, r.grad_z2);
      },
      py::arg("z1"), py::arg("z2"), py::arg("node_strength"), py::arg("tau") = 0.5, py::arg("gamma") = 0.0,
      "Returns (loss, d loss / d z1, d loss / d z2).");

  py::class_<EncoderParams>(m, "EncoderParams")
      .def_readwrite("activation", &EncoderParams::activation)
      .def_readwrite("w1", &EncoderParams::w1)
      .def_readwrite("w2", &EncoderParams::w2)
      .def_readwrite("p1", &EncoderParams::p1)
      .def_readwrite("p2", &EncoderParams::p2)
      .def_readwrite("prelu_slope", &EncoderParams::prelu_slope)
      .def(py::self == py::self);
  m.def("init_params", &init_params, py::arg("input_dim"), py::arg("hidden_dim"),
        py::arg("activation") = Activation::PReLU, py::arg("seed") = 0);
  m.def(
      "encode",
      [](const EncoderParams& params, const AttributedGraph& g) {
        auto e = encode(params, identity_view(g));
        return py::make_tuple(e.representation, e.projection);
      },
      py::arg("params"), py::arg("graph"), "Returns (representation, projection).");
  m.def("save_checkpoint", &save_checkpoint, py::arg("path"), py::arg("params"));
  m.def("load_checkpoint", &load_checkpoint, py::arg("path"));

  py::class_<TrainConfig>(m, "TrainConfig")
      .def(py::init<>())
      .def_readwrite("epochs", &TrainConfig::epochs)
      .def_readwrite("learning_rate", &TrainConfig::learning_rate)
      .def_readwrite("hidden_dim", &TrainConfig::hidden_dim)
      .def_readwrite("activation", &TrainConfig::activation)
      .def_readwrite("seed", &TrainConfig::seed)
      .def_readwrite("threads", &TrainConfig::threads)
      .def_property(
          "p_a", [](const TrainConfig& c) { return std::make_pair(c.aug.p_a1, c.aug.p_a2); },
          [](TrainConfig& c, std::pair<double, double> v) { std::tie(c.aug.p_a1, c.aug.p_a2) = v; })
      .def_property(
          "p_e", [](const TrainConfig& c) { return std::make_pair(c.aug.p_e1, c.aug.p_e2); },
          [](TrainConfig& c, std::pair<double, double> v) { std::tie(c.aug.p_e1, c.aug.p_e2) = v; })
      .def_property(
          "t0", [](const TrainConfig& c) { return c.sched.t0; }, [](TrainConfig& c, double v) { c.sched.t0 = v; })
      .def_property(
          "gamma_max", [](const TrainConfig& c) { return c.sched.gamma_max; },
          [](TrainConfig& c, double v) { c.sched.gamma_max = v; })
      .def_property(
          "tau", [](const TrainConfig& c) { return c.sched.tau; }, [](TrainConfig& c, double v) { c.sched.tau = v; });

  m.def(
      "train",
      [](const AttributedGraph& g, const Partition& p, const TrainConfig& cfg) {
        TrainResult r;
        {
          py::gil_scoped_release release;
          r = train(g, p, cfg);
        }
        std::vector<double> losses;
        for (const auto& e : r.metrics) losses.push_back(e.loss);
        return py::make_tuple(r.params, losses);
      },
      py::arg("graph"), py::arg("partition"), py::arg("config"), "Returns (params, per-epoch losses).");

  m.def(
      "kmeans_nmi",
      [](const Eigen::MatrixXd& z, const std::vector<int>& labels, int k, std::uint64_t seed, int repeats) {
        return report_to_dict(kmeans_nmi(z, labels, k, seed, repeats));
      },
      py::arg("z"), py::arg("labels"), py::arg("k"), py::arg("seed") = 0, py::arg("repeats") = 1);
  m.def(
      "linear_probe",
      [](const Eigen::MatrixXd& z, const std::vector<int>& labels, int repeats, std::uint64_t seed) {
        ProbeOptions options;
        options.repeats = repeats;
        options.seed = seed;
        return report_to_dict(linear_probe(z, labels, options));
      },
      py::arg("z"), py::arg("labels"), py::arg("repeats") = 10, py::arg("seed") = 0);
  m.def(
      "link_prediction",
      [](const Eigen::MatrixXd& z, const AttributedGraph& g, double holdout, std::uint64_t seed, int repeats) {
        return report_to_dict(link_prediction(z, g, holdout, seed, repeats));
      },
      py::arg("z"), py::arg("graph"), py::arg("holdout_frac") = 0.1, py::arg("seed") = 0, py::arg("repeats") = 1);
  m.def(
      "nmi", [](const std::vector<int>& a, const std::vector<int>& b) { return nmi(a, b); }, py::arg("a"),
      py::arg("b"));
  m.def(
      "auc_score",
      [](const std::vector<double>& pos, const std::vector<double>& neg) { return auc_score(pos, neg); },
      py::arg("positive"), py::arg("negative"));

  m.def("default_config_text", &default_config_text);
  m.def(
      "run",
      [](const std::string& command, const std::filesystem::path& config, const std::filesystem::path& out,
         std::optional<std::string> task, std::optional<std::uint64_t> seed) {
        auto cfg = parse_config(config);
        if (seed) cfg.train.seed = cfg.eval.seed = *seed;
        py::gil_scoped_release release;
        run(parse_command(command), cfg, out, task);
      },
      py::arg("command"), py::arg("config"), py::arg("out"), py::arg("task") = py::none(),
      py::arg("seed") = py::none(), "Runs one pipeline stage: detect, augment, train, embed or eval.");
}
