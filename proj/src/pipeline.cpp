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

#include "csgcl/pipeline.hpp"

#include <set>
#include <utility>
#include <vector>

#include "csgcl/augment.hpp"
#include "csgcl/error.hpp"
#include "csgcl/eval.hpp"
#include "csgcl/io.hpp"
#include "csgcl/model.hpp"
#include "csgcl/training.hpp"

namespace csgcl {

Command parse_command(std::string_view name) {
  if (name == "detect") return Command::Detect;
  if (name == "augment") return Command::Augment;
  if (name == "train") return Command::Train;
  if (name == "embed") return Command::Embed;
  if (name == "eval") return Command::Eval;
  throw Error("unknown command '" + std::string(name) + "'");
}

std::string_view to_string(Command c) {
  switch (c) {
    case Command::Detect:
      return "detect";
    case Command::Augment:
      return "augment";
    case Command::Train:
      return "train";
    case Command::Embed:
      return "embed";
    case Command::Eval:
      return "eval";
  }
  return "?";
}

AttributedGraph load_graph(const RunConfig& cfg) {
  LoadOptions options;
  options.as_undirected = cfg.dataset.as_undirected;
  return load_dataset(cfg.dataset.edges, cfg.dataset.attributes, cfg.dataset.labels, options);
}

Partition obtain_partition(const AttributedGraph& g, const RunConfig& cfg) {
  if (cfg.dataset.partition_file) return import_partition(g, *cfg.dataset.partition_file);
  return louvain(g, {cfg.dataset.resolution, cfg.train.seed});
}

namespace {

// Collects a stage's outputs under temporary names; commit() renames them.
class StagedOutput {
 public:
  explicit StagedOutput(std::filesystem::path dir) : dir_(std::move(dir)) {}
  StagedOutput(const StagedOutput&) = delete;
  StagedOutput& operator=(const StagedOutput&) = delete;

  ~StagedOutput() {
    if (committed_) return;
    std::error_code ec;
    for (const auto& [tmp, final_name] : files_) std::filesystem::remove(tmp, ec);
  }

  std::filesystem::path path(const std::string& name) {
    auto tmp = dir_ / ("." + name + ".tmp");
    files_.emplace_back(tmp, dir_ / name);
    return tmp;
  }

  void commit() {
    for (const auto& [tmp, final_name] : files_) std::filesystem::rename(tmp, final_name);
    committed_ = true;
  }

 private:
  std::filesystem::path dir_;
  std::vector<std::pair<std::filesystem::path, std::filesystem::path>> files_;
  bool committed_ = false;
};

void write_mask(const std::filesystem::path& path, const std::vector<std::uint8_t>& mask) {
  std::string out;
  out.reserve(mask.size() * 2);
  for (auto m : mask) {
    out += m ? '1' : '0';
    out += '\n';
  }
  io::write_file(path, out);
}

void detect_stage(const RunConfig& cfg, StagedOutput& out) {
  const auto g = load_graph(cfg);
  const auto p = obtain_partition(g, cfg);
  export_partition(out.path(artifact::kPartition), p);
  std::string strengths;
  for (std::size_t c = 0; c < p.num_communities(); ++c)
    strengths += std::to_string(c) + "\t" + io::format_double(p.strength[c]) + "\t" +
                 io::format_double(p.raw_strength[c]) + "\n";
  io::write_file(out.path(artifact::kStrengths), strengths);
  const double q = modularity(g, p.assignment);
  io::write_file(out.path(artifact::kDetectSummary),
                 "num_communities = " + std::to_string(p.num_communities()) + "\nmodularity = " +
                     io::format_double(q) + "\n");
}

void augment_stage(const RunConfig& cfg, StagedOutput& out) {
  const auto g = load_graph(cfg);
  const auto p = obtain_partition(g, cfg);
  Rng rng(cfg.train.seed);
  const auto views = generate_views(g, p, cfg.train.aug, rng);
  const GraphView* pair[2] = {&views.first, &views.second};
  for (int k = 0; k < 2; ++k) {
    const std::string prefix = "view" + std::to_string(k + 1);
    write_edge_list(out.path(prefix + ".edges"), pair[k]->adjacency);
    io::write_matrix(out.path(prefix + ".attr"), io::kAttributeMagic, pair[k]->attributes);
    write_mask(out.path(prefix + ".attr_mask"), pair[k]->attr_mask);
    write_mask(out.path(prefix + ".edge_mask"), pair[k]->edge_mask);
  }
}

void train_stage(const RunConfig& cfg, StagedOutput& out) {
  const auto g = load_graph(cfg);
  const auto p = obtain_partition(g, cfg);
  const auto result = train(g, p, cfg.train);
  save_checkpoint(out.path(artifact::kCheckpoint), result.params);
  write_metrics(out.path(artifact::kMetrics), result.metrics);
}

void embed_stage(const RunConfig& cfg, const std::filesystem::path& dir, StagedOutput& out) {
  const auto g = load_graph(cfg);
  const auto params = load_checkpoint(dir / artifact::kCheckpoint);
  const auto embedding = encode(params, identity_view(g));
  io::write_matrix(out.path(artifact::kEmbeddings), io::kEmbeddingMagic, embedding.representation);
}

void eval_stage(const RunConfig& cfg, const std::filesystem::path& dir, const std::string& task, StagedOutput& out) {
  static const std::set<std::string> known = {"classification", "clustering", "link_prediction", "all"};
  if (!known.contains(task)) throw Error("unknown eval task '" + task + "'");
  const auto g = load_graph(cfg);
  const auto z = io::read_matrix(dir / artifact::kEmbeddings, io::kEmbeddingMagic);
  if (static_cast<std::size_t>(z.rows()) != g.num_nodes())
    throw Error("embedding rows do not match the dataset's node count");
  const bool all = task == "all";
  const auto& e = cfg.eval;

  auto need_labels = [&](const char* name) {
    if (g.has_labels()) return true;
    if (!all) throw Error(std::string(name) + " needs dataset.labels");
    warn(std::string("skipping ") + name + ": no labels configured");
    return false;
  };

  if ((all || task == "classification") && need_labels("classification")) {
    ProbeOptions options;
    options.train_frac = e.train_frac;
    options.val_frac = e.val_frac;
    options.test_frac = e.test_frac;
    options.l2_grid = e.l2_grid;
    options.repeats = e.repeats;
    options.seed = e.seed;
    linear_probe(z, g.labels(), options).write(out.path("report_classification.txt"));
  }
  if ((all || task == "clustering") && need_labels("clustering")) {
    int k = e.k;
    if (k == 0) k = static_cast<int>(std::set<int>(g.labels().begin(), g.labels().end()).size());
    kmeans_nmi(z, g.labels(), k, e.seed, e.repeats).write(out.path("report_clustering.txt"));
  }
  if (all || task == "link_prediction")
    link_prediction(z, g, e.holdout_frac, e.seed, e.repeats).write(out.path("report_link_prediction.txt"));
}

}  // namespace

void run(Command command, const RunConfig& cfg, const std::filesystem::path& out_dir,
         const std::optional<std::string>& task) {
  try {
    std::filesystem::create_directories(out_dir);
    StagedOutput out(out_dir);
    switch (command) {
      case Command::Detect:
        detect_stage(cfg, out);
        break;
      case Command::Augment:
        augment_stage(cfg, out);
        break;
      case Command::Train:
        train_stage(cfg, out);
        break;
      case Command::Embed:
        embed_stage(cfg, out_dir, out);
        break;
      case Command::Eval:
        eval_stage(cfg, out_dir, task.value_or(cfg.eval.task), out);
        break;
    }
    out.commit();
  } catch (const std::exception& e) {
    throw Error(std::string(to_string(command)) + " failed: " + e.what());
  }
}

}  // namespace csgcl
