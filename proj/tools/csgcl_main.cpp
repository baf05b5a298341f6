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

// Command-line front end: detect, augment, train, embed and eval stages.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "csgcl/config.hpp"
#include "csgcl/error.hpp"
#include "csgcl/pipeline.hpp"

namespace {

int threads_from_env() {
  const char* raw = std::getenv("CSGCL_THREADS");
  if (!raw || !*raw) return 1;
  try {
    const int value = std::stoi(raw);
    if (value < 1) throw csgcl::Error("");
    return value;
  } catch (...) {
    throw csgcl::Error(std::string("CSGCL_THREADS must be a positive integer, got '") + raw + "'");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Community-strength-enhanced graph contrastive learning"};
  app.require_subcommand(0, 1);

  std::string config_path;
  std::string out_dir = ".";
  std::optional<long long> seed;
  bool as_undirected = false;
  bool print_defaults = false;
  std::optional<std::string> task;

  app.add_flag("--print-defaults", print_defaults, "Print the default configuration and exit");

  const char* commands[][2] = {
      {"detect", "Detect communities; write partition, strengths and modularity"},
      {"augment", "Sample one pair of perturbed views"},
      {"train", "Train the encoder; write checkpoint and per-epoch metrics"},
      {"embed", "Write node representations from a trained checkpoint"},
      {"eval", "Evaluate representations on downstream tasks"},
  };
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("--config", config_path, "Run configuration file")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", out_dir, "Output directory");
    sub->add_option("--seed", seed, "Override train.seed and eval.seed");
    sub->add_flag("--as-undirected", as_undirected, "Treat the edge file as directed and add reverse edges");
    if (std::string(name) == "eval")
      sub->add_option("--task", task, "classification | clustering | link_prediction | all");
  }

  CLI11_PARSE(app, argc, argv);

  if (print_defaults) {
    std::cout << csgcl::default_config_text();
    return 0;
  }
  if (app.get_subcommands().empty()) {
    std::cerr << app.help();
    return 2;
  }
  const std::string name = app.get_subcommands().front()->get_name();

  try {
    auto cfg = csgcl::parse_config(config_path);
    if (seed) {
      cfg.train.seed = static_cast<std::uint64_t>(*seed);
      cfg.eval.seed = static_cast<std::uint64_t>(*seed);
    }
    if (as_undirected) cfg.dataset.as_undirected = true;
    cfg.train.threads = threads_from_env();

    csgcl::run(csgcl::parse_command(name), cfg, out_dir, task);

    if (name == "detect") {
      std::ifstream summary(std::filesystem::path(out_dir) / csgcl::artifact::kDetectSummary);
      std::cout << summary.rdbuf();
    }
  } catch (const std::exception& e) {
    std::cerr << "csgcl: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
