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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "csgcl/training.hpp"

namespace csgcl {

struct DatasetConfig {
  std::filesystem::path edges;
  std::filesystem::path attributes;
  std::optional<std::filesystem::path> labels;
  bool as_undirected = false;
  // Partition source: built-in Louvain, or a partition file.
  std::optional<std::filesystem::path> partition_file;
  double resolution = 1.0;
};

struct EvalConfig {
  std::string task = "all";  // classification | clustering | link_prediction | all
  double train_frac = 0.1;
  double val_frac = 0.1;
  double test_frac = 0.8;
  std::vector<double> l2_grid{1e-4, 1e-3, 1e-2, 1e-1, 1.0};
  int repeats = 10;
  double holdout_frac = 0.1;
  int k = 0;  // 0: number of label classes
  std::uint64_t seed = 0;
};

struct RunConfig {
  DatasetConfig dataset;
  TrainConfig train;
  EvalConfig eval;
};

// Flat `key = value` text with [dataset], [train] and [eval] sections.
// Relative paths resolve against `base_dir`. Unknown keys, out-of-range
// values and missing required keys throw Error.
RunConfig parse_config_text(std::string_view text, const std::filesystem::path& base_dir = {});
RunConfig parse_config(const std::filesystem::path& path);

// Default configuration as config-file text.
std::string default_config_text();

}  // namespace csgcl
