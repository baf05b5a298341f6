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

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "csgcl/community.hpp"
#include "csgcl/config.hpp"
#include "csgcl/graph.hpp"

namespace csgcl {

enum class Command { Detect, Augment, Train, Embed, Eval };

Command parse_command(std::string_view name);
std::string_view to_string(Command c);

// Artifact names inside the output directory.
namespace artifact {
inline constexpr const char* kPartition = "partition.txt";
inline constexpr const char* kStrengths = "strengths.tsv";
inline constexpr const char* kDetectSummary = "detect.txt";
inline constexpr const char* kCheckpoint = "checkpoint.csgp";
inline constexpr const char* kMetrics = "metrics.tsv";
inline constexpr const char* kEmbeddings = "embeddings.csge";
}  // namespace artifact

AttributedGraph load_graph(const RunConfig& cfg);
Partition obtain_partition(const AttributedGraph& g, const RunConfig& cfg);

// Runs one stage. Outputs are staged under temporary names and renamed into
// `out_dir` only after the whole stage succeeded. Errors are rethrown as
// Error with the stage name prefixed. `task` overrides cfg.eval.task.
void run(Command command, const RunConfig& cfg, const std::filesystem::path& out_dir,
         const std::optional<std::string>& task = std::nullopt);

}  // namespace csgcl
