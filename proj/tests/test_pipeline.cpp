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

#include <sys/wait.h>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <memory>

#include "csgcl/config.hpp"
#include "csgcl/error.hpp"
#include "csgcl/io.hpp"
#include "csgcl/pipeline.hpp"
#include "test_support.hpp"

using namespace csgcl;
using csgcl::testing::QuietWarnings;
using csgcl::testing::TempDir;

namespace {

std::string karate_config(const std::string& extra_train = "") {
  const auto k = csgcl::testing::karate_dir();
  return "[dataset]\nedges = " + (k / "karate.edges").string() + "\nattributes = " + (k / "karate.attr").string() +
         "\nlabels = " + (k / "karate.labels").string() +
         "\n[train]\nepochs = 30\nhidden_dim = 8\nlearning_rate = 0.001\n" + extra_train +
         "[eval]\nrepeats = 2\n";
}

RunConfig write_config(const TempDir& dir, const std::string& text) {
  io::write_file(dir / "run.cfg", text);
  return parse_config(dir / "run.cfg");
}

std::vector<std::string> listing(const std::filesystem::path& dir) {
  std::vector<std::string> names;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) names.push_back(entry.path().filename());
  std::sort(names.begin(), names.end());
  return names;
}

}  // namespace

TEST_CASE("detect on two cliques") {
  QuietWarnings quiet;
  TempDir dir;
  std::string edges;
  for (int base : {0, 4})
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) edges += std::to_string(base + i) + " " + std::to_string(base + j) + "\n";
  io::write_file(dir / "g.edges", edges);
  io::write_file(dir / "g.attr", "1\n1\n1\n1\n1\n1\n1\n1\n");
  const auto cfg = write_config(dir, "[dataset]\nedges = g.edges\nattributes = g.attr\n");
  run(Command::Detect, cfg, dir / "out");
  CHECK(io::read_file(dir / "out" / artifact::kPartition) == "0\n0\n0\n0\n1\n1\n1\n1\n");
  CHECK(io::read_file(dir / "out" / artifact::kDetectSummary) == "num_communities = 2\nmodularity = 0.5\n");
}

TEST_CASE("train, embed, eval on karate") {
  QuietWarnings quiet;
  TempDir dir;
  const auto cfg = write_config(dir, karate_config());
  run(Command::Train, cfg, dir / "a");
  run(Command::Embed, cfg, dir / "a");
  run(Command::Eval, cfg, dir / "a", "clustering");
  const auto report = io::read_file(dir / "a" / "report_clustering.txt");
  CHECK(report.find("task = clustering\n") == 0);
  CHECK(report.find("metric.nmi.mean = ") != std::string::npos);
  CHECK(report.find("metric.nmi.std = ") != std::string::npos);
  CHECK(report.find("split.k = 2\n") != std::string::npos);
  const auto z = io::read_matrix(dir / "a" / artifact::kEmbeddings, io::kEmbeddingMagic);
  CHECK(z.rows() == 34);
  CHECK(z.cols() == 8);

  SUBCASE("every stage is idempotent") {
    run(Command::Eval, cfg, dir / "a");
    for (auto cmd : {Command::Detect, Command::Augment, Command::Train, Command::Embed, Command::Eval})
      run(cmd, cfg, dir / "b");
    for (const auto& name : listing(dir / "b")) {
      if (std::filesystem::exists(dir / "a" / name)) CHECK(io::read_file(dir / "a" / name) == io::read_file(dir / "b" / name));
    }
    CHECK(listing(dir / "b").size() == 17);
  }
  SUBCASE("unknown task fails without touching outputs") {
    const auto before = listing(dir / "a");
    CHECK_THROWS_AS(run(Command::Eval, cfg, dir / "a", "regression"), Error);
    CHECK(listing(dir / "a") == before);
  }
}

TEST_CASE("failed stage leaves no partial outputs") {
  QuietWarnings quiet;
  TempDir dir;
  const auto cfg = write_config(dir, karate_config());
  try {
    run(Command::Eval, cfg, dir / "out");
    FAIL("expected failure");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).rfind("eval failed: ", 0) == 0);
  }
  CHECK(listing(dir / "out").empty());
}

TEST_CASE("augment with uniform weights and no masking reproduces the inputs") {
  QuietWarnings quiet;
  TempDir dir;
  // Single community: every edge weight is 1, so p_e = 1 keeps every edge.
  io::write_int_lines(dir / "one.txt", std::vector<int>(34, 0));
  const auto cfg = write_config(dir, karate_config("p_a = (0, 0)\np_e = (1, 1)\n") +
                                         "[dataset]\npartition = " + (dir / "one.txt").string() + "\n");
  run(Command::Augment, cfg, dir / "out");
  const auto g = csgcl::testing::karate();
  write_edge_list(dir / "input.edges", g.adjacency());
  io::write_matrix(dir / "input.attr", io::kAttributeMagic, g.attributes());
  for (const char* view : {"view1", "view2"}) {
    CHECK(io::read_file(dir / "out" / (std::string(view) + ".edges")) == io::read_file(dir / "input.edges"));
    CHECK(io::read_file(dir / "out" / (std::string(view) + ".attr")) == io::read_file(dir / "input.attr"));
  }
}

#ifdef CSGCL_CLI_PATH
namespace {

struct Output {
  int status;
  std::string text;
};

Output shell(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + std::string(CSGCL_CLI_PATH) + " " + args + " 2>&1";
  std::unique_ptr<FILE, int (*)(FILE*)> pipe(popen(cmd.c_str(), "r"), pclose);
  std::string text;
  char buf[4096];
  while (const auto got = std::fread(buf, 1, sizeof buf, pipe.get())) text.append(buf, got);
  const int status = pclose(pipe.release());
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, text};
}

}  // namespace

TEST_CASE("command-line tool") {
  TempDir dir;
  io::write_file(dir / "run.cfg", karate_config());
  const auto cfg = (dir / "run.cfg").string();

  const auto defaults = shell("--print-defaults");
  CHECK(defaults.status == 0);
  CHECK(defaults.text == default_config_text());

  const auto detect = shell("detect --config " + cfg + " --out " + (dir / "d").string());
  CHECK(detect.status == 0);
  CHECK(detect.text.find("modularity = ") != std::string::npos);

  for (const char* stage : {"train", "embed"})
    CHECK(shell(std::string(stage) + " --config " + cfg + " --seed 5 --out " + (dir / "x").string()).status == 0);
  CHECK(shell("eval --task link_prediction --config " + cfg + " --seed 5 --out " + (dir / "x").string()).status == 0);
  CHECK(std::filesystem::exists(dir / "x" / "report_link_prediction.txt"));
  CHECK_FALSE(std::filesystem::exists(dir / "x" / "report_clustering.txt"));

  // --seed overrides the config seed: same as a config that sets it.
  io::write_file(dir / "seeded.cfg", karate_config("seed = 5\n"));
  QuietWarnings quiet;
  run(Command::Train, parse_config(dir / "seeded.cfg"), dir / "y");
  CHECK(io::read_file(dir / "x" / artifact::kCheckpoint) == io::read_file(dir / "y" / artifact::kCheckpoint));

  const auto missing = shell("train --out " + (dir / "z").string());
  CHECK(missing.status != 0);
  const auto bad = shell("eval --task regression --config " + cfg + " --out " + (dir / "x").string());
  CHECK(bad.status == 1);
  CHECK(bad.text.find("unknown eval task") != std::string::npos);
  // CSGCL_THREADS changes scheduling only.
  CHECK(shell("train --config " + cfg + " --seed 5 --out " + (dir / "t").string(), "CSGCL_THREADS=2 ").status == 0);
  CHECK(io::read_file(dir / "t" / artifact::kCheckpoint) == io::read_file(dir / "x" / artifact::kCheckpoint));
  CHECK(shell("train --config " + cfg + " --out " + (dir / "t").string(), "CSGCL_THREADS=zero ").status == 1);
}
#endif
