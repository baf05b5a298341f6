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

#include "csgcl/config.hpp"
#include "csgcl/error.hpp"
#include "csgcl/io.hpp"
#include "test_support.hpp"

using namespace csgcl;
using csgcl::testing::TempDir;

namespace {

struct Files {
  TempDir dir;
  Files() {
    io::write_file(dir / "g.edges", "0 1\n");
    io::write_file(dir / "g.attr", "1\n1\n");
  }
  std::string header() const { return "[dataset]\nedges = g.edges\nattributes = g.attr\n"; }
  RunConfig parse(const std::string& rest) const { return parse_config_text(header() + rest, dir.path()); }
};

}  // namespace

TEST_CASE("minimal config takes the defaults") {
  Files f;
  const auto c = f.parse("");
  CHECK(c.dataset.edges == f.dir / "g.edges");
  CHECK_FALSE(c.dataset.labels.has_value());
  CHECK_FALSE(c.dataset.partition_file.has_value());
  CHECK(c.train.learning_rate == 0.01);
  CHECK(c.train.hidden_dim == 256);
  CHECK(c.train.sched.tau == 0.5);
  CHECK(c.train.aug.p_a1 == 0.2);
  CHECK(c.train.aug.p_a2 == 0.2);
  CHECK(c.train.aug.p_e1 == 0.2);
  CHECK(c.train.aug.p_e2 == 0.2);
  CHECK(c.train.sched.t0 == 10.0);
  CHECK(c.train.sched.gamma_max == 1.0);
  CHECK(c.eval.task == "all");
}

TEST_CASE("a full set of training hyperparameters") {
  Files f;
  const auto c = f.parse(
      "[train]\n"
      "epochs = 2000\n"
      "p_a = (0.1, 0.2)\n"
      "p_e = (0.2, 0.7)\n"
      "t0 = 10\n"
      "gamma_max = 10\n"
      "tau = 0.6\n"
      "learning_rate = 1e-2\n"
      "hidden_dim = 256\n"
      "activation = prelu\n");
  const auto& t = c.train;
  CHECK(t.epochs == 2000);
  CHECK(t.aug.p_a1 == 0.1);
  CHECK(t.aug.p_a2 == 0.2);
  CHECK(t.aug.p_e1 == 0.2);
  CHECK(t.aug.p_e2 == 0.7);
  CHECK(t.sched.t0 == 10);
  CHECK(t.sched.gamma_max == 10);
  CHECK(t.sched.tau == 0.6);
  CHECK(t.learning_rate == 0.01);
  CHECK(t.hidden_dim == 256);
  CHECK(t.activation == Activation::PReLU);
}

TEST_CASE("config errors") {
  Files f;
  CHECK_THROWS_AS(f.parse("[train]\ntau = 0\n"), Error);
  CHECK_THROWS_AS(f.parse("[train]\np_a1 = 1.5\n"), Error);
  CHECK_THROWS_AS(f.parse("[train]\nepochs = -1\n"), Error);
  CHECK_THROWS_AS(f.parse("[train]\nlearning_rate = fast\n"), Error);
  CHECK_THROWS_AS(f.parse("[train]\nbogus = 1\n"), Error);
  CHECK_THROWS_AS(f.parse("[train]\ntau = 0.5\ntau = 0.6\n"), Error);
  CHECK_THROWS_AS(f.parse("[other]\n"), Error);
  CHECK_THROWS_AS(f.parse("[train]\np_a = (0.1)\n"), Error);
  CHECK_THROWS_AS(f.parse("[train]\nactivation = gelu\n"), Error);
  CHECK_THROWS_AS(f.parse("[eval]\ntask = regression\n"), Error);
  CHECK_THROWS_AS(f.parse("[dataset]\nlabels = missing.txt\n"), Error);
  CHECK_THROWS_AS(parse_config_text("[dataset]\nedges = g.edges\n", f.dir.path()), Error);
  CHECK_THROWS_AS(parse_config_text("edges = g.edges\n", f.dir.path()), Error);
  CHECK_THROWS_AS(parse_config(f.dir / "none.cfg"), Error);
}

TEST_CASE("comments, relative paths and the printed defaults") {
  Files f;
  io::write_file(f.dir / "run.cfg", "# experiment\n" + f.header() +
                                        "partition = louvain  # built-in\n[eval]\nseed = 7\n");
  const auto c = parse_config(f.dir / "run.cfg");
  CHECK(c.eval.seed == 7);
  CHECK(c.dataset.attributes == f.dir / "g.attr");

  // The defaults text is itself a valid config once the paths are filled in.
  auto text = default_config_text();
  std::string filled;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto eol = text.find('\n', pos);
    std::string line = text.substr(pos, eol - pos);
    if (line.rfind("edges =", 0) == 0) line = "edges = g.edges";
    if (line.rfind("attributes =", 0) == 0) line = "attributes = g.attr";
    filled += line + "\n";
    pos = eol + 1;
  }
  const auto d = parse_config_text(filled, f.dir.path());
  const RunConfig defaults;
  CHECK(d.train.epochs == defaults.train.epochs);
  CHECK(d.train.learning_rate == defaults.train.learning_rate);
  CHECK(d.train.activation == defaults.train.activation);
  CHECK(d.eval.l2_grid == defaults.eval.l2_grid);
}
