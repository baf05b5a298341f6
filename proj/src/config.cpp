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

#include "csgcl/config.hpp"

#include <charconv>
#include <functional>
#include <map>
#include <set>

#include "csgcl/error.hpp"
#include "csgcl/io.hpp"

namespace csgcl {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double to_double(std::string_view key, std::string_view value) {
  double out = 0.0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (value.empty() || ec != std::errc() || ptr != value.data() + value.size())
    throw Error(std::string(key) + ": expected a number, got '" + std::string(value) + "'");
  return out;
}

long long to_int(std::string_view key, std::string_view value) {
  long long out = 0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (value.empty() || ec != std::errc() || ptr != value.data() + value.size())
    throw Error(std::string(key) + ": expected an integer, got '" + std::string(value) + "'");
  return out;
}

bool to_bool(std::string_view key, std::string_view value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw Error(std::string(key) + ": expected true or false, got '" + std::string(value) + "'");
}

std::vector<double> to_list(std::string_view key, std::string_view value) {
  std::vector<double> out;
  while (true) {
    const auto comma = value.find(',');
    out.push_back(to_double(key, trim(value.substr(0, comma))));
    if (comma == std::string_view::npos) break;
    value.remove_prefix(comma + 1);
  }
  return out;
}

void require_range(std::string_view key, double value, double lo, double hi, bool lo_open = false) {
  const bool ok = (lo_open ? value > lo : value >= lo) && value <= hi;
  if (!ok)
    throw Error(std::string(key) + " = " + io::format_double(value) + " is out of range " + (lo_open ? "(" : "[") +
                io::format_double(lo) + ", " + io::format_double(hi) + "]");
}

std::pair<double, double> to_pair(std::string_view key, std::string_view value) {
  std::string stripped(value);
  if (!stripped.empty() && stripped.front() == '(' && stripped.back() == ')')
    stripped = stripped.substr(1, stripped.size() - 2);
  const auto list = to_list(key, stripped);
  if (list.size() != 2) throw Error(std::string(key) + ": expected two comma-separated values");
  return {list[0], list[1]};
}

using Setter = std::function<void(RunConfig&, std::string_view, const std::filesystem::path&)>;

const std::map<std::string, Setter, std::less<>>& setters() {
  static const std::map<std::string, Setter, std::less<>> table = {
      {"dataset.edges", [](RunConfig& c, std::string_view v, const auto& base) { c.dataset.edges = base / v; }},
      {"dataset.attributes",
       [](RunConfig& c, std::string_view v, const auto& base) { c.dataset.attributes = base / v; }},
      {"dataset.labels", [](RunConfig& c, std::string_view v, const auto& base) { c.dataset.labels = base / v; }},
      {"dataset.as_undirected",
       [](RunConfig& c, std::string_view v, const auto&) { c.dataset.as_undirected = to_bool("as_undirected", v); }},
      {"dataset.partition",
       [](RunConfig& c, std::string_view v, const auto& base) {
         if (v == "louvain")
           c.dataset.partition_file.reset();
         else
           c.dataset.partition_file = base / v;
       }},
      {"dataset.resolution",
       [](RunConfig& c, std::string_view v, const auto&) { c.dataset.resolution = to_double("resolution", v); }},

      {"train.epochs", [](RunConfig& c, std::string_view v, const auto&) {
         c.train.epochs = static_cast<int>(to_int("epochs", v));
       }},
      {"train.learning_rate",
       [](RunConfig& c, std::string_view v, const auto&) { c.train.learning_rate = to_double("learning_rate", v); }},
      {"train.hidden_dim",
       [](RunConfig& c, std::string_view v, const auto&) {
         const auto h = to_int("hidden_dim", v);
         if (h < 1) throw Error("hidden_dim must be positive");
         c.train.hidden_dim = static_cast<std::size_t>(h);
       }},
      {"train.activation",
       [](RunConfig& c, std::string_view v, const auto&) { c.train.activation = parse_activation(v); }},
      {"train.p_a1", [](RunConfig& c, std::string_view v, const auto&) { c.train.aug.p_a1 = to_double("p_a1", v); }},
      {"train.p_a2", [](RunConfig& c, std::string_view v, const auto&) { c.train.aug.p_a2 = to_double("p_a2", v); }},
      {"train.p_e1", [](RunConfig& c, std::string_view v, const auto&) { c.train.aug.p_e1 = to_double("p_e1", v); }},
      {"train.p_e2", [](RunConfig& c, std::string_view v, const auto&) { c.train.aug.p_e2 = to_double("p_e2", v); }},
      {"train.p_a",
       [](RunConfig& c, std::string_view v, const auto&) {
         std::tie(c.train.aug.p_a1, c.train.aug.p_a2) = to_pair("p_a", v);
       }},
      {"train.p_e",
       [](RunConfig& c, std::string_view v, const auto&) {
         std::tie(c.train.aug.p_e1, c.train.aug.p_e2) = to_pair("p_e", v);
       }},
      {"train.t0", [](RunConfig& c, std::string_view v, const auto&) { c.train.sched.t0 = to_double("t0", v); }},
      {"train.gamma_max",
       [](RunConfig& c, std::string_view v, const auto&) { c.train.sched.gamma_max = to_double("gamma_max", v); }},
      {"train.tau", [](RunConfig& c, std::string_view v, const auto&) { c.train.sched.tau = to_double("tau", v); }},
      {"train.seed",
       [](RunConfig& c, std::string_view v, const auto&) {
         c.train.seed = static_cast<std::uint64_t>(to_int("seed", v));
       }},
      {"train.adam_beta1",
       [](RunConfig& c, std::string_view v, const auto&) { c.train.adam_beta1 = to_double("adam_beta1", v); }},
      {"train.adam_beta2",
       [](RunConfig& c, std::string_view v, const auto&) { c.train.adam_beta2 = to_double("adam_beta2", v); }},
      {"train.adam_eps",
       [](RunConfig& c, std::string_view v, const auto&) { c.train.adam_eps = to_double("adam_eps", v); }},

      {"eval.task",
       [](RunConfig& c, std::string_view v, const auto&) {
         static const std::set<std::string, std::less<>> tasks = {"classification", "clustering", "link_prediction",
                                                                   "all"};
         if (!tasks.contains(v)) throw Error("eval.task: unknown task '" + std::string(v) + "'");
         c.eval.task = v;
       }},
      {"eval.train_frac",
       [](RunConfig& c, std::string_view v, const auto&) { c.eval.train_frac = to_double("train_frac", v); }},
      {"eval.val_frac",
       [](RunConfig& c, std::string_view v, const auto&) { c.eval.val_frac = to_double("val_frac", v); }},
      {"eval.test_frac",
       [](RunConfig& c, std::string_view v, const auto&) { c.eval.test_frac = to_double("test_frac", v); }},
      {"eval.l2_grid", [](RunConfig& c, std::string_view v, const auto&) { c.eval.l2_grid = to_list("l2_grid", v); }},
      {"eval.repeats",
       [](RunConfig& c, std::string_view v, const auto&) { c.eval.repeats = static_cast<int>(to_int("repeats", v)); }},
      {"eval.holdout_frac",
       [](RunConfig& c, std::string_view v, const auto&) { c.eval.holdout_frac = to_double("holdout_frac", v); }},
      {"eval.k", [](RunConfig& c, std::string_view v, const auto&) { c.eval.k = static_cast<int>(to_int("k", v)); }},
      {"eval.seed",
       [](RunConfig& c, std::string_view v, const auto&) {
         c.eval.seed = static_cast<std::uint64_t>(to_int("seed", v));
       }},
  };
  return table;
}

void validate(const RunConfig& c) {
  const auto& t = c.train;
  if (t.epochs < 0) throw Error("epochs must be non-negative");
  require_range("learning_rate", t.learning_rate, 0.0, 1e6, true);
  require_range("p_a1", t.aug.p_a1, 0.0, 1.0);
  require_range("p_a2", t.aug.p_a2, 0.0, 1.0);
  require_range("p_e1", t.aug.p_e1, 0.0, 1.0);
  require_range("p_e2", t.aug.p_e2, 0.0, 1.0);
  require_range("tau", t.sched.tau, 0.0, 1e6, true);
  require_range("t0", t.sched.t0, 0.0, 1e12);
  require_range("gamma_max", t.sched.gamma_max, 0.0, 1e12);
  if (!(t.adam_beta1 > 0.0 && t.adam_beta1 < 1.0)) throw Error("adam_beta1 must lie in (0, 1)");
  if (!(t.adam_beta2 > 0.0 && t.adam_beta2 < 1.0)) throw Error("adam_beta2 must lie in (0, 1)");
  require_range("adam_eps", t.adam_eps, 0.0, 1.0, true);
  require_range("resolution", c.dataset.resolution, 0.0, 1e6, true);

  const auto& e = c.eval;
  require_range("train_frac", e.train_frac, 0.0, 1.0, true);
  require_range("val_frac", e.val_frac, 0.0, 1.0);
  require_range("test_frac", e.test_frac, 0.0, 1.0, true);
  if (e.train_frac + e.val_frac + e.test_frac > 1.0 + 1e-12) throw Error("eval split fractions sum above 1");
  if (e.repeats < 1) throw Error("eval.repeats must be >= 1");
  require_range("holdout_frac", e.holdout_frac, 0.0, 1.0, true);
  if (e.holdout_frac >= 1.0) throw Error("holdout_frac must be below 1");
  if (e.k < 0 || e.k == 1) throw Error("eval.k must be 0 (auto) or >= 2");
  if (e.l2_grid.empty()) throw Error("eval.l2_grid must not be empty");
  for (double l2 : e.l2_grid) require_range("l2_grid", l2, 0.0, 1e12);
}

void require_file(const char* key, const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) throw Error(std::string(key) + ": file does not exist: " + path.string());
}

}  // namespace

RunConfig parse_config_text(std::string_view text, const std::filesystem::path& base_dir) {
  RunConfig config;
  std::string section;
  std::set<std::string> seen;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto where = "line " + std::to_string(line_no) + ": ";
    if (line.front() == '[') {
      if (line.back() != ']') throw Error(where + "malformed section header");
      section = std::string(trim(line.substr(1, line.size() - 2)));
      if (section != "dataset" && section != "train" && section != "eval")
        throw Error(where + "unknown section [" + section + "]");
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw Error(where + "expected `key = value`");
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (section.empty()) throw Error(where + "key '" + std::string(key) + "' outside of a section");
    const auto full = section + "." + std::string(key);
    const auto it = setters().find(full);
    if (it == setters().end()) throw Error(where + "unknown key '" + full + "'");
    if (!seen.insert(full).second) throw Error(where + "duplicate key '" + full + "'");
    try {
      it->second(config, value, base_dir);
    } catch (const Error& e) {
      throw Error(where + e.what());
    }
  }
  if (!seen.contains("dataset.edges")) throw Error("missing required key dataset.edges");
  if (!seen.contains("dataset.attributes")) throw Error("missing required key dataset.attributes");
  validate(config);
  require_file("dataset.edges", config.dataset.edges);
  require_file("dataset.attributes", config.dataset.attributes);
  if (config.dataset.labels) require_file("dataset.labels", *config.dataset.labels);
  if (config.dataset.partition_file) require_file("dataset.partition", *config.dataset.partition_file);
  return config;
}

RunConfig parse_config(const std::filesystem::path& path) {
  const auto text = io::read_file(path);
  return parse_config_text(text, path.parent_path());
}

std::string default_config_text() {
  const RunConfig d;
  const auto& t = d.train;
  const auto& e = d.eval;
  auto f = [](double v) { return io::format_double(v); };
  std::string grid;
  for (std::size_t i = 0; i < e.l2_grid.size(); ++i) grid += (i ? ", " : "") + f(e.l2_grid[i]);
  return "[dataset]\n"
         "edges =            # required\n"
         "attributes =       # required\n"
         "# labels =\n"
         "as_undirected = false\n"
         "partition = louvain\n"
         "resolution = " + f(d.dataset.resolution) + "\n"
         "\n[train]\n"
         "epochs = " + std::to_string(t.epochs) + "\n"
         "learning_rate = " + f(t.learning_rate) + "\n"
         "hidden_dim = " + std::to_string(t.hidden_dim) + "\n"
         "activation = " + std::string(to_string(t.activation)) + "\n"
         "p_a1 = " + f(t.aug.p_a1) + "\n"
         "p_a2 = " + f(t.aug.p_a2) + "\n"
         "p_e1 = " + f(t.aug.p_e1) + "\n"
         "p_e2 = " + f(t.aug.p_e2) + "\n"
         "t0 = " + f(t.sched.t0) + "\n"
         "gamma_max = " + f(t.sched.gamma_max) + "\n"
         "tau = " + f(t.sched.tau) + "\n"
         "seed = " + std::to_string(t.seed) + "\n"
         "adam_beta1 = " + f(t.adam_beta1) + "\n"
         "adam_beta2 = " + f(t.adam_beta2) + "\n"
         "adam_eps = " + f(t.adam_eps) + "\n"
         "\n[eval]\n"
         "task = " + e.task + "\n"
         "train_frac = " + f(e.train_frac) + "\n"
         "val_frac = " + f(e.val_frac) + "\n"
         "test_frac = " + f(e.test_frac) + "\n"
         "l2_grid = " + grid + "\n"
         "repeats = " + std::to_string(e.repeats) + "\n"
         "holdout_frac = " + f(e.holdout_frac) + "\n"
         "k = " + std::to_string(e.k) + "\n"
         "seed = " + std::to_string(e.seed) + "\n";
}

}  // namespace csgcl
