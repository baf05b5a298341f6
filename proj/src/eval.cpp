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

#include "csgcl/eval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "csgcl/error.hpp"
#include "csgcl/io.hpp"

namespace csgcl {

MetricSummary summarize(std::span<const double> values) {
  if (values.empty()) throw Error("summarize: no values");
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
  double var = 0.0;
  for (double v : values) var += (v - mean) * (v - mean);
  return {mean, std::sqrt(var / static_cast<double>(values.size()))};
}

const MetricSummary& EvalReport::metric(const std::string& name) const {
  for (const auto& [key, value] : metrics)
    if (key == name) return value;
  throw Error("report has no metric '" + name + "'");
}

std::string EvalReport::to_text() const {
  std::string out = "task = " + task + "\n";
  for (const auto& [name, m] : metrics) {
    out += "metric." + name + ".mean = " + io::format_double(m.mean) + "\n";
    out += "metric." + name + ".std = " + io::format_double(m.std) + "\n";
  }
  for (const auto& [key, value] : split) out += "split." + key + " = " + value + "\n";
  return out;
}

void EvalReport::write(const std::filesystem::path& path) const { io::write_file(path, to_text()); }

namespace {

Eigen::MatrixXd row_normalized(const Eigen::MatrixXd& z) {
  Eigen::MatrixXd out = z;
  for (Eigen::Index i = 0; i < z.rows(); ++i) {
    const double norm = z.row(i).norm();
    if (norm > 0.0) out.row(i) /= norm;
  }
  return out;
}

void check_same_length(std::span<const int> a, std::span<const int> b) {
  if (a.size() != b.size()) throw Error("label vectors differ in length");
  if (a.empty()) throw Error("empty label vector");
}

}  // namespace

// --- classification -------------------------------------------------------

double accuracy(std::span<const int> truth, std::span<const int> predicted) {
  check_same_length(truth, predicted);
  std::size_t hits = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) hits += truth[i] == predicted[i];
  return static_cast<double>(hits) / static_cast<double>(truth.size());
}

double micro_f1(std::span<const int> truth, std::span<const int> predicted) {
  check_same_length(truth, predicted);
  // Single-label: every miss is one false positive and one false negative.
  double tp = 0.0;
  for (std::size_t i = 0; i < truth.size(); ++i) tp += truth[i] == predicted[i];
  const double fp = static_cast<double>(truth.size()) - tp;
  const double fn = fp;
  return 2.0 * tp / (2.0 * tp + fp + fn);
}

double macro_f1(std::span<const int> truth, std::span<const int> predicted) {
  check_same_length(truth, predicted);
  std::set<int> classes(truth.begin(), truth.end());
  classes.insert(predicted.begin(), predicted.end());
  double total = 0.0;
  for (int c : classes) {
    double tp = 0.0, fp = 0.0, fn = 0.0;
    for (std::size_t i = 0; i < truth.size(); ++i) {
      const bool t = truth[i] == c;
      const bool p = predicted[i] == c;
      tp += t && p;
      fp += !t && p;
      fn += t && !p;
    }
    const double denom = 2.0 * tp + fp + fn;
    total += denom > 0.0 ? 2.0 * tp / denom : 0.0;
  }
  return total / static_cast<double>(classes.size());
}

void LogisticRegression::fit(const Eigen::MatrixXd& x, std::span<const int> y, int num_classes) {
  const Eigen::Index n = x.rows();
  const Eigen::Index d = x.cols();
  if (static_cast<std::size_t>(n) != y.size() || n == 0) throw Error("logistic regression: bad training data");
  Eigen::MatrixXd onehot = Eigen::MatrixXd::Zero(n, num_classes);
  for (Eigen::Index i = 0; i < n; ++i) onehot(i, y[static_cast<std::size_t>(i)]) = 1.0;

  // Step from a Lipschitz bound of the mean softmax cross-entropy.
  const double max_sq = (x.rowwise().squaredNorm().array() + 1.0).maxCoeff();
  const double step = 1.0 / (0.5 * max_sq + 2.0 * l2_);

  weights_ = Eigen::MatrixXd::Zero(d, num_classes);
  bias_ = Eigen::RowVectorXd::Zero(num_classes);
  Eigen::MatrixXd w_prev = weights_;
  Eigen::RowVectorXd b_prev = bias_;
  for (int it = 1; it <= iterations_; ++it) {
    const double momentum = static_cast<double>(it - 1) / static_cast<double>(it + 2);
    const Eigen::MatrixXd w_look = weights_ + momentum * (weights_ - w_prev);
    const Eigen::RowVectorXd b_look = bias_ + momentum * (bias_ - b_prev);

    Eigen::MatrixXd logits = x * w_look;
    logits.rowwise() += b_look;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double hi = logits.row(i).maxCoeff();
      logits.row(i) = (logits.row(i).array() - hi).exp();
      logits.row(i) /= logits.row(i).sum();
    }
    const Eigen::MatrixXd residual = (logits - onehot) / static_cast<double>(n);
    const Eigen::MatrixXd grad_w = x.transpose() * residual + 2.0 * l2_ * w_look;
    const Eigen::RowVectorXd grad_b = residual.colwise().sum();

    w_prev = weights_;
    b_prev = bias_;
    weights_ = w_look - step * grad_w;
    bias_ = b_look - step * grad_b;
  }
}

std::vector<int> LogisticRegression::predict(const Eigen::MatrixXd& x) const {
  Eigen::MatrixXd logits = x * weights_;
  logits.rowwise() += bias_;
  std::vector<int> out(static_cast<std::size_t>(x.rows()));
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    Eigen::Index best = 0;
    logits.row(i).maxCoeff(&best);
    out[static_cast<std::size_t>(i)] = static_cast<int>(best);
  }
  return out;
}

namespace {

Eigen::MatrixXd gather_rows(const Eigen::MatrixXd& x, std::span<const std::size_t> rows) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(rows.size()), x.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) out.row(static_cast<Eigen::Index>(i)) = x.row(static_cast<Eigen::Index>(rows[i]));
  return out;
}

std::vector<int> gather(std::span<const int> y, std::span<const std::size_t> rows) {
  std::vector<int> out;
  out.reserve(rows.size());
  for (auto r : rows) out.push_back(y[r]);
  return out;
}

}  // namespace

EvalReport linear_probe(const Eigen::MatrixXd& z, std::span<const int> labels, const ProbeOptions& options) {
  const auto n = static_cast<std::size_t>(z.rows());
  if (labels.size() != n) throw Error("linear_probe: label count does not match embedding rows");
  if (options.train_frac <= 0.0 || options.val_frac < 0.0 || options.test_frac <= 0.0 ||
      options.train_frac + options.val_frac + options.test_frac > 1.0 + 1e-12)
    throw Error("linear_probe: split fractions must be positive and sum to at most 1");
  if (options.repeats < 1) throw Error("linear_probe: repeats must be >= 1");
  if (options.l2_grid.empty()) throw Error("linear_probe: empty l2 grid");
  int num_classes = 0;
  for (int y : labels) {
    if (y < 0) throw Error("linear_probe: negative class id");
    num_classes = std::max(num_classes, y + 1);
  }
  std::set<int> present(labels.begin(), labels.end());

  const auto n_train = std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(options.train_frac * n)));
  const auto n_val = static_cast<std::size_t>(std::floor(options.val_frac * n));
  const auto n_test = std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(options.test_frac * n)));
  if (n_train + n_val + n_test > n) throw Error("linear_probe: not enough nodes for the requested split");

  const Eigen::MatrixXd x = row_normalized(z);
  std::mt19937_64 rng(options.seed);
  std::vector<double> acc, micro, macro, chosen_l2;
  std::vector<std::size_t> order(n);
  for (int r = 0; r < options.repeats; ++r) {
    int attempt = 0;
    while (true) {
      std::iota(order.begin(), order.end(), std::size_t{0});
      std::shuffle(order.begin(), order.end(), rng);
      std::set<int> train_classes;
      for (std::size_t i = 0; i < n_train; ++i) train_classes.insert(labels[order[i]]);
      if (train_classes == present) break;
      if (++attempt >= options.max_split_retries)
        throw Error("linear_probe: could not draw a training split containing every class");
    }
    const std::span<const std::size_t> train_rows(order.data(), n_train);
    const std::span<const std::size_t> val_rows(order.data() + n_train, n_val);
    const std::span<const std::size_t> test_rows(order.data() + n_train + n_val, n_test);
    const auto x_train = gather_rows(x, train_rows);
    const auto y_train = gather(labels, train_rows);

    double best_l2 = options.l2_grid.front();
    if (options.l2_grid.size() > 1 && n_val > 0) {
      const auto x_val = gather_rows(x, val_rows);
      const auto y_val = gather(labels, val_rows);
      double best_acc = -1.0;
      for (double l2 : options.l2_grid) {
        LogisticRegression model(l2, options.iterations);
        model.fit(x_train, y_train, num_classes);
        const double a = accuracy(y_val, model.predict(x_val));
        if (a > best_acc) {
          best_acc = a;
          best_l2 = l2;
        }
      }
    }
    LogisticRegression model(best_l2, options.iterations);
    model.fit(x_train, y_train, num_classes);
    const auto y_test = gather(labels, test_rows);
    const auto predicted = model.predict(gather_rows(x, test_rows));
    acc.push_back(accuracy(y_test, predicted));
    micro.push_back(micro_f1(y_test, predicted));
    macro.push_back(macro_f1(y_test, predicted));
    chosen_l2.push_back(best_l2);
  }

  EvalReport report;
  report.task = "classification";
  report.metrics = {{"accuracy", summarize(acc)}, {"micro_f1", summarize(micro)}, {"macro_f1", summarize(macro)}};
  report.split = {{"train_frac", io::format_double(options.train_frac)},
                  {"val_frac", io::format_double(options.val_frac)},
                  {"test_frac", io::format_double(options.test_frac)},
                  {"repeats", std::to_string(options.repeats)},
                  {"seed", std::to_string(options.seed)},
                  {"l2_mean", io::format_double(summarize(chosen_l2).mean)}};
  return report;
}

// --- clustering -----------------------------------------------------------

double nmi(std::span<const int> a, std::span<const int> b) {
  check_same_length(a, b);
  const double n = static_cast<double>(a.size());
  std::map<int, double> ca, cb;
  std::map<std::pair<int, int>, double> joint;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ca[a[i]] += 1.0;
    cb[b[i]] += 1.0;
    joint[{a[i], b[i]}] += 1.0;
  }
  auto entropy = [n](const std::map<int, double>& counts) {
    double h = 0.0;
    for (const auto& [k, c] : counts) h -= (c / n) * std::log(c / n);
    return h;
  };
  const double ha = entropy(ca);
  const double hb = entropy(cb);
  if (ha == 0.0 && hb == 0.0) return 1.0;
  double mi = 0.0;
  for (const auto& [key, c] : joint) mi += (c / n) * std::log((c * n) / (ca[key.first] * cb[key.second]));
  const double value = mi / (0.5 * (ha + hb));
  return std::clamp(value, 0.0, 1.0);
}

namespace {

struct KMeansRun {
  std::vector<int> labels;
  double inertia = std::numeric_limits<double>::infinity();
};

KMeansRun kmeans_once(const Eigen::MatrixXd& x, int k, std::mt19937_64& rng, int max_iterations) {
  const Eigen::Index n = x.rows();
  Eigen::MatrixXd centers(k, x.cols());
  std::uniform_int_distribution<Eigen::Index> pick(0, n - 1);
  centers.row(0) = x.row(pick(rng));
  Eigen::VectorXd dist2 = (x.rowwise() - centers.row(0)).rowwise().squaredNorm();
  for (int c = 1; c < k; ++c) {
    const double total = dist2.sum();
    Eigen::Index chosen = n - 1;
    if (total > 0.0) {
      std::uniform_real_distribution<double> unit(0.0, total);
      double target = unit(rng);
      for (Eigen::Index i = 0; i < n; ++i) {
        target -= dist2(i);
        if (target < 0.0) {
          chosen = i;
          break;
        }
      }
    } else {
      chosen = pick(rng);
    }
    centers.row(c) = x.row(chosen);
    dist2 = dist2.cwiseMin((x.rowwise() - centers.row(c)).rowwise().squaredNorm());
  }

  KMeansRun run;
  run.labels.assign(static_cast<std::size_t>(n), -1);
  for (int iter = 0; iter < max_iterations; ++iter) {
    bool changed = false;
    Eigen::VectorXd best(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      Eigen::Index arg = 0;
      best(i) = (centers.rowwise() - x.row(i)).rowwise().squaredNorm().minCoeff(&arg);
      if (run.labels[static_cast<std::size_t>(i)] != static_cast<int>(arg)) {
        run.labels[static_cast<std::size_t>(i)] = static_cast<int>(arg);
        changed = true;
      }
    }
    run.inertia = best.sum();
    if (!changed) break;
    Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(k, x.cols());
    std::vector<int> counts(static_cast<std::size_t>(k), 0);
    for (Eigen::Index i = 0; i < n; ++i) {
      sums.row(run.labels[static_cast<std::size_t>(i)]) += x.row(i);
      ++counts[static_cast<std::size_t>(run.labels[static_cast<std::size_t>(i)])];
    }
    for (int c = 0; c < k; ++c) {
      if (counts[static_cast<std::size_t>(c)] > 0) {
        centers.row(c) = sums.row(c) / counts[static_cast<std::size_t>(c)];
      } else {
        // Empty cluster: re-seed at the point farthest from its center.
        Eigen::Index far = 0;
        best.maxCoeff(&far);
        centers.row(c) = x.row(far);
        best(far) = 0.0;
      }
    }
  }
  return run;
}

}  // namespace

std::vector<int> kmeans(const Eigen::MatrixXd& points, int k, std::uint64_t seed, const KMeansOptions& options) {
  if (k < 1) throw Error("kmeans: k must be positive");
  if (k > points.rows()) throw Error("kmeans: k exceeds the number of points");
  std::mt19937_64 rng(seed);
  KMeansRun best;
  for (int r = 0; r < std::max(1, options.n_init); ++r) {
    auto run = kmeans_once(points, k, rng, options.max_iterations);
    if (run.inertia < best.inertia) best = std::move(run);
  }
  return best.labels;
}

EvalReport kmeans_nmi(const Eigen::MatrixXd& z, std::span<const int> labels, int k, std::uint64_t seed, int repeats,
                      const KMeansOptions& options) {
  if (k < 2) throw Error("kmeans_nmi: k must be at least 2");
  if (static_cast<std::size_t>(z.rows()) != labels.size())
    throw Error("kmeans_nmi: label count does not match embedding rows");
  if (repeats < 1) throw Error("kmeans_nmi: repeats must be >= 1");
  const Eigen::MatrixXd x = row_normalized(z);
  std::mt19937_64 seeder(seed);
  std::vector<double> scores;
  for (int r = 0; r < repeats; ++r) {
    const auto clusters = kmeans(x, k, seeder(), options);
    scores.push_back(nmi(clusters, labels));
  }
  EvalReport report;
  report.task = "clustering";
  report.metrics = {{"nmi", summarize(scores)}};
  report.split = {{"k", std::to_string(k)}, {"repeats", std::to_string(repeats)}, {"seed", std::to_string(seed)}};
  return report;
}

// --- link prediction ------------------------------------------------------

double auc_score(std::span<const double> positive, std::span<const double> negative) {
  if (positive.empty() || negative.empty()) throw Error("auc: need at least one positive and one negative");
  std::vector<std::pair<double, bool>> all;
  all.reserve(positive.size() + negative.size());
  for (double s : positive) all.emplace_back(s, true);
  for (double s : negative) all.emplace_back(s, false);
  std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  // Mid-ranks; equivalent to counting every positive/negative pair.
  double rank_sum = 0.0;
  std::size_t i = 0;
  while (i < all.size()) {
    std::size_t j = i;
    while (j < all.size() && all[j].first == all[i].first) ++j;
    const double mid = 0.5 * static_cast<double>(i + 1 + j);
    for (std::size_t k = i; k < j; ++k)
      if (all[k].second) rank_sum += mid;
    i = j;
  }
  const double p = static_cast<double>(positive.size());
  const double q = static_cast<double>(negative.size());
  return (rank_sum - p * (p + 1.0) / 2.0) / (p * q);
}

double average_precision(std::span<const double> positive, std::span<const double> negative) {
  if (positive.empty()) throw Error("average_precision: no positives");
  std::vector<std::pair<double, bool>> all;
  for (double s : positive) all.emplace_back(s, true);
  for (double s : negative) all.emplace_back(s, false);
  std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  const double total_pos = static_cast<double>(positive.size());
  double tp = 0.0, seen = 0.0, prev_recall = 0.0, ap = 0.0;
  std::size_t i = 0;
  while (i < all.size()) {
    std::size_t j = i;
    while (j < all.size() && all[j].first == all[i].first) {
      tp += all[j].second;
      seen += 1.0;
      ++j;
    }
    const double recall = tp / total_pos;
    ap += (recall - prev_recall) * (tp / seen);
    prev_recall = recall;
    i = j;
  }
  return ap;
}

double cosine(const Eigen::MatrixXd& z, NodeId u, NodeId v) {
  const double nu = z.row(u).norm();
  const double nv = z.row(v).norm();
  if (nu == 0.0 || nv == 0.0) return 0.0;
  return z.row(u).dot(z.row(v)) / (nu * nv);
}

EvalReport link_prediction(const Eigen::MatrixXd& z, const AttributedGraph& g, double holdout_frac,
                           std::uint64_t seed, int repeats) {
  if (!(holdout_frac > 0.0 && holdout_frac < 1.0)) throw Error("link_prediction: holdout_frac must lie in (0, 1)");
  if (static_cast<std::size_t>(z.rows()) != g.num_nodes())
    throw Error("link_prediction: embedding rows do not match node count");
  if (repeats < 1) throw Error("link_prediction: repeats must be >= 1");
  const auto n = g.num_nodes();
  const auto m = g.num_edges();
  if (m == 0) throw Error("link_prediction: graph has no edges");
  const auto count = static_cast<std::size_t>(std::ceil(holdout_frac * static_cast<double>(m)));
  const double possible_pairs = static_cast<double>(n) * static_cast<double>(n - 1) / 2.0;
  if (possible_pairs - static_cast<double>(m) < static_cast<double>(count))
    throw Error("link_prediction: graph too small to sample " + std::to_string(count) + " non-edges");

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<NodeId> node(0, static_cast<NodeId>(n - 1));
  std::vector<double> aucs, aps;
  std::vector<std::size_t> edge_ids(m);
  for (int r = 0; r < repeats; ++r) {
    std::iota(edge_ids.begin(), edge_ids.end(), std::size_t{0});
    std::shuffle(edge_ids.begin(), edge_ids.end(), rng);
    std::vector<double> pos, neg;
    for (std::size_t i = 0; i < count; ++i) {
      const auto& e = g.edges()[edge_ids[i]];
      pos.push_back(cosine(z, e.u, e.v));
    }
    std::set<Edge> negatives;
    while (negatives.size() < count) {
      NodeId u = node(rng);
      NodeId v = node(rng);
      if (u == v || g.adjacency().has_edge(u, v)) continue;
      if (u > v) std::swap(u, v);
      if (negatives.insert({u, v}).second) neg.push_back(cosine(z, u, v));
    }
    aucs.push_back(auc_score(pos, neg));
    aps.push_back(average_precision(pos, neg));
  }
  EvalReport report;
  report.task = "link_prediction";
  report.metrics = {{"auc", summarize(aucs)}, {"ap", summarize(aps)}};
  report.split = {{"holdout_frac", io::format_double(holdout_frac)},
                  {"positives", std::to_string(count)},
                  {"negatives", std::to_string(count)},
                  {"repeats", std::to_string(repeats)},
                  {"seed", std::to_string(seed)}};
  return report;
}

}  // namespace csgcl
