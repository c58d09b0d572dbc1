// Copyright 2026 The emgsnn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "emgsnn/harness.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

#include "emgsnn/datapipe.hpp"
#include "emgsnn/encoders.hpp"
#include "emgsnn/engine.hpp"
#include "emgsnn/rng.hpp"

namespace emgsnn {

std::vector<AblationConfig> ablation_ladder() {
  return {
      {"Base", false, false, false},
      {"+adapt", true, false, false},
      {"+EI", false, true, false},
      {"+FF", false, false, true},
      {"Full", true, true, true},
  };
}

const AblationConfig& ablation_by_name(const std::string& name) {
  static const std::vector<AblationConfig> ladder = ablation_ladder();
  for (const auto& c : ladder) {
    if (c.name == name) return c;
  }
  throw std::invalid_argument("unknown ablation config: " + name);
}

std::vector<double> default_io_rates() {
  std::vector<double> rates;
  for (int r = 0; r <= 8000; r += 500) rates.push_back(r);
  return rates;
}

IoCurve io_curve(const NetworkConfig& base, const AblationConfig& config,
                 std::span<const double> rates_hz, double duration_us,
                 std::uint64_t seed, double dt_us) {
  const Network net = build_network(config.apply(base));

  IoCurve curve;
  curve.config_name = config.name;
  for (std::size_t ri = 0; ri < rates_hz.size(); ++ri) {
    const double rate = rates_hz[ri];
    SpikeTrain inputs;
    inputs.duration_us = duration_us;
    for (int ch = 0; ch < net.config.n_input; ++ch) {
      inputs.channels.push_back("in" + std::to_string(ch));
      const SpikeTrain t = poisson_train(
          rate, duration_us, Rng::mix(seed, (ri << 8) | ch));
      for (const auto& e : t.events) {
        inputs.events.push_back({e.t_us, static_cast<std::uint32_t>(ch)});
      }
    }
    std::stable_sort(inputs.events.begin(), inputs.events.end(),
                     [](const SpikeEvent& a, const SpikeEvent& b) {
                       return a.t_us < b.t_us;
                     });
    const SimulationResult result =
        run(net, inputs, duration_us, dt_us, Rng::mix(seed, 0xc0de + ri));
    // Discard the onset transient: measure over the final 80%.
    const double t0 = 0.2 * duration_us;
    const auto rates = mean_rate(result.exc, net.config.n_exc, t0,
                                 duration_us);
    const double mean =
        std::accumulate(rates.begin(), rates.end(), 0.0) / rates.size();
    curve.input_hz.push_back(rate);
    curve.output_hz.push_back(mean);
  }
  return curve;
}

double linear_fit_r2(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  if (n != y.size() || n < 2) {
    throw std::invalid_argument("linear_fit_r2: need >= 2 matched points");
  }
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (syy == 0.0) return 1.0;  // constant data fits itself
  if (sxx == 0.0) return 0.0;
  return (sxy * sxy) / (sxx * syy);
}

double calibrate_weight_unit(const NetworkConfig& base,
                             std::span<const double> i_w_base_grid,
                             std::span<const double> rates_hz,
                             double duration_us, std::uint64_t seed,
                             double dt_us) {
  if (i_w_base_grid.empty()) {
    throw std::invalid_argument("calibrate_weight_unit: empty grid");
  }
  const AblationConfig& full = ablation_by_name("Full");
  double best_value = i_w_base_grid.front();
  double best_r2 = -1.0;
  for (double candidate : i_w_base_grid) {
    NetworkConfig cfg = base;
    cfg.i_w_base_pA = candidate;
    const IoCurve curve =
        io_curve(cfg, full, rates_hz, duration_us, seed, dt_us);
    const double r2 = linear_fit_r2(curve.input_hz, curve.output_hz);
    if (r2 > best_r2 || (r2 == best_r2 && candidate < best_value)) {
      best_r2 = r2;
      best_value = candidate;
    }
  }
  return best_value;
}

Metrics train_and_eval(const NetworkConfig& config,
                       std::span<const LabeledWindow> train_set,
                       std::span<const LabeledWindow> test_set, int epochs,
                       const TraceParams& params, const ClassMap& class_map,
                       std::uint64_t seed) {
  NetworkConfig cfg = config;
  cfg.seed = seed;
  cfg.w_inp_e.clear();  // reseed the initial plastic matrix
  const Network net = build_network(cfg);

  const TrainResult trained =
      train(net, train_set, epochs, params, class_map, Rng::mix(seed, 0x7147));

  Metrics m;
  m.confusion.assign(class_map.n_classes,
                     std::vector<int>(class_map.n_classes, 0));
  std::size_t correct = 0;
  double rate_acc = 0.0;
  for (std::size_t i = 0; i < test_set.size(); ++i) {
    const auto& window = test_set[i];
    const int predicted = predict(net, trained.weights, window, class_map,
                                  Rng::mix(seed, 0xe0a1 + i));
    if (predicted == window.label) ++correct;
    m.confusion[window.label][predicted] += 1;

    Network frozen = net;
    frozen.plastic = trained.weights;
    const SimulationResult res = run(frozen, window.spikes,
                                     window.spikes.duration_us, kDefaultDtUs,
                                     Rng::mix(seed, 0xe0a1 + i));
    const auto rates = mean_rate(res.exc, cfg.n_exc, 0.0,
                                 window.spikes.duration_us);
    rate_acc += std::accumulate(rates.begin(), rates.end(), 0.0) /
                rates.size();
  }
  m.accuracy = test_set.empty()
                   ? 0.0
                   : static_cast<double>(correct) / test_set.size();
  m.mean_output_rate_hz = test_set.empty() ? 0.0 : rate_acc / test_set.size();
  m.per_class_recall.assign(class_map.n_classes, 0.0);
  for (int c = 0; c < class_map.n_classes; ++c) {
    const int total = std::accumulate(m.confusion[c].begin(),
                                      m.confusion[c].end(), 0);
    if (total > 0) {
      m.per_class_recall[c] =
          static_cast<double>(m.confusion[c][c]) / total;
    }
  }
  return m;
}

double median(std::vector<double> values) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 == 1 ? values[n / 2]
                    : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

std::vector<AblationRow> ablation_run(const NetworkConfig& base,
                                      std::span<const LabeledWindow> windows,
                                      std::span<const std::uint64_t> seeds,
                                      int epochs, const TraceParams& params,
                                      const ClassMap& class_map,
                                      double train_ratio) {
  std::vector<AblationRow> table;
  for (const AblationConfig& config : ablation_ladder()) {
    table.push_back({config.name, {}, 0.0});
  }
  for (std::uint64_t seed : seeds) {
    // Identical data per seed across all configs.
    std::vector<LabeledWindow> corpus(windows.begin(), windows.end());
    corpus = oversample(std::move(corpus), seed);
    auto [train_set, test_set] = split(corpus, train_ratio, seed);
    const auto ladder = ablation_ladder();
    for (std::size_t ci = 0; ci < ladder.size(); ++ci) {
      const Metrics m =
          train_and_eval(ladder[ci].apply(base), train_set, test_set, epochs,
                         params, class_map, seed);
      table[ci].per_seed_accuracy.push_back(m.accuracy);
    }
  }
  for (auto& row : table) {
    row.median_accuracy = median(row.per_seed_accuracy);
  }
  return table;
}

Metrics evaluate(const NetworkConfig& config,
                 std::span<const LabeledWindow> windows, int k_folds,
                 int epochs, const TraceParams& params,
                 const ClassMap& class_map, std::uint64_t seed) {
  if (k_folds < 2) {
    throw std::invalid_argument("evaluate: need >= 2 folds");
  }
  // Stratified fold assignment by class, deterministic per seed.
  std::map<int, std::vector<std::size_t>> by_class;
  for (std::size_t i = 0; i < windows.size(); ++i) {
    by_class[windows[i].label].push_back(i);
  }
  std::vector<int> fold_of(windows.size(), 0);
  Rng rng(Rng::mix(seed, 0xf01d5ULL));
  for (auto& [label, idx] : by_class) {
    for (std::size_t i = idx.size(); i > 1; --i) {
      std::swap(idx[i - 1], idx[rng.integer(i)]);
    }
    for (std::size_t i = 0; i < idx.size(); ++i) {
      fold_of[idx[i]] = static_cast<int>(i % k_folds);
    }
  }

  std::vector<double> fold_accuracies;
  Metrics agg;
  agg.confusion.assign(class_map.n_classes,
                       std::vector<int>(class_map.n_classes, 0));
  double rate_acc = 0.0;
  for (int fold = 0; fold < k_folds; ++fold) {
    std::vector<LabeledWindow> train_set, test_set;
    for (std::size_t i = 0; i < windows.size(); ++i) {
      (fold_of[i] == fold ? test_set : train_set).push_back(windows[i]);
    }
    const Metrics m =
        train_and_eval(config, train_set, test_set, epochs, params, class_map,
                       Rng::mix(seed, 0xf0 + fold));
    fold_accuracies.push_back(m.accuracy);
    rate_acc += m.mean_output_rate_hz;
    for (int a = 0; a < class_map.n_classes; ++a) {
      for (int b = 0; b < class_map.n_classes; ++b) {
        agg.confusion[a][b] += m.confusion[a][b];
      }
    }
  }
  agg.accuracy =
      std::accumulate(fold_accuracies.begin(), fold_accuracies.end(), 0.0) /
      k_folds;
  double var = 0.0;
  for (double a : fold_accuracies) {
    var += (a - agg.accuracy) * (a - agg.accuracy);
  }
  agg.accuracy_std = std::sqrt(var / k_folds);
  agg.mean_output_rate_hz = rate_acc / k_folds;
  agg.per_class_recall.assign(class_map.n_classes, 0.0);
  for (int c = 0; c < class_map.n_classes; ++c) {
    const int total = std::accumulate(agg.confusion[c].begin(),
                                      agg.confusion[c].end(), 0);
    if (total > 0) {
      agg.per_class_recall[c] =
          static_cast<double>(agg.confusion[c][c]) / total;
    }
  }
  return agg;
}

}  // namespace emgsnn
