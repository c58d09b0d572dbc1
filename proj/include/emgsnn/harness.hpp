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

#ifndef EMGSNN_HARNESS_HPP
#define EMGSNN_HARNESS_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "emgsnn/learning.hpp"
#include "emgsnn/topology.hpp"

namespace emgsnn {

struct AblationConfig {
  std::string name;
  bool adaptation = false;
  bool ei_balance = false;
  bool ff_inhibition = false;

  NetworkConfig apply(NetworkConfig base) const {
    base.adaptation = adaptation;
    base.ei_balance = ei_balance;
    base.ff_inhibition = ff_inhibition;
    return base;
  }
};

// Base, +adapt, +EI, +FF, Full — additions relative to Base.
std::vector<AblationConfig> ablation_ladder();
const AblationConfig& ablation_by_name(const std::string& name);

struct IoCurve {
  std::string config_name;
  std::vector<double> input_hz;
  std::vector<double> output_hz;  // mean E-population rate
};

// Drives all 16 inputs with independent Poisson trains per rate point and
// records the mean E rate over the final 80% of each window. Plastic weights
// stay at their seeded initialization.
IoCurve io_curve(const NetworkConfig& base, const AblationConfig& config,
                 std::span<const double> rates_hz, double duration_us,
                 std::uint64_t seed, double dt_us = kDefaultDtUs);

// Least-squares linear fit R^2.
double linear_fit_r2(std::span<const double> x, std::span<const double> y);

// Default 0-8 kHz sweep in 500 Hz steps.
std::vector<double> default_io_rates();

// Picks the i_w_base from the grid maximizing the Full-config IO-curve
// linear-fit R^2; ties go to the smaller value.
double calibrate_weight_unit(const NetworkConfig& base,
                             std::span<const double> i_w_base_grid,
                             std::span<const double> rates_hz,
                             double duration_us, std::uint64_t seed,
                             double dt_us = kDefaultDtUs);

struct Metrics {
  double accuracy = 0.0;
  double accuracy_std = 0.0;  // across folds
  std::vector<double> per_class_recall;
  std::vector<std::vector<int>> confusion;  // [true][predicted]
  double mean_output_rate_hz = 0.0;
};

// Train on `train`, freeze, evaluate on `test`. Returns test metrics.
Metrics train_and_eval(const NetworkConfig& config,
                       std::span<const LabeledWindow> train_set,
                       std::span<const LabeledWindow> test_set, int epochs,
                       const TraceParams& params, const ClassMap& class_map,
                       std::uint64_t seed);

struct AblationRow {
  std::string name;
  std::vector<double> per_seed_accuracy;
  double median_accuracy = 0.0;
};

// Runs the five-config ladder on identical data and seeds. `windows` is the
// full encoded corpus; each seed gets its own oversample + split.
std::vector<AblationRow> ablation_run(const NetworkConfig& base,
                                      std::span<const LabeledWindow> windows,
                                      std::span<const std::uint64_t> seeds,
                                      int epochs, const TraceParams& params,
                                      const ClassMap& class_map,
                                      double train_ratio = 0.8);

// k-fold cross validation (default 3) over the windows.
Metrics evaluate(const NetworkConfig& config,
                 std::span<const LabeledWindow> windows, int k_folds,
                 int epochs, const TraceParams& params,
                 const ClassMap& class_map, std::uint64_t seed);

double median(std::vector<double> values);

}  // namespace emgsnn

#endif  // EMGSNN_HARNESS_HPP
