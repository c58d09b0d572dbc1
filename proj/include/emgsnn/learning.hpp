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

#ifndef EMGSNN_LEARNING_HPP
#define EMGSNN_LEARNING_HPP

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "emgsnn/engine.hpp"
#include "emgsnn/topology.hpp"
#include "emgsnn/types.hpp"

namespace emgsnn {

struct TraceParams {
  double tau_x_us = 50000.0;    // 50 ms exponential kernel
  double increment = 0.04;      // output-trace bump per spike: y reaches the
                                // teacher value 0.1 at 50 Hz sustained firing
  double increment_pre = 4e-4;  // input-trace bump per spike; inputs run at
                                // kHz rates, so a 100x smaller bump keeps the
                                // per-step weight change stable
  double teacher_value = 0.1;   // target for the correct class's pair
  double alpha = 5e-4;          // learning rate
  double w_max = 2.0;
};

// Output classes map to disjoint pairs of E neurons; the pair with the
// highest test-window firing rate is the prediction.
struct ClassMap {
  int n_classes = 4;

  std::pair<int, int> pair_for(int cls) const {
    return {2 * cls, 2 * cls + 1};
  }
};

// One encoded 200 ms window with its label.
struct LabeledWindow {
  SpikeTrain spikes;  // 16 input channels
  int label = 0;
  int source_offset = 0;  // sample offset in the source recording
  int origin_offset = 0;  // offset of the original window (same unless a
                          // duplicate created by oversampling)
};

// Exponential traces: decay by exp(-dt/tau_x), then add increment per spike.
void update_traces(std::span<double> traces, std::span<const int> counts,
                   double dt_us, const TraceParams& params);

// Delta rule: w_ji += alpha * (T_j - y_j) * x_i, clipped to [0, w_max].
// w is row-major (n_pre x n_post).
void delta_update(std::span<double> w, std::span<const double> x,
                  std::span<const double> y, std::span<const double> teacher,
                  const TraceParams& params);

struct TrainResult {
  std::vector<double> weights;           // trained Inp->E matrix
  std::vector<double> mean_weight_per_epoch;
};

// Supervised training of the plastic Inp->E matrix. Weights carry across
// windows and epochs; traces and network state reset per window. The teacher
// vector holds teacher_value on both neurons of the true class's pair.
TrainResult train(const Network& net, std::span<const LabeledWindow> dataset,
                  int epochs, const TraceParams& params,
                  const ClassMap& class_map, std::uint64_t seed,
                  double dt_us = kDefaultDtUs);

// Frozen-weight inference: simulate the window, sum each pair's spike
// counts, return the argmax class (ties to the lowest class index).
int predict(const Network& net, const std::vector<double>& weights,
            const LabeledWindow& window, const ClassMap& class_map,
            std::uint64_t seed, double dt_us = kDefaultDtUs);

}  // namespace emgsnn

#endif  // EMGSNN_LEARNING_HPP
