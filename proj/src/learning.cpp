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

#include "emgsnn/learning.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "emgsnn/rng.hpp"

namespace emgsnn {

void update_traces(std::span<double> traces, std::span<const int> counts,
                   double dt_us, const TraceParams& params) {
  if (dt_us <= 0.0) {
    throw std::invalid_argument("update_traces: dt must be positive");
  }
  if (traces.size() != counts.size()) {
    throw std::invalid_argument("update_traces: shape mismatch");
  }
  const double decay = std::exp(-dt_us / params.tau_x_us);
  for (std::size_t i = 0; i < traces.size(); ++i) {
    traces[i] = traces[i] * decay + params.increment * counts[i];
  }
}

void delta_update(std::span<double> w, std::span<const double> x,
                  std::span<const double> y, std::span<const double> teacher,
                  const TraceParams& params) {
  if (y.size() != teacher.size() || w.size() != x.size() * y.size()) {
    throw std::invalid_argument("delta_update: shape mismatch");
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0.0) continue;
    for (std::size_t j = 0; j < y.size(); ++j) {
      double v = w[i * y.size() + j] + params.alpha * (teacher[j] - y[j]) * x[i];
      w[i * y.size() + j] = std::clamp(v, 0.0, params.w_max);
    }
  }
}

namespace {
std::vector<double> teacher_vector(int label, int n_exc,
                                   const ClassMap& class_map,
                                   const TraceParams& params) {
  std::vector<double> teacher(n_exc, 0.0);
  const auto [a, b] = class_map.pair_for(label);
  if (label < 0 || label >= class_map.n_classes || b >= n_exc) {
    throw std::invalid_argument("train: label outside the class map");
  }
  teacher[a] = params.teacher_value;
  teacher[b] = params.teacher_value;
  return teacher;
}
}  // namespace

TrainResult train(const Network& net, std::span<const LabeledWindow> dataset,
                  int epochs, const TraceParams& params,
                  const ClassMap& class_map, std::uint64_t seed,
                  double dt_us) {
  if (dataset.empty()) {
    throw std::invalid_argument("train: empty dataset");
  }
  if (2 * class_map.n_classes > net.config.n_exc) {
    throw std::invalid_argument("train: class map needs more E neurons");
  }

  TrainResult out;
  out.weights = net.plastic;
  const int n_in = net.config.n_input;
  const int n_exc = net.config.n_exc;

  for (int epoch = 0; epoch < epochs; ++epoch) {
    for (std::size_t wi = 0; wi < dataset.size(); ++wi) {
      const LabeledWindow& window = dataset[wi];
      const auto teacher =
          teacher_vector(window.label, n_exc, class_map, params);

      Network scratch = net;
      scratch.plastic = out.weights;
      const std::uint64_t sim_seed =
          Rng::mix(seed, (static_cast<std::uint64_t>(epoch) << 32) | wi);
      Simulator sim(scratch, window.spikes, window.spikes.duration_us, dt_us,
                    sim_seed);

      TraceParams pre = params;
      pre.increment = params.increment_pre;
      std::vector<double> x(n_in, 0.0);
      std::vector<double> y(n_exc, 0.0);
      while (!sim.done()) {
        sim.step();
        update_traces(x, sim.input_counts(), dt_us, pre);
        update_traces(y, sim.exc_counts(), dt_us, params);
        delta_update(sim.plastic(), x, y, teacher, params);
      }
      out.weights = sim.plastic();
    }
    const double mean =
        std::accumulate(out.weights.begin(), out.weights.end(), 0.0) /
        static_cast<double>(out.weights.size());
    out.mean_weight_per_epoch.push_back(mean);
  }
  return out;
}

int predict(const Network& net, const std::vector<double>& weights,
            const LabeledWindow& window, const ClassMap& class_map,
            std::uint64_t seed, double dt_us) {
  Network frozen = net;
  frozen.plastic = weights;
  const SimulationResult result =
      run(frozen, window.spikes, window.spikes.duration_us, dt_us, seed);

  int best_class = 0;
  std::size_t best_count = 0;
  for (int c = 0; c < class_map.n_classes; ++c) {
    const auto [a, b] = class_map.pair_for(c);
    const std::size_t count = result.exc.count_on(a) + result.exc.count_on(b);
    if (count > best_count) {
      best_count = count;
      best_class = c;
    }
  }
  return best_class;
}

}  // namespace emgsnn
