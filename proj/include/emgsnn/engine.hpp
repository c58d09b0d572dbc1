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

#ifndef EMGSNN_ENGINE_HPP
#define EMGSNN_ENGINE_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "emgsnn/rng.hpp"
#include "emgsnn/topology.hpp"
#include "emgsnn/types.hpp"

namespace emgsnn {

struct Probe {
  Pop pop;
  int neuron;
};

struct ProbeSample {
  double t_us;
  int probe;  // index into the probe list
  double i_mem_pA;
  double i_ahp_pA;
};

struct SimulationResult {
  SpikeTrain input;  // relay output, channel = input index
  SpikeTrain ff;
  SpikeTrain exc;
  SpikeTrain inh;
  std::vector<ProbeSample> traces;
  double duration_us = 0.0;
  double dt_us = 0.0;

  const SpikeTrain& population(Pop p) const;
};

// Clock-driven simulation of one network instance. All spikes emitted at
// step t reach their targets at step t+1 (one full dt of delay); external
// input and noise events are binned per step and delivered with the same
// delay. Input-population neurons are relays: one output spike per input
// event, no dynamics.
class Simulator {
 public:
  Simulator(const Network& net, const SpikeTrain& inputs, double duration_us,
            double dt_us, std::uint64_t seed,
            std::vector<Probe> probes = {});

  bool done() const { return step_ >= n_steps_; }
  void step();
  void run_to_end();

  double t_now_us() const { return static_cast<double>(step_) * dt_us_; }
  std::int64_t step_index() const { return step_; }

  // Spike counts emitted during the step that just ran.
  std::span<const int> input_counts() const { return cur_input_counts_; }
  std::span<const int> exc_counts() const { return cur_exc_counts_; }

  std::vector<double>& plastic() { return plastic_; }
  const std::vector<double>& plastic() const { return plastic_; }

  SimulationResult take_result();

 private:
  struct NoiseState {
    int neuron_global;
    std::size_t cls;
    double next_t_us;
    Rng rng;
  };

  const Network& net_;
  double dt_us_;
  std::int64_t n_steps_;
  std::int64_t step_ = 0;
  std::uint64_t seed_;

  int n_total_;
  int off_ff_, off_exc_, off_inh_;

  std::vector<NeuronState> states_;       // FF/E/I only, indexed globally
  std::vector<double> prev_fired_;        // spike counts from previous step
  std::vector<double> ext_prev_;          // external drive from previous step
  std::vector<double> plastic_;

  std::vector<SpikeEvent> input_events_;  // sorted copy of the input train
  std::size_t input_cursor_ = 0;

  std::vector<NoiseState> noise_;

  std::vector<int> cur_input_counts_;
  std::vector<int> cur_exc_counts_;

  std::vector<Probe> probes_;
  SimulationResult result_;
};

SimulationResult run(const Network& net, const SpikeTrain& inputs,
                     double duration_us, double dt_us, std::uint64_t seed,
                     std::vector<Probe> probes = {});

// Per-neuron mean rate in Hz over [t0, t1). Throws on an empty window.
std::vector<double> mean_rate(const SpikeTrain& train, int n_neurons,
                              double t0_us, double t1_us);

// Smallest inter-spike interval per channel; used to check refractory
// compliance post-hoc. Returns +inf for channels with < 2 spikes.
double min_isi_us(const SpikeTrain& train, std::uint32_t channel);

}  // namespace emgsnn

#endif  // EMGSNN_ENGINE_HPP
