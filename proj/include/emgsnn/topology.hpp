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

#ifndef EMGSNN_TOPOLOGY_HPP
#define EMGSNN_TOPOLOGY_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "emgsnn/dynamics.hpp"

namespace emgsnn {

enum class Pop : std::uint8_t { Input = 0, FF = 1, Exc = 2, Inh = 3 };

const char* pop_name(Pop p);

// Four-population architecture: 16 input relays, 16 feed-forward inhibitory,
// 8 excitatory readout, 4 recurrent inhibitory neurons. The three feature
// flags form the ablation ladder.
struct NetworkConfig {
  int n_input = 16;
  int n_ff = 16;
  int n_exc = 8;
  int n_inh = 4;

  double w_inp_ff = 0.5;
  double w_ff_e = 3.8;
  double w_i_e = 3.0;
  double w_e_i = 1.7;
  double w_i_i = 0.5;

  // Row-major n_input x n_exc plastic matrix. Empty means "initialize
  // uniformly in [w_init_lo, w_init_hi] from the seed".
  std::vector<double> w_inp_e;
  double w_max = 2.0;
  double w_init_lo = 0.3;
  double w_init_hi = 0.7;

  bool adaptation = false;
  bool ei_balance = false;
  bool ff_inhibition = false;

  double noise_rate_hz = 40.0;
  double noise_weight = 1.0;

  double i_w_base_pA = kDefaultWeightUnitPa;
  double i_ahp_unit_pA = kDefaultAhpUnitPa;

  std::uint64_t seed = 1;
};

struct Edge {
  Pop pre_pop;
  int pre;
  Pop post_pop;
  int post;
  double weight;
  SynClass cls;
  bool plastic;
};

struct Network {
  NetworkConfig config;
  std::vector<Edge> edges;
  NeuronParams ff_params;
  NeuronParams exc_params;
  NeuronParams inh_params;
  std::array<SynapseParams, kNumSynClasses> syn_params;
  // Current plastic Inp->E weights, row-major n_input x n_exc. Plastic edges
  // reference this matrix rather than Edge::weight.
  std::vector<double> plastic;

  int pop_size(Pop p) const;
  const NeuronParams& params_for(Pop p) const;
};

// Builds the synapse table and per-population parameters.
// Connectivity: Inp->FF one-to-one (AMPA, w_inp_ff); Inp->E all-to-all
// plastic (NMDA); FF->E all-to-all (GABA-A, w_ff_e) iff ff_inhibition;
// E->I, I->E and I->I (minus self) all-to-all iff ei_balance. Adaptation on
// the E population follows the adaptation flag.
Network build_network(const NetworkConfig& config);

struct NoiseSource {
  Pop pop;
  int neuron;
  SynClass cls;
  std::uint64_t stream;  // deterministic per-source stream id
};

// Two independent Poisson sources (AMPA and GABA-B) per FF/E/I neuron.
std::vector<NoiseSource> attach_noise(const NetworkConfig& config);

nlohmann::json config_to_json(const NetworkConfig& config);
NetworkConfig config_from_json(const nlohmann::json& j);

}  // namespace emgsnn

#endif  // EMGSNN_TOPOLOGY_HPP
