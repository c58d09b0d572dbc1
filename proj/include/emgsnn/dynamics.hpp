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

#ifndef EMGSNN_DYNAMICS_HPP
#define EMGSNN_DYNAMICS_HPP

#include <array>
#include <cstddef>

namespace emgsnn {

// Behavioral model of the adaptive integrate-and-fire neuron and the
// log-domain (DPI-style) synapse filter. All currents are in pA, capacitances
// in pF, times in microseconds. State updates are exponential-Euler: exact
// decay plus impulse increments, so halving the step never changes the decay
// path.

inline constexpr double kThermalVoltage = 0.025;     // U_T, volts
inline constexpr double kKappa = 0.7;                // subthreshold slope
inline constexpr double kDefaultDtUs = 100.0;        // simulation step
// Calibrated jointly so the full network's IO curve stays linear up to 8 kHz
// input while the uninhibited network saturates (see harness calibration).
inline constexpr double kDefaultWeightUnitPa = 120.0;  // current per unit weight
inline constexpr double kDefaultAhpUnitPa = 240.0;     // adaptation increment

enum class SynClass : std::size_t { AMPA = 0, NMDA = 1, GabaA = 2, GabaB = 3 };
inline constexpr std::size_t kNumSynClasses = 4;

struct SynapseParams {
  SynClass cls = SynClass::AMPA;
  double i_tau_pA = 10.0;
  double i_gain_pA = 10.0;
  double c_syn_pF = 1.5;
  bool excitatory = true;

  static SynapseParams defaults(SynClass cls);
};

struct NeuronParams {
  double c_mem_pF = 2.0;
  double i_leak_pA = 5.0;
  double i_gain_pA = 5.0;
  double i_thr_pA = 2000.0;
  double i_reset_pA = 1.2;
  double i_const_pA = 1.0;
  double refractory_us = 3000.0;  // 3 ms (E); 1 ms for I and FF populations
  double adapt_i_tau_pA = 0.04;
  double adapt_gain = 1.5;
  double i_ahp_unit_pA = kDefaultAhpUnitPa;
  bool adapt_enabled = false;
};

struct NeuronState {
  double i_mem_pA = 0.0;
  double i_ahp_pA = 0.0;
  std::array<double, kNumSynClasses> i_syn_pA{};
  double refractory_until_us = -1.0;
};

// tau = C * U_T / (kappa * I_tau), returned in microseconds.
// Throws std::invalid_argument on non-positive inputs.
double time_constant_us(double i_tau_pA, double c_pF);

// One exponential-Euler step of a synaptic current: decay by exp(-dt/tau)
// then add n_spikes * weight * i_w_base * (i_gain / i_tau).
double step_synapse(double state_pA, const SynapseParams& params, double dt_us,
                    double n_spikes, double weight,
                    double i_w_base_pA = kDefaultWeightUnitPa);

// One step of the membrane and adaptation currents. Synaptic currents in
// `state` must already be updated for this step. Returns true iff the neuron
// fired.
bool step_neuron(NeuronState& state, const NeuronParams& params, double dt_us,
                 double t_now_us);

// Net input current: excitatory minus inhibitory synaptic drive plus constant
// injection minus adaptation, clamped at zero (DPI currents are
// unidirectional).
double input_current(const NeuronState& state, const NeuronParams& params);

}  // namespace emgsnn

#endif  // EMGSNN_DYNAMICS_HPP
