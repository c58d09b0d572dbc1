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

#include "emgsnn/dynamics.hpp"

#include <cmath>
#include <stdexcept>

namespace emgsnn {

SynapseParams SynapseParams::defaults(SynClass cls) {
  SynapseParams p;
  p.cls = cls;
  switch (cls) {
    case SynClass::AMPA:
      p.i_tau_pA = 10.0;
      p.excitatory = true;
      break;
    case SynClass::NMDA:
      p.i_tau_pA = 5.0;
      p.excitatory = true;
      break;
    case SynClass::GabaA:
      p.i_tau_pA = 10.0;
      p.excitatory = false;
      break;
    case SynClass::GabaB:
      p.i_tau_pA = 10.0;
      p.excitatory = false;
      break;
  }
  p.i_gain_pA = p.i_tau_pA;  // unity gain ratio unless overridden
  return p;
}

double time_constant_us(double i_tau_pA, double c_pF) {
  if (i_tau_pA <= 0.0 || c_pF <= 0.0) {
    throw std::invalid_argument("time_constant: inputs must be positive");
  }
  // pF * V / pA = seconds; convert to microseconds.
  return c_pF * kThermalVoltage / (kKappa * i_tau_pA) * 1e6;
}

double step_synapse(double state_pA, const SynapseParams& params, double dt_us,
                    double n_spikes, double weight, double i_w_base_pA) {
  if (dt_us <= 0.0) {
    throw std::invalid_argument("step_synapse: dt must be positive");
  }
  if (n_spikes < 0.0 || weight < 0.0) {
    throw std::invalid_argument("step_synapse: spikes and weight must be >= 0");
  }
  const double tau_us = time_constant_us(params.i_tau_pA, params.c_syn_pF);
  double s = state_pA * std::exp(-dt_us / tau_us);
  s += n_spikes * weight * i_w_base_pA * (params.i_gain_pA / params.i_tau_pA);
  return s;
}

double input_current(const NeuronState& state, const NeuronParams& params) {
  const double i_in =
      state.i_syn_pA[static_cast<std::size_t>(SynClass::AMPA)] +
      state.i_syn_pA[static_cast<std::size_t>(SynClass::NMDA)] -
      state.i_syn_pA[static_cast<std::size_t>(SynClass::GabaA)] -
      state.i_syn_pA[static_cast<std::size_t>(SynClass::GabaB)] +
      params.i_const_pA - state.i_ahp_pA;
  return i_in > 0.0 ? i_in : 0.0;
}

bool step_neuron(NeuronState& state, const NeuronParams& params, double dt_us,
                 double t_now_us) {
  if (dt_us <= 0.0) {
    throw std::invalid_argument("step_neuron: dt must be positive");
  }
  // Adaptation current decays regardless of refractory state.
  const double tau_ahp_us =
      time_constant_us(params.adapt_i_tau_pA, params.c_mem_pF);
  state.i_ahp_pA *= std::exp(-dt_us / tau_ahp_us);

  if (t_now_us < state.refractory_until_us) {
    state.i_mem_pA = params.i_reset_pA;
    return false;
  }

  const double i_in = input_current(state, params);
  const double target = (params.i_gain_pA / params.i_leak_pA) * i_in;
  const double tau_mem_us =
      time_constant_us(params.i_leak_pA, params.c_mem_pF);
  state.i_mem_pA =
      target + (state.i_mem_pA - target) * std::exp(-dt_us / tau_mem_us);

  if (state.i_mem_pA >= params.i_thr_pA) {
    state.i_mem_pA = params.i_reset_pA;
    state.refractory_until_us = t_now_us + params.refractory_us;
    if (params.adapt_enabled) {
      state.i_ahp_pA += params.adapt_gain * params.i_ahp_unit_pA;
    }
    return true;
  }
  return false;
}

}  // namespace emgsnn
