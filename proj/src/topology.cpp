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

#include "emgsnn/topology.hpp"

#include <stdexcept>

#include <nlohmann/json.hpp>

#include "emgsnn/rng.hpp"

namespace emgsnn {

const char* pop_name(Pop p) {
  switch (p) {
    case Pop::Input: return "input";
    case Pop::FF: return "ff";
    case Pop::Exc: return "exc";
    case Pop::Inh: return "inh";
  }
  return "?";
}

int Network::pop_size(Pop p) const {
  switch (p) {
    case Pop::Input: return config.n_input;
    case Pop::FF: return config.n_ff;
    case Pop::Exc: return config.n_exc;
    case Pop::Inh: return config.n_inh;
  }
  return 0;
}

const NeuronParams& Network::params_for(Pop p) const {
  switch (p) {
    case Pop::FF: return ff_params;
    case Pop::Inh: return inh_params;
    default: return exc_params;
  }
}

Network build_network(const NetworkConfig& config) {
  if (config.n_input <= 0 || config.n_ff <= 0 || config.n_exc <= 0 ||
      config.n_inh <= 0) {
    throw std::invalid_argument("build_network: population sizes must be > 0");
  }
  if (!config.w_inp_e.empty() &&
      config.w_inp_e.size() !=
          static_cast<std::size_t>(config.n_input * config.n_exc)) {
    throw std::invalid_argument("build_network: plastic matrix shape mismatch");
  }

  Network net;
  net.config = config;

  net.exc_params = NeuronParams{};
  net.exc_params.refractory_us = 3000.0;
  net.exc_params.adapt_enabled = config.adaptation;
  net.exc_params.i_ahp_unit_pA = config.i_ahp_unit_pA;

  net.ff_params = NeuronParams{};
  net.ff_params.refractory_us = 1000.0;
  net.inh_params = NeuronParams{};
  net.inh_params.refractory_us = 1000.0;

  for (std::size_t c = 0; c < kNumSynClasses; ++c) {
    net.syn_params[c] = SynapseParams::defaults(static_cast<SynClass>(c));
  }

  if (config.w_inp_e.empty()) {
    net.plastic.resize(static_cast<std::size_t>(config.n_input) *
                       config.n_exc);
    Rng rng(Rng::mix(config.seed, 0x9057a571cULL));
    for (auto& w : net.plastic) {
      w = rng.uniform(config.w_init_lo, config.w_init_hi);
    }
  } else {
    net.plastic = config.w_inp_e;
  }

  auto& e = net.edges;
  // Inp->FF one-to-one, AMPA.
  for (int i = 0; i < config.n_input && i < config.n_ff; ++i) {
    e.push_back({Pop::Input, i, Pop::FF, i, config.w_inp_ff, SynClass::AMPA,
                 false});
  }
  // Inp->E all-to-all, NMDA, plastic.
  for (int i = 0; i < config.n_input; ++i) {
    for (int j = 0; j < config.n_exc; ++j) {
      e.push_back({Pop::Input, i, Pop::Exc, j, 0.0, SynClass::NMDA, true});
    }
  }
  if (config.ff_inhibition) {
    // FF->E all-to-all, GABA-A.
    for (int i = 0; i < config.n_ff; ++i) {
      for (int j = 0; j < config.n_exc; ++j) {
        e.push_back({Pop::FF, i, Pop::Exc, j, config.w_ff_e, SynClass::GabaA,
                     false});
      }
    }
  }
  if (config.ei_balance) {
    for (int i = 0; i < config.n_exc; ++i) {
      for (int j = 0; j < config.n_inh; ++j) {
        e.push_back({Pop::Exc, i, Pop::Inh, j, config.w_e_i, SynClass::AMPA,
                     false});
      }
    }
    for (int i = 0; i < config.n_inh; ++i) {
      for (int j = 0; j < config.n_exc; ++j) {
        e.push_back({Pop::Inh, i, Pop::Exc, j, config.w_i_e, SynClass::GabaB,
                     false});
      }
    }
    for (int i = 0; i < config.n_inh; ++i) {
      for (int j = 0; j < config.n_inh; ++j) {
        if (i == j) continue;  // no recurrent self-inhibition
        e.push_back({Pop::Inh, i, Pop::Inh, j, config.w_i_i, SynClass::GabaA,
                     false});
      }
    }
  }
  return net;
}

std::vector<NoiseSource> attach_noise(const NetworkConfig& config) {
  if (config.noise_rate_hz < 0.0) {
    throw std::invalid_argument("attach_noise: negative rate");
  }
  std::vector<NoiseSource> sources;
  std::uint64_t stream = 0;
  for (Pop pop : {Pop::FF, Pop::Exc, Pop::Inh}) {
    const int n = pop == Pop::FF    ? config.n_ff
                  : pop == Pop::Exc ? config.n_exc
                                    : config.n_inh;
    for (int i = 0; i < n; ++i) {
      sources.push_back({pop, i, SynClass::AMPA, stream++});
      sources.push_back({pop, i, SynClass::GabaB, stream++});
    }
  }
  return sources;
}

nlohmann::json config_to_json(const NetworkConfig& c) {
  return nlohmann::json{
      {"n_input", c.n_input},
      {"n_ff", c.n_ff},
      {"n_exc", c.n_exc},
      {"n_inh", c.n_inh},
      {"w_inp_ff", c.w_inp_ff},
      {"w_ff_e", c.w_ff_e},
      {"w_i_e", c.w_i_e},
      {"w_e_i", c.w_e_i},
      {"w_i_i", c.w_i_i},
      {"w_inp_e", c.w_inp_e},
      {"w_max", c.w_max},
      {"w_init_lo", c.w_init_lo},
      {"w_init_hi", c.w_init_hi},
      {"adaptation", c.adaptation},
      {"ei_balance", c.ei_balance},
      {"ff_inhibition", c.ff_inhibition},
      {"noise_rate_hz", c.noise_rate_hz},
      {"noise_weight", c.noise_weight},
      {"i_w_base_pA", c.i_w_base_pA},
      {"i_ahp_unit_pA", c.i_ahp_unit_pA},
      {"seed", c.seed},
  };
}

NetworkConfig config_from_json(const nlohmann::json& j) {
  NetworkConfig c;
  c.n_input = j.value("n_input", c.n_input);
  c.n_ff = j.value("n_ff", c.n_ff);
  c.n_exc = j.value("n_exc", c.n_exc);
  c.n_inh = j.value("n_inh", c.n_inh);
  c.w_inp_ff = j.value("w_inp_ff", c.w_inp_ff);
  c.w_ff_e = j.value("w_ff_e", c.w_ff_e);
  c.w_i_e = j.value("w_i_e", c.w_i_e);
  c.w_e_i = j.value("w_e_i", c.w_e_i);
  c.w_i_i = j.value("w_i_i", c.w_i_i);
  c.w_inp_e = j.value("w_inp_e", c.w_inp_e);
  c.w_max = j.value("w_max", c.w_max);
  c.w_init_lo = j.value("w_init_lo", c.w_init_lo);
  c.w_init_hi = j.value("w_init_hi", c.w_init_hi);
  c.adaptation = j.value("adaptation", c.adaptation);
  c.ei_balance = j.value("ei_balance", c.ei_balance);
  c.ff_inhibition = j.value("ff_inhibition", c.ff_inhibition);
  c.noise_rate_hz = j.value("noise_rate_hz", c.noise_rate_hz);
  c.noise_weight = j.value("noise_weight", c.noise_weight);
  c.i_w_base_pA = j.value("i_w_base_pA", c.i_w_base_pA);
  c.i_ahp_unit_pA = j.value("i_ahp_unit_pA", c.i_ahp_unit_pA);
  c.seed = j.value("seed", c.seed);
  return c;
}

}  // namespace emgsnn
