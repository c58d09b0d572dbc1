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

#include "emgsnn/engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace emgsnn {

const SpikeTrain& SimulationResult::population(Pop p) const {
  switch (p) {
    case Pop::Input: return input;
    case Pop::FF: return ff;
    case Pop::Exc: return exc;
    case Pop::Inh: return inh;
  }
  return input;
}

namespace {
SpikeTrain make_pop_train(const char* prefix, int n, double duration_us) {
  SpikeTrain t;
  t.duration_us = duration_us;
  t.channels.reserve(n);
  for (int i = 0; i < n; ++i) {
    t.channels.push_back(std::string(prefix) + std::to_string(i));
  }
  return t;
}
}  // namespace

Simulator::Simulator(const Network& net, const SpikeTrain& inputs,
                     double duration_us, double dt_us, std::uint64_t seed,
                     std::vector<Probe> probes)
    : net_(net), dt_us_(dt_us), seed_(seed), probes_(std::move(probes)) {
  if (dt_us <= 0.0 || duration_us <= 0.0) {
    throw std::invalid_argument("Simulator: dt and duration must be > 0");
  }
  if (static_cast<int>(inputs.channels.size()) != net.config.n_input) {
    throw std::invalid_argument("Simulator: input channel count mismatch");
  }
  n_steps_ = static_cast<std::int64_t>(std::llround(duration_us / dt_us));

  const auto& c = net.config;
  off_ff_ = c.n_input;
  off_exc_ = off_ff_ + c.n_ff;
  off_inh_ = off_exc_ + c.n_exc;
  n_total_ = off_inh_ + c.n_inh;

  states_.resize(n_total_);
  prev_fired_.assign(n_total_, 0.0);
  ext_prev_.assign(static_cast<std::size_t>(n_total_) * kNumSynClasses, 0.0);
  plastic_ = net.plastic;

  input_events_ = inputs.events;
  std::stable_sort(input_events_.begin(), input_events_.end(),
                   [](const SpikeEvent& a, const SpikeEvent& b) {
                     return a.t_us < b.t_us;
                   });

  for (const NoiseSource& src : attach_noise(c)) {
    const int base = src.pop == Pop::FF    ? off_ff_
                     : src.pop == Pop::Exc ? off_exc_
                                           : off_inh_;
    NoiseState ns{base + src.neuron, static_cast<std::size_t>(src.cls), 0.0,
                  Rng(Rng::mix(seed, src.stream))};
    if (c.noise_rate_hz > 0.0) {
      ns.next_t_us = ns.rng.exponential(c.noise_rate_hz) * 1e6;
    } else {
      ns.next_t_us = std::numeric_limits<double>::infinity();
    }
    noise_.push_back(std::move(ns));
  }

  cur_input_counts_.assign(c.n_input, 0);
  cur_exc_counts_.assign(c.n_exc, 0);

  result_.input = make_pop_train("in", c.n_input, duration_us);
  result_.ff = make_pop_train("ff", c.n_ff, duration_us);
  result_.exc = make_pop_train("e", c.n_exc, duration_us);
  result_.inh = make_pop_train("i", c.n_inh, duration_us);
  result_.duration_us = duration_us;
  result_.dt_us = dt_us;
}

void Simulator::step() {
  if (done()) return;
  const auto& c = net_.config;
  const double t_now = t_now_us();
  const double t_end = t_now + dt_us_;

  // (1) Bin this step's external events (input relays + noise).
  std::fill(cur_input_counts_.begin(), cur_input_counts_.end(), 0);
  while (input_cursor_ < input_events_.size() &&
         input_events_[input_cursor_].t_us < t_end) {
    const auto& e = input_events_[input_cursor_++];
    if (e.channel < cur_input_counts_.size()) ++cur_input_counts_[e.channel];
  }

  std::vector<double> ext_cur(ext_prev_.size(), 0.0);
  if (c.noise_rate_hz > 0.0) {
    for (auto& ns : noise_) {
      while (ns.next_t_us < t_end) {
        ext_cur[static_cast<std::size_t>(ns.neuron_global) * kNumSynClasses +
                ns.cls] += c.noise_weight;
        ns.next_t_us += ns.rng.exponential(c.noise_rate_hz) * 1e6;
      }
    }
  }

  // (2) Synaptic drive from spikes emitted at the previous step.
  std::vector<double> drive = ext_prev_;
  for (const Edge& e : net_.edges) {
    const int pre = (e.pre_pop == Pop::Input  ? 0
                     : e.pre_pop == Pop::FF   ? off_ff_
                     : e.pre_pop == Pop::Exc  ? off_exc_
                                              : off_inh_) +
                    e.pre;
    const double n = prev_fired_[pre];
    if (n == 0.0) continue;
    const int post = (e.post_pop == Pop::FF    ? off_ff_
                      : e.post_pop == Pop::Exc ? off_exc_
                                               : off_inh_) +
                     e.post;
    const double w =
        e.plastic ? plastic_[static_cast<std::size_t>(e.pre) * c.n_exc + e.post]
                  : e.weight;
    drive[static_cast<std::size_t>(post) * kNumSynClasses +
          static_cast<std::size_t>(e.cls)] += n * w;
  }

  // (3) Update synapse and neuron states; collect fired neurons.
  std::fill(cur_exc_counts_.begin(), cur_exc_counts_.end(), 0);
  std::vector<double> fired(n_total_, 0.0);
  for (int g = off_ff_; g < n_total_; ++g) {
    NeuronState& s = states_[g];
    for (std::size_t cls = 0; cls < kNumSynClasses; ++cls) {
      s.i_syn_pA[cls] = step_synapse(
          s.i_syn_pA[cls], net_.syn_params[cls], dt_us_,
          drive[static_cast<std::size_t>(g) * kNumSynClasses + cls], 1.0,
          c.i_w_base_pA);
    }
    const Pop pop = g < off_exc_ ? Pop::FF : g < off_inh_ ? Pop::Exc : Pop::Inh;
    if (step_neuron(s, net_.params_for(pop), dt_us_, t_now)) {
      fired[g] = 1.0;
      const int local = g - (pop == Pop::FF    ? off_ff_
                             : pop == Pop::Exc ? off_exc_
                                               : off_inh_);
      SpikeTrain& train = pop == Pop::FF    ? result_.ff
                          : pop == Pop::Exc ? result_.exc
                                            : result_.inh;
      train.events.push_back({t_now, static_cast<std::uint32_t>(local)});
      if (pop == Pop::Exc) ++cur_exc_counts_[local];
    }
  }

  // Input relays: one output spike per binned input event.
  for (int i = 0; i < c.n_input; ++i) {
    const int n = cur_input_counts_[i];
    fired[i] = static_cast<double>(n);
    for (int k = 0; k < n; ++k) {
      result_.input.events.push_back({t_now, static_cast<std::uint32_t>(i)});
    }
  }

  for (std::size_t p = 0; p < probes_.size(); ++p) {
    const Probe& pr = probes_[p];
    const int base = pr.pop == Pop::FF    ? off_ff_
                     : pr.pop == Pop::Exc ? off_exc_
                                          : off_inh_;
    const NeuronState& s = states_[base + pr.neuron];
    result_.traces.push_back(
        {t_now, static_cast<int>(p), s.i_mem_pA, s.i_ahp_pA});
  }

  // (4) Spikes from this step are delivered at the next one.
  prev_fired_ = std::move(fired);
  ext_prev_ = std::move(ext_cur);
  ++step_;
}

void Simulator::run_to_end() {
  while (!done()) step();
}

SimulationResult Simulator::take_result() { return std::move(result_); }

SimulationResult run(const Network& net, const SpikeTrain& inputs,
                     double duration_us, double dt_us, std::uint64_t seed,
                     std::vector<Probe> probes) {
  Simulator sim(net, inputs, duration_us, dt_us, seed, std::move(probes));
  sim.run_to_end();
  return sim.take_result();
}

std::vector<double> mean_rate(const SpikeTrain& train, int n_neurons,
                              double t0_us, double t1_us) {
  if (t1_us <= t0_us) {
    throw std::invalid_argument("mean_rate: empty window");
  }
  std::vector<double> rates(n_neurons, 0.0);
  for (const auto& e : train.events) {
    if (e.t_us >= t0_us && e.t_us < t1_us &&
        e.channel < static_cast<std::uint32_t>(n_neurons)) {
      rates[e.channel] += 1.0;
    }
  }
  const double window_s = (t1_us - t0_us) * 1e-6;
  for (auto& r : rates) r /= window_s;
  return rates;
}

double min_isi_us(const SpikeTrain& train, std::uint32_t channel) {
  double last = -1.0;
  double best = std::numeric_limits<double>::infinity();
  for (const auto& e : train.events) {
    if (e.channel != channel) continue;
    if (last >= 0.0) best = std::min(best, e.t_us - last);
    last = e.t_us;
  }
  return best;
}

}  // namespace emgsnn
