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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "emgsnn/encoders.hpp"
#include "emgsnn/engine.hpp"
#include "emgsnn/rng.hpp"

using namespace emgsnn;

namespace {

SpikeTrain empty_inputs(double duration_us) {
  SpikeTrain t;
  t.duration_us = duration_us;
  for (int i = 0; i < 16; ++i) t.channels.push_back("in" + std::to_string(i));
  return t;
}

SpikeTrain poisson_inputs(double rate_hz, double duration_us,
                          std::uint64_t seed) {
  SpikeTrain inputs = empty_inputs(duration_us);
  for (int ch = 0; ch < 16; ++ch) {
    const auto t = poisson_train(rate_hz, duration_us, Rng::mix(seed, ch));
    for (const auto& e : t.events) {
      inputs.events.push_back({e.t_us, static_cast<std::uint32_t>(ch)});
    }
  }
  std::stable_sort(inputs.events.begin(), inputs.events.end(),
                   [](const SpikeEvent& a, const SpikeEvent& b) {
                     return a.t_us < b.t_us;
                   });
  return inputs;
}

}  // namespace

TEST_CASE("no input, no noise: network is silent") {
  NetworkConfig cfg;
  cfg.adaptation = cfg.ei_balance = cfg.ff_inhibition = true;
  cfg.noise_rate_hz = 0.0;
  const Network net = build_network(cfg);
  const auto result = run(net, empty_inputs(5e5), 5e5, 100.0, 1);
  CHECK(result.input.events.empty());
  CHECK(result.ff.events.empty());
  CHECK(result.exc.events.empty());
  CHECK(result.inh.events.empty());
}

TEST_CASE("single input spike reaches the paired FF synapse one step later") {
  NetworkConfig cfg;
  cfg.noise_rate_hz = 0.0;
  const Network net = build_network(cfg);
  SpikeTrain inputs = empty_inputs(2000.0);
  inputs.events.push_back({250.0, 3});  // lands in step 2

  Simulator sim(net, inputs, 2000.0, 100.0, 1,
                {{Pop::FF, 3}, {Pop::FF, 4}});
  sim.run_to_end();
  const auto result = sim.take_result();

  REQUIRE(result.input.events.size() == 1);
  CHECK(result.input.events[0].t_us == 200.0);  // binned onto the grid

  // The probed FF neuron's membrane moves only after the delivery step; its
  // unpaired neighbor never moves (one-to-one Inp->FF).
  double first_active_t = -1.0;
  for (const auto& p : result.traces) {
    if (p.probe == 0 && p.i_mem_pA > 1.001 && first_active_t < 0.0) {
      first_active_t = p.t_us;
    }
    if (p.probe == 1) {
      CHECK(p.i_mem_pA <= 1.001);  // only i_const drives it
    }
  }
  CHECK(first_active_t >= 300.0);
}

TEST_CASE("identical network, inputs and seed give bit-identical results") {
  NetworkConfig cfg;
  cfg.adaptation = cfg.ei_balance = cfg.ff_inhibition = true;
  cfg.i_w_base_pA = 150.0;
  const Network net = build_network(cfg);
  const auto inputs = poisson_inputs(2000.0, 5e5, 9);
  const std::vector<Probe> probes{{Pop::FF, 0}};
  const auto a = run(net, inputs, 5e5, 100.0, 42, probes);
  const auto b = run(net, inputs, 5e5, 100.0, 42, probes);
  CHECK(a.input == b.input);
  CHECK(a.ff == b.ff);
  CHECK(a.exc == b.exc);
  CHECK(a.inh == b.inh);

  // A different seed draws a different noise realization. Spikes may or may
  // not move (the grid quantizes them) but the probed membrane must.
  const auto c = run(net, inputs, 5e5, 100.0, 43, probes);
  REQUIRE(a.traces.size() == c.traces.size());
  bool differs = false;
  for (std::size_t i = 0; i < a.traces.size(); ++i) {
    if (a.traces[i].i_mem_pA != c.traces[i].i_mem_pA) {
      differs = true;
      break;
    }
  }
  CHECK(differs);
}

TEST_CASE("recorded output never violates refractory") {
  NetworkConfig cfg;
  cfg.adaptation = cfg.ei_balance = cfg.ff_inhibition = true;
  cfg.i_w_base_pA = 150.0;
  const Network net = build_network(cfg);
  const auto inputs = poisson_inputs(6000.0, 1e6, 4);
  const auto result = run(net, inputs, 1e6, 100.0, 4);
  REQUIRE(!result.exc.events.empty());
  for (int n = 0; n < cfg.n_exc; ++n) {
    CHECK(min_isi_us(result.exc, n) >= net.exc_params.refractory_us);
  }
  for (int n = 0; n < cfg.n_ff; ++n) {
    CHECK(min_isi_us(result.ff, n) >= net.ff_params.refractory_us);
  }
  for (int n = 0; n < cfg.n_inh; ++n) {
    CHECK(min_isi_us(result.inh, n) >= net.inh_params.refractory_us);
  }
}

TEST_CASE("input channel count mismatch is a shape error") {
  const Network net = build_network(NetworkConfig{});
  SpikeTrain bad;
  bad.duration_us = 1000.0;
  bad.channels = {"only_one"};
  CHECK_THROWS(run(net, bad, 1000.0, 100.0, 1));
}

TEST_CASE("mean_rate arithmetic") {
  SpikeTrain t;
  t.channels = {"a", "b"};
  t.duration_us = 1e6;
  for (int i = 0; i < 10; ++i) t.events.push_back({i * 1e5, 0});
  CHECK(mean_rate(t, 2, 0.0, 1e6)[0] == doctest::Approx(10.0));
  CHECK(mean_rate(t, 2, 0.0, 1e6)[1] == 0.0);
  // Half window: events in [0, 5e5) are the first five.
  CHECK(mean_rate(t, 2, 0.0, 5e5)[0] == doctest::Approx(10.0));
  CHECK_THROWS(mean_rate(t, 2, 1e6, 1e6));
}

TEST_CASE("grid refinement: halving dt moves E spike count < 5%") {
  NetworkConfig cfg;
  cfg.adaptation = cfg.ei_balance = cfg.ff_inhibition = true;
  cfg.i_w_base_pA = 150.0;
  cfg.noise_rate_hz = 0.0;  // isolate integration error from noise binning
  const Network net = build_network(cfg);
  const auto inputs = poisson_inputs(4000.0, 1e6, 17);
  const auto coarse = run(net, inputs, 1e6, 100.0, 17);
  const auto fine = run(net, inputs, 1e6, 50.0, 17);
  const double nc = static_cast<double>(coarse.exc.events.size());
  const double nf = static_cast<double>(fine.exc.events.size());
  REQUIRE(nc > 50);
  CHECK(std::fabs(nc - nf) / nc <= 0.05);
}
