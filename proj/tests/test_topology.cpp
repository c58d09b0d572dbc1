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

#include <nlohmann/json.hpp>

#include "emgsnn/topology.hpp"

using namespace emgsnn;

namespace {

std::size_t expected_edges(bool adapt, bool ei, bool ff) {
  (void)adapt;  // adaptation adds no edges
  std::size_t n = 16 + 128;  // Inp->FF one-to-one + Inp->E all-to-all
  if (ff) n += 128;          // FF->E
  if (ei) n += 32 + 32 + 12; // E->I, I->E, I->I minus self
  return n;
}

}  // namespace

TEST_CASE("edge counts match closed form for all 8 flag combinations") {
  for (int mask = 0; mask < 8; ++mask) {
    NetworkConfig cfg;
    cfg.adaptation = mask & 1;
    cfg.ei_balance = mask & 2;
    cfg.ff_inhibition = mask & 4;
    const Network net = build_network(cfg);
    CHECK(net.edges.size() ==
          expected_edges(cfg.adaptation, cfg.ei_balance, cfg.ff_inhibition));
  }
  CHECK(expected_edges(true, true, true) == 348);
  CHECK(expected_edges(false, false, false) == 144);
  CHECK(expected_edges(false, true, false) == 220);
}

TEST_CASE("synapse class assignment per projection") {
  NetworkConfig cfg;
  cfg.adaptation = cfg.ei_balance = cfg.ff_inhibition = true;
  const Network net = build_network(cfg);
  for (const Edge& e : net.edges) {
    const bool inhibitory_pre =
        e.pre_pop == Pop::FF || e.pre_pop == Pop::Inh;
    const bool gaba =
        e.cls == SynClass::GabaA || e.cls == SynClass::GabaB;
    CHECK(inhibitory_pre == gaba);

    if (e.pre_pop == Pop::Input && e.post_pop == Pop::Exc) {
      CHECK(e.cls == SynClass::NMDA);
      CHECK(e.plastic);
    }
    if (e.pre_pop == Pop::Input && e.post_pop == Pop::FF) {
      CHECK(e.cls == SynClass::AMPA);
      CHECK(e.weight == 0.5);
    }
    if (e.pre_pop == Pop::FF) {
      CHECK(e.cls == SynClass::GabaA);
      CHECK(e.weight == 3.8);
    }
    if (e.pre_pop == Pop::Exc && e.post_pop == Pop::Inh) {
      CHECK(e.cls == SynClass::AMPA);
      CHECK(e.weight == 1.7);
    }
    if (e.pre_pop == Pop::Inh && e.post_pop == Pop::Exc) {
      CHECK(e.cls == SynClass::GabaB);
      CHECK(e.weight == 3.0);
    }
    if (e.pre_pop == Pop::Inh && e.post_pop == Pop::Inh) {
      CHECK(e.cls == SynClass::GabaA);
      CHECK(e.weight == 0.5);
      CHECK(e.pre != e.post);
    }
  }
}

TEST_CASE("plastic edges are exactly the Inp->E set") {
  NetworkConfig cfg;
  cfg.ei_balance = cfg.ff_inhibition = true;
  const Network net = build_network(cfg);
  std::size_t plastic = 0;
  for (const Edge& e : net.edges) {
    if (e.plastic) {
      ++plastic;
      CHECK(e.pre_pop == Pop::Input);
      CHECK(e.post_pop == Pop::Exc);
    }
  }
  CHECK(plastic == 128);
  CHECK(net.plastic.size() == 128);
  for (double w : net.plastic) {
    CHECK(w >= cfg.w_init_lo);
    CHECK(w <= cfg.w_init_hi);
  }
}

TEST_CASE("population neuron parameters follow the flags and table") {
  NetworkConfig cfg;
  cfg.adaptation = true;
  const Network net = build_network(cfg);
  CHECK(net.exc_params.refractory_us == 3000.0);
  CHECK(net.ff_params.refractory_us == 1000.0);
  CHECK(net.inh_params.refractory_us == 1000.0);
  CHECK(net.exc_params.adapt_enabled);
  CHECK_FALSE(build_network(NetworkConfig{}).exc_params.adapt_enabled);
}

TEST_CASE("attach_noise: two sources per FF/E/I neuron") {
  NetworkConfig cfg;
  const auto sources = attach_noise(cfg);
  CHECK(sources.size() == 2 * (16 + 8 + 4));
  std::size_t ampa = 0, gabab = 0;
  for (const auto& s : sources) {
    if (s.cls == SynClass::AMPA) ++ampa;
    if (s.cls == SynClass::GabaB) ++gabab;
    CHECK(s.pop != Pop::Input);
  }
  CHECK(ampa == 28);
  CHECK(gabab == 28);
}

TEST_CASE("plastic matrix shape mismatch rejected") {
  NetworkConfig cfg;
  cfg.w_inp_e.assign(100, 0.5);  // should be 128
  CHECK_THROWS(build_network(cfg));
}

TEST_CASE("config JSON round trip") {
  NetworkConfig cfg;
  cfg.ff_inhibition = true;
  cfg.noise_rate_hz = 55.0;
  cfg.i_w_base_pA = 120.0;
  cfg.seed = 77;
  cfg.w_inp_e.assign(128, 0.42);
  const NetworkConfig back = config_from_json(config_to_json(cfg));
  CHECK(back.ff_inhibition == cfg.ff_inhibition);
  CHECK(back.noise_rate_hz == cfg.noise_rate_hz);
  CHECK(back.i_w_base_pA == cfg.i_w_base_pA);
  CHECK(back.seed == cfg.seed);
  CHECK(back.w_inp_e == cfg.w_inp_e);
  CHECK(build_network(back).edges.size() == build_network(cfg).edges.size());
}

TEST_CASE("seeded initial weights are reproducible") {
  NetworkConfig cfg;
  cfg.seed = 5;
  CHECK(build_network(cfg).plastic == build_network(cfg).plastic);
  NetworkConfig other = cfg;
  other.seed = 6;
  CHECK(build_network(cfg).plastic != build_network(other).plastic);
}
