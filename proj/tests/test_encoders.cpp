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
#include <vector>

#include "emgsnn/encoders.hpp"
#include "emgsnn/rng.hpp"

using namespace emgsnn;

namespace {

// Independent brute-force reference encoder: materialize the interpolated
// sequence, then walk it with the threshold/reference rule.
std::pair<int, int> reference_adm_counts(const std::vector<double>& samples,
                                         double fs, const AdmParams& p) {
  std::vector<double> grid;
  for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
    for (int k = 0; k < p.interpolation_factor; ++k) {
      const double frac =
          static_cast<double>(k) / p.interpolation_factor;
      grid.push_back(samples[i] + frac * (samples[i + 1] - samples[i]));
    }
  }
  grid.push_back(samples.back());
  const double dt_us = 1e6 / (fs * p.interpolation_factor);
  double ref = grid[0];
  double blocked_until = -1e300;
  int up = 0, down = 0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double t = k * dt_us;
    if (t < blocked_until) continue;
    if (grid[k] - ref >= p.threshold) {
      ++up;
      ref += p.threshold;
      blocked_until = t + p.refractory_us;
    } else if (ref - grid[k] >= p.threshold) {
      ++down;
      ref -= p.threshold;
      blocked_until = t + p.refractory_us;
    }
  }
  return {up, down};
}

std::vector<double> random_bandlimited(Rng& rng, int n, double scale) {
  // Sum of a few random sinusoids: bounded and smooth.
  std::vector<double> s(n, 0.0);
  for (int h = 0; h < 4; ++h) {
    const double freq = rng.uniform(0.5, 20.0);
    const double phase = rng.uniform(0.0, 2.0 * M_PI);
    const double amp = scale * rng.uniform(0.2, 1.0);
    for (int i = 0; i < n; ++i) {
      s[i] += amp * std::sin(2.0 * M_PI * freq * i / 200.0 + phase);
    }
  }
  return s;
}

}  // namespace

TEST_CASE("adm: constant signal emits nothing") {
  std::vector<double> flat(100, 3.7);
  const auto train = adm_encode(flat, 200.0, AdmParams{0.5, 0.0, 10});
  CHECK(train.events.empty());
}

TEST_CASE("adm: linear ramp crossing 3 thresholds gives exactly 3 UP") {
  // Ramp rises by exactly 3.0 * threshold across the window.
  const double thr = 0.5;
  std::vector<double> ramp(101);
  for (int i = 0; i <= 100; ++i) ramp[i] = 3.0 * thr * i / 100.0;
  const auto train = adm_encode(ramp, 200.0, AdmParams{thr, 0.0, 20});
  CHECK(train.count_on(kAdmUp) == 3);
  CHECK(train.count_on(kAdmDown) == 0);
}

TEST_CASE("adm: sine counts match the brute-force reference") {
  AdmParams p{0.25, 0.0, 100};
  std::vector<double> sine(201);
  for (int i = 0; i <= 200; ++i) {
    sine[i] = std::sin(2.0 * M_PI * i / 200.0);  // 1 Hz at 200 Hz sampling
  }
  const auto [up_ref, down_ref] = reference_adm_counts(sine, 200.0, p);
  const auto train = adm_encode(sine, 200.0, p);
  CHECK(static_cast<int>(train.count_on(kAdmUp)) == up_ref);
  CHECK(static_cast<int>(train.count_on(kAdmDown)) == down_ref);
  // Symmetric travel up and down over a full period.
  CHECK(std::abs(up_ref - down_ref) <= 1);
}

TEST_CASE("adm: empty signal is a domain error") {
  CHECK_THROWS(adm_encode(std::vector<double>{}, 200.0, AdmParams{}));
}

TEST_CASE("adm reconstruct: no spikes gives a constant at initial") {
  SpikeTrain empty;
  empty.channels = {"UP", "DOWN"};
  empty.duration_us = 1e5;
  AdmParams p{0.5, 0.0, 10};
  const auto rec = adm_reconstruct(empty, p, 2.5, 200.0);
  for (double v : rec.samples[0]) CHECK(v == 2.5);
}

TEST_CASE("adm reconstruct: 3 up then 3 down returns to initial") {
  SpikeTrain t;
  t.channels = {"UP", "DOWN"};
  t.duration_us = 6000.0;
  for (int i = 0; i < 3; ++i) t.events.push_back({i * 500.0, kAdmUp});
  for (int i = 3; i < 6; ++i) t.events.push_back({i * 500.0, kAdmDown});
  AdmParams p{0.5, 0.0, 5};
  const auto rec = adm_reconstruct(t, p, 1.0, 200.0);
  CHECK(rec.samples[0].back() == doctest::Approx(1.0));
}

TEST_CASE("adm: encode-reconstruct error bounded by threshold") {
  Rng rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    AdmParams p{rng.uniform(0.1, 0.6), 0.0, 50};
    const auto sig = random_bandlimited(rng, 200, 1.0);
    const auto spikes = adm_encode(sig, 200.0, p);
    const auto rec = adm_reconstruct(spikes, p, sig[0], 200.0);
    const auto& y = rec.samples[0];
    // Compare on the interpolated grid (zero refractory: every point
    // visited).
    for (std::size_t k = 0; k < y.size(); ++k) {
      const std::size_t i = k / 50;
      const double frac = static_cast<double>(k % 50) / 50.0;
      const double v = i + 1 < sig.size()
                           ? sig[i] + frac * (sig[i + 1] - sig[i])
                           : sig.back();
      CHECK(std::fabs(v - y[k]) <= p.threshold * (1.0 + 1e-9));
    }
  }
}

TEST_CASE("adm: joint scale invariance of signal and threshold") {
  Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const double factor = rng.uniform(0.25, 8.0);
    AdmParams p{0.3, 20.0, 40};
    auto sig = random_bandlimited(rng, 150, 1.0);
    const auto base = adm_encode(sig, 200.0, p);
    for (auto& v : sig) v *= factor;
    AdmParams scaled = p;
    scaled.threshold *= factor;
    const auto same = adm_encode(sig, 200.0, scaled);
    CHECK(base.events == same.events);
  }
}

TEST_CASE("adm: refractory separates all events jointly") {
  Rng rng(9);
  AdmParams p{0.1, 300.0, 50};
  const auto sig = random_bandlimited(rng, 200, 2.0);
  const auto spikes = adm_encode(sig, 200.0, p);
  REQUIRE(spikes.events.size() > 2);
  for (std::size_t i = 1; i < spikes.events.size(); ++i) {
    CHECK(spikes.events[i].t_us - spikes.events[i - 1].t_us >=
          p.refractory_us);
  }
}

TEST_CASE("adm grid search: single candidate and threshold preference") {
  Rng rng(3);
  const auto sig = random_bandlimited(rng, 200, 2.0);
  std::vector<double> one_thr{0.4};
  std::vector<double> refr{0.0};
  std::vector<int> interp{30};
  auto best = adm_grid_search(sig, 200.0, one_thr, refr, interp);
  CHECK(best.threshold == 0.4);

  // With excursions far above both thresholds the smaller one tracks better.
  std::vector<double> thrs{0.4, 0.8};
  best = adm_grid_search(sig, 200.0, thrs, refr, interp);
  CHECK(best.threshold == 0.4);
}

TEST_CASE("adm grid search: tie broken by fewer spikes") {
  // A constant signal yields RMSE 0 and 0 spikes for every threshold; the
  // tie-break then keeps the first candidate. A ramp with larger thresholds
  // than its travel also produces no spikes; construct an exact tie with
  // different spike counts via refractory candidates on a step signal.
  std::vector<double> flat(50, 1.0);
  std::vector<double> thrs{0.5, 0.9};
  std::vector<double> refr{0.0};
  std::vector<int> interp{10};
  const auto best = adm_grid_search(flat, 200.0, thrs, refr, interp);
  CHECK(best.threshold == 0.5);  // identical RMSE and counts: list order
}

TEST_CASE("pfm calibrate: constant amplitude maps to itself") {
  AnalogRecording rec;
  rec.sample_rate_hz = 200.0;
  rec.channels = {"a"};
  // A 25 Hz tone inside band 0; rectified filtered amplitude approaches the
  // tone amplitude once the filter settles.
  std::vector<double> tone(2000);
  for (int i = 0; i < 2000; ++i) {
    tone[i] = 2.0 * std::sin(2.0 * M_PI * 25.0 * i / 200.0);
  }
  rec.samples.push_back(tone);
  const auto p = pfm_calibrate(rec, PfmParams{});
  CHECK(p.scale_lo == 0.0);
  CHECK(p.scale_hi > 1.0);
  CHECK(p.scale_hi < 2.5);
}

TEST_CASE("pfm calibrate: extreme outlier is excluded by the percentile") {
  AnalogRecording rec;
  rec.sample_rate_hz = 200.0;
  rec.channels = {"a"};
  std::vector<double> sig(2000);
  for (int i = 0; i < 2000; ++i) {
    sig[i] = std::sin(2.0 * M_PI * 25.0 * i / 200.0);
  }
  sig[1000] = 100.0;
  rec.samples.push_back(sig);
  const auto p = pfm_calibrate(rec, PfmParams{});
  CHECK(p.scale_hi < 5.0);  // bulk maximum, not the outlier
}

TEST_CASE("pfm calibrate: one shared range across channels") {
  AnalogRecording rec;
  rec.sample_rate_hz = 200.0;
  rec.channels = {"a", "b"};
  std::vector<double> lo(2000), hi(2000);
  for (int i = 0; i < 2000; ++i) {
    lo[i] = 0.5 * std::sin(2.0 * M_PI * 25.0 * i / 200.0);
    hi[i] = 3.0 * std::sin(2.0 * M_PI * 25.0 * i / 200.0);
  }
  rec.samples = {lo, hi};
  const auto p = pfm_calibrate(rec, PfmParams{});
  // The pooled range reflects the large channel; the small channel keeps
  // its relative amplitude.
  CHECK(p.scale_hi > 1.5);
}

TEST_CASE("pfm calibrate: all-zero recording is degenerate") {
  AnalogRecording rec;
  rec.sample_rate_hz = 200.0;
  rec.channels = {"a"};
  rec.samples.push_back(std::vector<double>(500, 0.0));
  CHECK_THROWS(pfm_calibrate(rec, PfmParams{}));
}

TEST_CASE("pfm encode: zero signal, no spikes; uncalibrated throws") {
  PfmParams p;
  std::vector<double> zeros(400, 0.0);
  CHECK_THROWS(pfm_encode(zeros, 200.0, p));
  p.scale_hi = 1.0;
  CHECK(pfm_encode(zeros, 200.0, p).events.empty());
}

TEST_CASE("pfm: perfect integrator rate is linear in drive") {
  // Feed the integrator directly by choosing scale range so the rectified
  // in-band tone maps to known fractions of i_max. A 25 Hz unit tone's
  // rectified mean is 2/pi; simpler: use the linearity of the integrator by
  // comparing spike counts for amplitude a and a/2.
  PfmParams p;
  p.scale_hi = 2.0;  // headroom: nothing clips
  std::vector<double> tone(2000), half(2000);
  for (int i = 0; i < 2000; ++i) {
    tone[i] = std::sin(2.0 * M_PI * 25.0 * i / 200.0);
    half[i] = 0.5 * tone[i];
  }
  const auto full_train = pfm_encode(tone, 200.0, p);
  const auto half_train = pfm_encode(half, 200.0, p);
  const double n_full = static_cast<double>(full_train.count_on(0));
  const double n_half = static_cast<double>(half_train.count_on(0));
  REQUIRE(n_half > 100);
  CHECK(n_full / n_half == doctest::Approx(2.0).epsilon(0.01));
}

TEST_CASE("pfm: full-scale drive fires at rate_max") {
  // A signal whose band-0 rectified output sits at scale_hi the whole time
  // would need DC; instead check the upper clip: far above scale_hi the
  // rate equals rate_max within 1%.
  PfmParams p;
  p.scale_hi = 0.01;  // everything clips to i_max
  std::vector<double> tone(2000);
  for (int i = 0; i < 2000; ++i) {
    // Phase offset keeps sample points away from the tone's zero crossings,
    // so every sample clips.
    tone[i] = std::sin(2.0 * M_PI * 25.0 * i / 200.0 + M_PI / 8.0);
  }
  const auto train = pfm_encode(tone, 200.0, p);
  const double duration_s = 2000.0 / 200.0;
  const double rate = train.count_on(0) / duration_s;
  CHECK(rate == doctest::Approx(p.rate_max_hz).epsilon(0.01));
}

TEST_CASE("pfm: band channels separate tones by >= 10x") {
  PfmParams p;
  p.scale_hi = 1.0;
  std::vector<double> low_tone(4000), high_tone(4000);
  for (int i = 0; i < 4000; ++i) {
    low_tone[i] = std::sin(2.0 * M_PI * 10.0 * i / 200.0);   // inside band 0
    high_tone[i] = std::sin(2.0 * M_PI * 80.0 * i / 200.0);  // inside band 1
  }
  const auto low_train = pfm_encode(low_tone, 200.0, p);
  const auto high_train = pfm_encode(high_tone, 200.0, p);
  CHECK(low_train.count_on(0) >= 10 * std::max<std::size_t>(1, low_train.count_on(1)));
  CHECK(high_train.count_on(1) >= 10 * std::max<std::size_t>(1, high_train.count_on(0)));
}

TEST_CASE("encoders are pure: identical inputs, identical outputs") {
  Rng rng(21);
  const auto sig = random_bandlimited(rng, 300, 1.5);
  AdmParams ap{0.3, 10.0, 60};
  CHECK(adm_encode(sig, 200.0, ap) == adm_encode(sig, 200.0, ap));
  PfmParams pp;
  pp.scale_hi = 1.0;
  CHECK(pfm_encode(sig, 200.0, pp) == pfm_encode(sig, 200.0, pp));
}

TEST_CASE("poisson train: rate zero, count bound, determinism") {
  CHECK(poisson_train(0.0, 1e6, 3).events.empty());

  const auto t = poisson_train(1000.0, 1e7, 99);
  const double n = static_cast<double>(t.events.size());
  CHECK(std::fabs(n - 10000.0) <= 3.0 * std::sqrt(10000.0));

  CHECK(poisson_train(500.0, 1e6, 7) == poisson_train(500.0, 1e6, 7));
  CHECK(poisson_train(500.0, 1e6, 7).events !=
        poisson_train(500.0, 1e6, 8).events);
}
