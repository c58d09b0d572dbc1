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

#include "emgsnn/encoders.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "emgsnn/filter.hpp"
#include "emgsnn/rng.hpp"

namespace emgsnn {

namespace {

// Value of the linearly interpolated signal at grid index k, where each
// original sample interval holds `factor` grid points.
double lerp_at(std::span<const double> samples, std::int64_t k, int factor) {
  const std::int64_t i = k / factor;
  const std::int64_t r = k % factor;
  if (r == 0 || i + 1 >= static_cast<std::int64_t>(samples.size())) {
    return samples[std::min<std::int64_t>(i, samples.size() - 1)];
  }
  const double frac = static_cast<double>(r) / factor;
  return samples[i] + frac * (samples[i + 1] - samples[i]);
}

}  // namespace

SpikeTrain adm_encode(std::span<const double> samples, double sample_rate_hz,
                      const AdmParams& params) {
  if (samples.empty()) {
    throw std::invalid_argument("adm_encode: empty signal");
  }
  if (!params.valid() || sample_rate_hz <= 0.0) {
    throw std::invalid_argument("adm_encode: invalid parameters");
  }

  SpikeTrain out;
  out.channels = {"UP", "DOWN"};
  const std::int64_t n_points =
      static_cast<std::int64_t>(samples.size() - 1) *
          params.interpolation_factor +
      1;
  const double grid_dt_us =
      1e6 / (sample_rate_hz * params.interpolation_factor);
  out.duration_us = static_cast<double>(n_points - 1) * grid_dt_us;

  double ref = samples[0];
  double blocked_until = -std::numeric_limits<double>::infinity();
  for (std::int64_t k = 0; k < n_points; ++k) {
    const double t_us = static_cast<double>(k) * grid_dt_us;
    if (t_us < blocked_until) continue;
    const double v = lerp_at(samples, k, params.interpolation_factor);
    if (v - ref >= params.threshold) {
      out.events.push_back({t_us, kAdmUp});
      ref += params.threshold;
      blocked_until = t_us + params.refractory_us;
    } else if (ref - v >= params.threshold) {
      out.events.push_back({t_us, kAdmDown});
      ref -= params.threshold;
      blocked_until = t_us + params.refractory_us;
    }
  }
  return out;
}

SpikeTrain adm_encode(const AnalogRecording& signal, std::size_t channel,
                      const AdmParams& params) {
  if (channel >= signal.n_channels()) {
    throw std::invalid_argument("adm_encode: channel out of range");
  }
  return adm_encode(signal.samples[channel], signal.sample_rate_hz, params);
}

AnalogRecording adm_reconstruct(const SpikeTrain& spikes,
                                const AdmParams& params, double initial,
                                double base_rate_hz) {
  const double grid_rate_hz = base_rate_hz * params.interpolation_factor;
  const double grid_dt_us = 1e6 / grid_rate_hz;
  const std::int64_t n_points =
      static_cast<std::int64_t>(std::llround(spikes.duration_us / grid_dt_us)) +
      1;

  AnalogRecording rec;
  rec.sample_rate_hz = grid_rate_hz;
  rec.channels = {"reconstruction"};
  rec.samples.emplace_back();
  auto& y = rec.samples.back();
  y.reserve(n_points);

  double level = initial;
  std::size_t e = 0;
  for (std::int64_t k = 0; k < n_points; ++k) {
    const double t_us = static_cast<double>(k) * grid_dt_us;
    while (e < spikes.events.size() &&
           spikes.events[e].t_us <= t_us + 0.5 * grid_dt_us) {
      level += spikes.events[e].channel == kAdmUp ? params.threshold
                                                  : -params.threshold;
      ++e;
    }
    y.push_back(level);
  }
  return rec;
}

AdmParams adm_grid_search(std::span<const double> samples,
                          double sample_rate_hz,
                          std::span<const double> thresholds,
                          std::span<const double> refractories_us,
                          std::span<const int> interpolation_factors) {
  if (thresholds.empty() || refractories_us.empty() ||
      interpolation_factors.empty()) {
    throw std::invalid_argument("adm_grid_search: empty candidate list");
  }

  AdmParams best;
  double best_rmse = std::numeric_limits<double>::infinity();
  std::size_t best_spikes = 0;
  bool first = true;

  for (int interp : interpolation_factors) {
    for (double refrac : refractories_us) {
      for (double thr : thresholds) {
        AdmParams cand{thr, refrac, interp};
        const SpikeTrain spikes = adm_encode(samples, sample_rate_hz, cand);
        const AnalogRecording recon =
            adm_reconstruct(spikes, cand, samples[0], sample_rate_hz);
        const auto& y = recon.samples[0];
        double se = 0.0;
        std::int64_t n = 0;
        for (std::size_t k = 0; k < y.size(); ++k) {
          const double v = lerp_at(samples, static_cast<std::int64_t>(k),
                                   interp);
          se += (v - y[k]) * (v - y[k]);
          ++n;
        }
        const double rmse = std::sqrt(se / static_cast<double>(n));
        const std::size_t n_spikes = spikes.events.size();
        if (first || rmse < best_rmse ||
            (rmse == best_rmse && n_spikes < best_spikes)) {
          best = cand;
          best_rmse = rmse;
          best_spikes = n_spikes;
          first = false;
        }
      }
    }
  }
  return best;
}

PfmParams pfm_calibrate(const AnalogRecording& recording, PfmParams params) {
  if (recording.n_samples() == 0) {
    throw std::invalid_argument("pfm_calibrate: empty recording");
  }
  std::vector<double> pooled;
  pooled.reserve(recording.n_samples() * recording.n_channels() *
                 params.bands_hz.size());
  for (const auto& channel : recording.samples) {
    for (const auto& [lo, hi] : params.bands_hz) {
      BandpassFilter filt(lo, hi, recording.sample_rate_hz);
      for (double x : channel) pooled.push_back(std::fabs(filt.process(x)));
    }
  }
  std::sort(pooled.begin(), pooled.end());
  // Nearest-rank percentile.
  const std::size_t rank = static_cast<std::size_t>(
      std::ceil(params.percentile / 100.0 * pooled.size()));
  const double p = pooled[std::min(rank == 0 ? 0 : rank - 1,
                                   pooled.size() - 1)];
  if (p <= 0.0) {
    throw std::domain_error("pfm_calibrate: degenerate (all-zero) recording");
  }
  params.scale_lo = 0.0;
  params.scale_hi = p;
  return params;
}

SpikeTrain pfm_encode(std::span<const double> samples, double sample_rate_hz,
                      const PfmParams& params) {
  if (!params.calibrated()) {
    throw std::invalid_argument("pfm_encode: params not calibrated");
  }
  if (samples.empty()) {
    throw std::invalid_argument("pfm_encode: empty signal");
  }

  SpikeTrain out;
  const double dt_s = 1.0 / sample_rate_hz;
  out.duration_us = static_cast<double>(samples.size()) * dt_s * 1e6;

  for (std::size_t b = 0; b < params.bands_hz.size(); ++b) {
    out.channels.push_back("band" + std::to_string(b));
    const auto& [lo, hi] = params.bands_hz[b];
    BandpassFilter filt(lo, hi, sample_rate_hz);

    // Perfect integrator in phase units: one unit of phase per spike.
    // rate = I * rate_max / i_max, so the full-scale current fires at
    // exactly rate_max.
    double phase = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
      const double rectified = std::fabs(filt.process(samples[i]));
      const double frac = std::clamp(
          (rectified - params.scale_lo) / (params.scale_hi - params.scale_lo),
          0.0, 1.0);
      const double rate_hz = frac * params.rate_max_hz;
      if (rate_hz <= 0.0) continue;
      // Current held constant over this sample interval; emit every integer
      // phase crossing at its exact time.
      const double t0_s = static_cast<double>(i) * dt_s;
      double remaining = dt_s;
      double next_gap = (1.0 - phase) / rate_hz;
      while (next_gap <= remaining) {
        const double t_spike_s = t0_s + (dt_s - remaining) + next_gap;
        out.events.push_back({t_spike_s * 1e6, static_cast<std::uint32_t>(b)});
        remaining -= next_gap;
        phase = 0.0;
        next_gap = 1.0 / rate_hz;
      }
      phase += rate_hz * remaining;
    }
  }
  std::stable_sort(out.events.begin(), out.events.end(),
                   [](const SpikeEvent& a, const SpikeEvent& b) {
                     return a.t_us < b.t_us;
                   });
  return out;
}

SpikeTrain pfm_encode(const AnalogRecording& signal, std::size_t channel,
                      const PfmParams& params) {
  if (channel >= signal.n_channels()) {
    throw std::invalid_argument("pfm_encode: channel out of range");
  }
  return pfm_encode(signal.samples[channel], signal.sample_rate_hz, params);
}

SpikeTrain poisson_train(double rate_hz, double duration_us,
                         std::uint64_t seed) {
  if (rate_hz < 0.0) {
    throw std::invalid_argument("poisson_train: negative rate");
  }
  SpikeTrain out;
  out.channels = {"poisson"};
  out.duration_us = duration_us;
  if (rate_hz == 0.0) return out;

  Rng rng(seed);
  double t_us = 0.0;
  for (;;) {
    t_us += rng.exponential(rate_hz) * 1e6;
    if (t_us > duration_us) break;
    out.events.push_back({t_us, 0});
  }
  return out;
}

}  // namespace emgsnn
