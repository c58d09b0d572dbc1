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

#ifndef EMGSNN_ENCODERS_HPP
#define EMGSNN_ENCODERS_HPP

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "emgsnn/types.hpp"

namespace emgsnn {

// ---------------------------------------------------------------------------
// Asynchronous delta modulation (ADM)
// ---------------------------------------------------------------------------

struct AdmParams {
  double threshold = 0.8;          // signal units
  double refractory_us = 10.0;
  int interpolation_factor = 3500;

  bool valid() const {
    return threshold > 0.0 && refractory_us >= 0.0 &&
           interpolation_factor >= 1;
  }
};

inline constexpr std::uint32_t kAdmUp = 0;
inline constexpr std::uint32_t kAdmDown = 1;

// Encode one channel into UP/DOWN events. The signal is linearly interpolated
// by params.interpolation_factor; a running reference starts at the first
// sample and moves by +/- threshold on each emitted event. The refractory
// period gates both channels jointly and freezes the reference.
SpikeTrain adm_encode(std::span<const double> samples, double sample_rate_hz,
                      const AdmParams& params);
SpikeTrain adm_encode(const AnalogRecording& signal, std::size_t channel,
                      const AdmParams& params);

// Staircase reconstruction on the interpolated grid: +threshold per UP,
// -threshold per DOWN. base_rate_hz is the pre-interpolation sample rate of
// the encoded signal.
AnalogRecording adm_reconstruct(const SpikeTrain& spikes,
                                const AdmParams& params, double initial,
                                double base_rate_hz);

// Grid search over the candidate lists minimizing reconstruction RMSE; ties
// broken by fewer total spikes, then by candidate order.
AdmParams adm_grid_search(std::span<const double> samples,
                          double sample_rate_hz,
                          std::span<const double> thresholds,
                          std::span<const double> refractories_us,
                          std::span<const int> interpolation_factors);

// ---------------------------------------------------------------------------
// Energy-based pulse-frequency modulation (PFM)
// ---------------------------------------------------------------------------

struct PfmParams {
  // Two bands splitting 0-100 Hz; the 0.5 Hz lower edge keeps DC out of the
  // band-pass.
  std::vector<std::pair<double, double>> bands_hz = {{0.5, 50.0},
                                                     {50.0, 100.0}};
  double i_max_nA = 8.0;
  double rate_max_hz = 4000.0;
  double percentile = 99.0;  // calibration statistic
  double scale_lo = 0.0;     // session scaling range, set by pfm_calibrate
  double scale_hi = 0.0;

  bool calibrated() const { return scale_hi > scale_lo; }
};

// Computes the shared per-session scaling range: (0, p) where p is the
// `percentile` of rectified band-filtered amplitudes pooled over every
// channel and band of the recording. Throws on an all-zero recording.
PfmParams pfm_calibrate(const AnalogRecording& recording, PfmParams params);

// Per band: causal 4th-order band-pass, full-wave rectification, affine map
// of scale_range onto [0, i_max] with clipping, then a perfect-integrator
// neuron whose rate is exactly I * rate_max / i_max. One output channel per
// band. Throws if params are uncalibrated.
SpikeTrain pfm_encode(std::span<const double> samples, double sample_rate_hz,
                      const PfmParams& params);
SpikeTrain pfm_encode(const AnalogRecording& signal, std::size_t channel,
                      const PfmParams& params);

// ---------------------------------------------------------------------------
// Poisson source
// ---------------------------------------------------------------------------

// Homogeneous Poisson process on a single channel, deterministic per seed.
SpikeTrain poisson_train(double rate_hz, double duration_us,
                         std::uint64_t seed);

}  // namespace emgsnn

#endif  // EMGSNN_ENCODERS_HPP
