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

#ifndef EMGSNN_DATAPIPE_HPP
#define EMGSNN_DATAPIPE_HPP

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "emgsnn/encoders.hpp"
#include "emgsnn/learning.hpp"
#include "emgsnn/types.hpp"

namespace emgsnn {

inline constexpr double kWindowMs = 200.0;

// One 200 ms analog segment before spike encoding.
struct AnalogWindow {
  std::vector<std::vector<double>> samples;  // [channel][sample]
  int label = 0;
  int source_offset = 0;  // first sample index in the source recording
};

// Non-overlapping 200 ms windows labeled by per-sample majority vote,
// shuffled with the seed. Throws if the recording has no labels.
std::vector<AnalogWindow> segment(const AnalogRecording& recording,
                                  std::uint64_t seed,
                                  double window_ms = kWindowMs);

// Drops windows that sit closer (per-channel RMS feature, Euclidean
// distance) to the centroid of a temporally adjacent different label than to
// their own class centroid.
std::vector<AnalogWindow> filter_label_bleed(std::vector<AnalogWindow> windows);

// Encode every analog window with ADM (UP/DOWN per electrode) or PFM (one
// channel per band per electrode), producing the 16 network input channels.
std::vector<LabeledWindow> encode_windows_adm(
    std::span<const AnalogWindow> windows, double sample_rate_hz,
    const AdmParams& params);
std::vector<LabeledWindow> encode_windows_pfm(
    std::span<const AnalogWindow> windows, double sample_rate_hz,
    const PfmParams& params);

// Duplicates uniformly-random minority-class windows until every class count
// equals the maximum. Duplicates keep their origin_offset.
std::vector<LabeledWindow> oversample(std::vector<LabeledWindow> windows,
                                      std::uint64_t seed);

// Stratified split. Windows sharing an origin (a window and its oversampled
// duplicates) always land on the same side.
std::pair<std::vector<LabeledWindow>, std::vector<LabeledWindow>> split(
    const std::vector<LabeledWindow>& windows, double train_ratio,
    std::uint64_t seed);

// Synthetic 8-channel EMG-like corpus. Each class has a distinct per-channel
// amplitude profile and a weighting over the two PFM bands; trials are
// separated by 1 s rest gaps labeled as class 0 ("rest").
struct SynthSpec {
  int n_classes = 4;  // class 0 is "rest", classes 1..n-1 are gestures
  std::vector<std::array<double, 8>> profiles;       // defaults when empty
  std::vector<std::array<double, 2>> band_weights;   // defaults when empty
  double amplitude = 75.0;   // scales profiles into ADM signal units
  // Per-trial gain drawn log-uniform from 2^[0, j]. Real surface EMG has a
  // wide within-class dynamic range; this is what separates networks that
  // merely memorize a fixed level from ones that stay linear across levels.
  double amp_jitter_octaves = 4.5;
  double trial_s = 1.0;
  int trials_per_class = 10;  // applies to gesture classes
  double noise_floor = 2.0;   // white-noise floor, absolute signal units
  double sample_rate_hz = 200.0;
  std::uint64_t seed = 1;
};

AnalogRecording synth_emg(const SynthSpec& spec);

// Per-channel RMS over a window; the label-bleed feature.
std::vector<double> rms_feature(const AnalogWindow& window);

}  // namespace emgsnn

#endif  // EMGSNN_DATAPIPE_HPP
