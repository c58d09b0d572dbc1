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

#include "emgsnn/datapipe.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

#include "emgsnn/filter.hpp"
#include "emgsnn/rng.hpp"

namespace emgsnn {

namespace {

template <typename T>
void shuffle_in_place(std::vector<T>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::swap(v[i - 1], v[rng.integer(i)]);
  }
}

double sq_dist(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    d += (a[i] - b[i]) * (a[i] - b[i]);
  }
  return d;
}

}  // namespace

std::vector<double> rms_feature(const AnalogWindow& window) {
  std::vector<double> feature;
  feature.reserve(window.samples.size());
  for (const auto& ch : window.samples) {
    double acc = 0.0;
    for (double v : ch) acc += v * v;
    feature.push_back(std::sqrt(acc / static_cast<double>(ch.size())));
  }
  return feature;
}

std::vector<AnalogWindow> segment(const AnalogRecording& recording,
                                  std::uint64_t seed, double window_ms) {
  if (recording.labels.size() != recording.n_samples()) {
    throw std::invalid_argument("segment: per-sample labels required");
  }
  const int win_samples = static_cast<int>(
      std::lround(window_ms / 1000.0 * recording.sample_rate_hz));
  if (win_samples <= 0) {
    throw std::invalid_argument("segment: window shorter than one sample");
  }

  std::vector<AnalogWindow> windows;
  const int n_windows =
      static_cast<int>(recording.n_samples()) / win_samples;
  for (int w = 0; w < n_windows; ++w) {
    const int off = w * win_samples;
    AnalogWindow win;
    win.source_offset = off;
    win.samples.reserve(recording.n_channels());
    for (const auto& ch : recording.samples) {
      win.samples.emplace_back(ch.begin() + off,
                               ch.begin() + off + win_samples);
    }
    // Majority vote over the window's sample labels.
    std::map<int, int> votes;
    for (int s = off; s < off + win_samples; ++s) {
      ++votes[recording.labels[s]];
    }
    int best = 0, best_label = 0;
    for (const auto& [label, n] : votes) {
      if (n > best) {
        best = n;
        best_label = label;
      }
    }
    win.label = best_label;
    windows.push_back(std::move(win));
  }

  Rng rng(Rng::mix(seed, 0x5e97e27ULL));
  shuffle_in_place(windows, rng);
  return windows;
}

std::vector<AnalogWindow> filter_label_bleed(
    std::vector<AnalogWindow> windows) {
  if (windows.empty()) return windows;

  std::vector<std::vector<double>> features(windows.size());
  std::map<int, std::vector<double>> centroids;
  std::map<int, int> counts;
  for (std::size_t i = 0; i < windows.size(); ++i) {
    features[i] = rms_feature(windows[i]);
    auto& c = centroids[windows[i].label];
    if (c.empty()) c.assign(features[i].size(), 0.0);
    for (std::size_t k = 0; k < c.size(); ++k) c[k] += features[i][k];
    ++counts[windows[i].label];
  }
  for (auto& [label, c] : centroids) {
    for (auto& v : c) v /= counts[label];
  }

  // Temporal order by source offset to find adjacent-label neighbors.
  std::vector<std::size_t> order(windows.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return windows[a].source_offset < windows[b].source_offset;
  });

  std::vector<bool> keep(windows.size(), true);
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    const std::size_t i = order[pos];
    const double own = sq_dist(features[i], centroids[windows[i].label]);
    for (int delta : {-1, 1}) {
      const std::int64_t adj = static_cast<std::int64_t>(pos) + delta;
      if (adj < 0 || adj >= static_cast<std::int64_t>(order.size())) continue;
      const std::size_t j = order[adj];
      if (windows[j].label == windows[i].label) continue;
      if (sq_dist(features[i], centroids[windows[j].label]) < own) {
        keep[i] = false;
        break;
      }
    }
  }

  std::vector<AnalogWindow> out;
  for (std::size_t i = 0; i < windows.size(); ++i) {
    if (keep[i]) out.push_back(std::move(windows[i]));
  }
  return out;
}

namespace {

// Merge two-channel-per-electrode encodings into one 16-channel train.
LabeledWindow merge_pairs(const AnalogWindow& window,
                          const std::vector<SpikeTrain>& per_electrode,
                          double duration_us) {
  LabeledWindow lw;
  lw.label = window.label;
  lw.source_offset = window.source_offset;
  lw.origin_offset = window.source_offset;
  lw.spikes.duration_us = duration_us;
  for (std::size_t ch = 0; ch < per_electrode.size(); ++ch) {
    lw.spikes.channels.push_back("ch" + std::to_string(ch) + "a");
    lw.spikes.channels.push_back("ch" + std::to_string(ch) + "b");
    for (const auto& e : per_electrode[ch].events) {
      lw.spikes.events.push_back(
          {e.t_us, static_cast<std::uint32_t>(2 * ch + e.channel)});
    }
  }
  std::stable_sort(lw.spikes.events.begin(), lw.spikes.events.end(),
                   [](const SpikeEvent& a, const SpikeEvent& b) {
                     return a.t_us < b.t_us;
                   });
  return lw;
}

}  // namespace

std::vector<LabeledWindow> encode_windows_adm(
    std::span<const AnalogWindow> windows, double sample_rate_hz,
    const AdmParams& params) {
  std::vector<LabeledWindow> out;
  out.reserve(windows.size());
  for (const auto& win : windows) {
    std::vector<SpikeTrain> trains;
    trains.reserve(win.samples.size());
    for (const auto& ch : win.samples) {
      trains.push_back(adm_encode(ch, sample_rate_hz, params));
    }
    // The window covers n samples even though the interpolated grid ends at
    // the last one.
    const double duration_us =
        static_cast<double>(win.samples[0].size()) / sample_rate_hz * 1e6;
    out.push_back(merge_pairs(win, trains, duration_us));
  }
  return out;
}

std::vector<LabeledWindow> encode_windows_pfm(
    std::span<const AnalogWindow> windows, double sample_rate_hz,
    const PfmParams& params) {
  if (params.bands_hz.size() != 2) {
    throw std::invalid_argument(
        "encode_windows_pfm: exactly 2 bands map onto the 16 input channels");
  }
  std::vector<LabeledWindow> out;
  out.reserve(windows.size());
  for (const auto& win : windows) {
    std::vector<SpikeTrain> trains;
    trains.reserve(win.samples.size());
    double duration_us = 0.0;
    for (const auto& ch : win.samples) {
      trains.push_back(pfm_encode(ch, sample_rate_hz, params));
      duration_us = trains.back().duration_us;
    }
    out.push_back(merge_pairs(win, trains, duration_us));
  }
  return out;
}

std::vector<LabeledWindow> oversample(std::vector<LabeledWindow> windows,
                                      std::uint64_t seed) {
  std::map<int, std::vector<std::size_t>> by_class;
  for (std::size_t i = 0; i < windows.size(); ++i) {
    by_class[windows[i].label].push_back(i);
  }
  std::size_t max_count = 0;
  for (const auto& [label, idx] : by_class) {
    max_count = std::max(max_count, idx.size());
  }
  Rng rng(Rng::mix(seed, 0x08e25ULL));
  for (const auto& [label, idx] : by_class) {
    for (std::size_t n = idx.size(); n < max_count; ++n) {
      const std::size_t pick = idx[rng.integer(idx.size())];
      LabeledWindow dup = windows[pick];
      dup.origin_offset = windows[pick].origin_offset;
      windows.push_back(std::move(dup));
    }
  }
  return windows;
}

std::pair<std::vector<LabeledWindow>, std::vector<LabeledWindow>> split(
    const std::vector<LabeledWindow>& windows, double train_ratio,
    std::uint64_t seed) {
  if (train_ratio <= 0.0 || train_ratio >= 1.0) {
    throw std::invalid_argument("split: ratio must lie in (0, 1)");
  }
  // Group a window with its oversampled duplicates so no source leaks
  // across the split.
  std::map<int, std::map<int, std::vector<std::size_t>>> class_groups;
  std::map<int, std::size_t> class_totals;
  for (std::size_t i = 0; i < windows.size(); ++i) {
    class_groups[windows[i].label][windows[i].origin_offset].push_back(i);
    ++class_totals[windows[i].label];
  }

  Rng rng(Rng::mix(seed, 0x5871fULL));
  std::vector<LabeledWindow> train, test;
  for (auto& [label, groups] : class_groups) {
    std::vector<std::vector<std::size_t>> group_list;
    group_list.reserve(groups.size());
    for (auto& [offset, members] : groups) group_list.push_back(members);
    shuffle_in_place(group_list, rng);
    // Larger groups first so the greedy fill can land within one window of
    // the target.
    std::stable_sort(group_list.begin(), group_list.end(),
                     [](const auto& a, const auto& b) {
                       return a.size() > b.size();
                     });
    const std::size_t target = static_cast<std::size_t>(
        std::lround(train_ratio * static_cast<double>(class_totals[label])));
    std::size_t placed = 0;
    for (const auto& members : group_list) {
      auto& side = placed + members.size() <= target ? train : test;
      if (&side == &train) placed += members.size();
      for (std::size_t i : members) side.push_back(windows[i]);
    }
  }
  return {std::move(train), std::move(test)};
}

namespace {

std::vector<std::array<double, 8>> default_profiles() {
  return {
      {0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0},   // rest
      {1.0, 0.9, 0.7, 0.3, 0.1, 0.1, 0.2, 0.5},   // rock
      {0.2, 0.3, 0.9, 1.0, 0.8, 0.3, 0.1, 0.1},   // paper
      {0.1, 0.1, 0.2, 0.3, 0.8, 1.0, 0.9, 0.4},   // scissors
  };
}

std::vector<std::array<double, 2>> default_band_weights() {
  return {{0.5, 0.5}, {0.9, 0.1}, {0.5, 0.5}, {0.1, 0.9}};
}

}  // namespace

AnalogRecording synth_emg(const SynthSpec& spec) {
  auto profiles = spec.profiles;
  auto band_weights = spec.band_weights;
  if (profiles.empty() && spec.n_classes == 4) profiles = default_profiles();
  if (band_weights.empty() && spec.n_classes == 4) {
    band_weights = default_band_weights();
  }
  if (static_cast<int>(profiles.size()) != spec.n_classes ||
      static_cast<int>(band_weights.size()) != spec.n_classes) {
    throw std::invalid_argument("synth_emg: one profile per class required");
  }
  for (int a = 0; a < spec.n_classes; ++a) {
    for (int b = a + 1; b < spec.n_classes; ++b) {
      double d = 0.0;
      for (int ch = 0; ch < 8; ++ch) {
        const double diff = profiles[a][ch] - profiles[b][ch];
        d += diff * diff;
      }
      if (std::sqrt(d) <= 0.2) {
        throw std::invalid_argument("synth_emg: class profiles too similar");
      }
    }
  }

  // Class 0 is rest: the absence of drive is the default state, and an
  // all-silent readout tie-breaks to the lowest class index.
  const int rest_label = 0;
  const int n_gesture = spec.n_classes - 1;
  const int trial_samples =
      static_cast<int>(std::lround(spec.trial_s * spec.sample_rate_hz));
  const int gap_samples =
      static_cast<int>(std::lround(1.0 * spec.sample_rate_hz));
  const int n_trials = n_gesture * spec.trials_per_class;
  const int total = gap_samples + n_trials * (trial_samples + gap_samples);

  AnalogRecording rec;
  rec.sample_rate_hz = spec.sample_rate_hz;
  rec.labels.assign(total, rest_label);
  for (int ch = 0; ch < 8; ++ch) {
    rec.channels.push_back("emg" + std::to_string(ch));
    rec.samples.emplace_back(total, 0.0);
  }

  // Trial schedule: round-robin over gesture classes, 1 s rest before each
  // trial and after the last.
  std::vector<int> schedule;
  for (int r = 0; r < spec.trials_per_class; ++r) {
    for (int c = 1; c <= n_gesture; ++c) schedule.push_back(c);
  }
  int offset = gap_samples;
  std::vector<int> sample_class(total, rest_label);
  std::vector<double> sample_gain(total, 1.0);
  Rng gain_rng(Rng::mix(spec.seed, 0x200));
  for (int c : schedule) {
    const double gain = std::exp2(gain_rng.uniform() * spec.amp_jitter_octaves);
    for (int s = 0; s < trial_samples; ++s) {
      sample_class[offset + s] = c;
      sample_gain[offset + s] = gain;
    }
    offset += trial_samples + gap_samples;
  }
  rec.labels = sample_class;

  // Per channel: filtered white noise per band, scaled by the per-sample
  // envelope, plus a white noise floor.
  const double band_edges[2][2] = {{0.5, 50.0}, {50.0, 100.0}};
  for (int ch = 0; ch < 8; ++ch) {
    Rng rng(Rng::mix(spec.seed, 0x100 + ch));
    std::vector<double> white(total);
    for (auto& v : white) v = rng.normal();
    auto& out = rec.samples[ch];
    for (int b = 0; b < 2; ++b) {
      BandpassFilter filt(band_edges[b][0], band_edges[b][1],
                          spec.sample_rate_hz);
      std::vector<double> band(total);
      for (int s = 0; s < total; ++s) band[s] = filt.process(rng.normal());
      for (int s = 0; s < total; ++s) {
        const int cls = sample_class[s];
        out[s] += spec.amplitude * sample_gain[s] * profiles[cls][ch] *
                  band_weights[cls][b] * band[s];
      }
    }
    for (int s = 0; s < total; ++s) out[s] += spec.noise_floor * white[s];
  }
  return rec;
}

}  // namespace emgsnn
