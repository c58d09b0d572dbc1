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

#ifndef EMGSNN_TYPES_HPP
#define EMGSNN_TYPES_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace emgsnn {

struct SpikeEvent {
  double t_us = 0.0;
  std::uint32_t channel = 0;

  friend bool operator==(const SpikeEvent&, const SpikeEvent&) = default;
};

// Time-sorted spike events on named channels, microsecond resolution.
struct SpikeTrain {
  std::vector<std::string> channels;
  std::vector<SpikeEvent> events;  // sorted by t_us, non-decreasing
  double duration_us = 0.0;

  std::size_t count_on(std::uint32_t channel) const {
    std::size_t n = 0;
    for (const auto& e : events) {
      if (e.channel == channel) ++n;
    }
    return n;
  }

  friend bool operator==(const SpikeTrain&, const SpikeTrain&) = default;
};

// Multi-channel sampled biosignal. `labels`, when non-empty, holds one class
// id per sample (shared across channels).
struct AnalogRecording {
  double sample_rate_hz = 0.0;
  std::vector<std::string> channels;
  std::vector<std::vector<double>> samples;  // [channel][sample]
  std::vector<int> labels;                   // empty or one per sample

  std::size_t n_samples() const {
    return samples.empty() ? 0 : samples.front().size();
  }
  std::size_t n_channels() const { return samples.size(); }
};

}  // namespace emgsnn

#endif  // EMGSNN_TYPES_HPP
