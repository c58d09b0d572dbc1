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

#ifndef EMGSNN_CSVIO_HPP
#define EMGSNN_CSVIO_HPP

#include <filesystem>
#include <string>
#include <vector>

#include "emgsnn/learning.hpp"
#include "emgsnn/types.hpp"

namespace emgsnn {

// Recording CSV: header `t,<ch1>,...,<chN>[,label]`, one row per sample,
// time in seconds.
void write_recording_csv(const std::filesystem::path& path,
                         const AnalogRecording& recording);
AnalogRecording read_recording_csv(const std::filesystem::path& path);

// Optional label sidecar: `t_start_s,t_end_s,label` intervals stamped onto
// the per-sample label vector (samples outside every interval keep
// `default_label`).
void apply_label_intervals(AnalogRecording& recording,
                           const std::filesystem::path& path,
                           int default_label = 0);

// Spike CSV: `time_us,channel`, sorted by time.
void write_spikes_csv(const std::filesystem::path& path,
                      const SpikeTrain& train);
SpikeTrain read_spikes_csv(const std::filesystem::path& path);

// Window archive: one spike CSV per window plus a JSON manifest carrying
// label / source metadata.
void write_window_archive(const std::filesystem::path& dir,
                          const std::vector<LabeledWindow>& windows);
std::vector<LabeledWindow> read_window_archive(
    const std::filesystem::path& dir);

}  // namespace emgsnn

#endif  // EMGSNN_CSVIO_HPP
