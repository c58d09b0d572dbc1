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

#include "emgsnn/csvio.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace emgsnn {

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) fields.push_back(field);
  return fields;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot open for writing: " + path.string());
  }
  return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open for reading: " + path.string());
  }
  return in;
}

std::string fmt(double v, const char* spec = "%.9g") {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

}  // namespace

void write_recording_csv(const std::filesystem::path& path,
                         const AnalogRecording& recording) {
  auto out = open_out(path);
  out << "t";
  for (const auto& ch : recording.channels) out << "," << ch;
  const bool with_labels = !recording.labels.empty();
  if (with_labels) out << ",label";
  out << "\n";
  for (std::size_t s = 0; s < recording.n_samples(); ++s) {
    out << fmt(static_cast<double>(s) / recording.sample_rate_hz);
    for (const auto& ch : recording.samples) out << "," << fmt(ch[s]);
    if (with_labels) out << "," << recording.labels[s];
    out << "\n";
  }
}

AnalogRecording read_recording_csv(const std::filesystem::path& path) {
  auto in = open_in(path);
  std::string line;
  if (!std::getline(in, line)) {
    throw std::runtime_error("empty recording CSV: " + path.string());
  }
  auto header = split_line(line);
  if (header.size() < 2 || header[0] != "t") {
    throw std::runtime_error("bad recording CSV header: " + path.string());
  }
  const bool with_labels = header.back() == "label";
  const std::size_t n_ch = header.size() - 1 - (with_labels ? 1 : 0);

  AnalogRecording rec;
  rec.channels.assign(header.begin() + 1, header.begin() + 1 + n_ch);
  rec.samples.resize(n_ch);

  std::vector<double> times;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto fields = split_line(line);
    if (fields.size() != header.size()) {
      throw std::runtime_error("ragged recording CSV row: " + path.string());
    }
    times.push_back(std::stod(fields[0]));
    for (std::size_t c = 0; c < n_ch; ++c) {
      rec.samples[c].push_back(std::stod(fields[1 + c]));
    }
    if (with_labels) rec.labels.push_back(std::stoi(fields.back()));
  }
  if (times.size() < 2) {
    throw std::runtime_error("recording CSV needs >= 2 samples");
  }
  rec.sample_rate_hz =
      static_cast<double>(times.size() - 1) / (times.back() - times.front());
  return rec;
}

void apply_label_intervals(AnalogRecording& recording,
                           const std::filesystem::path& path,
                           int default_label) {
  auto in = open_in(path);
  recording.labels.assign(recording.n_samples(), default_label);
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto fields = split_line(line);
    if (fields.size() != 3) {
      throw std::runtime_error("bad label interval row: " + line);
    }
    const double t0 = std::stod(fields[0]);
    const double t1 = std::stod(fields[1]);
    const int label = std::stoi(fields[2]);
    const auto first = static_cast<std::size_t>(
        std::max(0.0, std::ceil(t0 * recording.sample_rate_hz)));
    for (std::size_t s = first; s < recording.n_samples(); ++s) {
      if (static_cast<double>(s) / recording.sample_rate_hz >= t1) break;
      recording.labels[s] = label;
    }
  }
}

void write_spikes_csv(const std::filesystem::path& path,
                      const SpikeTrain& train) {
  auto out = open_out(path);
  out << "time_us,channel\n";
  for (const auto& e : train.events) {
    out << fmt(e.t_us, "%.4f") << ","
        << (e.channel < train.channels.size() ? train.channels[e.channel]
                                              : std::to_string(e.channel))
        << "\n";
  }
}

SpikeTrain read_spikes_csv(const std::filesystem::path& path) {
  auto in = open_in(path);
  SpikeTrain train;
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto fields = split_line(line);
    if (fields.size() != 2) {
      throw std::runtime_error("bad spike CSV row: " + line);
    }
    const double t_us = std::stod(fields[0]);
    auto it = std::find(train.channels.begin(), train.channels.end(),
                        fields[1]);
    std::uint32_t ch;
    if (it == train.channels.end()) {
      ch = static_cast<std::uint32_t>(train.channels.size());
      train.channels.push_back(fields[1]);
    } else {
      ch = static_cast<std::uint32_t>(it - train.channels.begin());
    }
    train.events.push_back({t_us, ch});
    train.duration_us = std::max(train.duration_us, t_us);
  }
  return train;
}

void write_window_archive(const std::filesystem::path& dir,
                          const std::vector<LabeledWindow>& windows) {
  std::filesystem::create_directories(dir);
  nlohmann::json manifest = nlohmann::json::array();
  for (std::size_t i = 0; i < windows.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "window_%05zu.csv", i);
    write_spikes_csv(dir / name, windows[i].spikes);
    manifest.push_back({
        {"file", name},
        {"label", windows[i].label},
        {"source_offset", windows[i].source_offset},
        {"origin_offset", windows[i].origin_offset},
        {"duration_us", windows[i].spikes.duration_us},
        {"channels", windows[i].spikes.channels},
    });
  }
  auto out = open_out(dir / "manifest.json");
  out << manifest.dump(2) << "\n";
}

std::vector<LabeledWindow> read_window_archive(
    const std::filesystem::path& dir) {
  auto in = open_in(dir / "manifest.json");
  nlohmann::json manifest = nlohmann::json::parse(in);
  std::vector<LabeledWindow> windows;
  for (const auto& entry : manifest) {
    LabeledWindow lw;
    lw.label = entry.at("label").get<int>();
    lw.source_offset = entry.at("source_offset").get<int>();
    lw.origin_offset = entry.at("origin_offset").get<int>();
    lw.spikes = read_spikes_csv(dir / entry.at("file").get<std::string>());
    lw.spikes.duration_us = entry.at("duration_us").get<double>();
    const auto channels =
        entry.at("channels").get<std::vector<std::string>>();
    // Remap events onto the manifest's channel order; silent channels are
    // absent from the CSV.
    std::vector<std::uint32_t> remap(lw.spikes.channels.size(), 0);
    for (std::size_t c = 0; c < lw.spikes.channels.size(); ++c) {
      auto it = std::find(channels.begin(), channels.end(),
                          lw.spikes.channels[c]);
      if (it == channels.end()) {
        throw std::runtime_error("window archive: unknown channel " +
                                 lw.spikes.channels[c]);
      }
      remap[c] = static_cast<std::uint32_t>(it - channels.begin());
    }
    for (auto& e : lw.spikes.events) e.channel = remap[e.channel];
    lw.spikes.channels = channels;
    windows.push_back(std::move(lw));
  }
  return windows;
}

}  // namespace emgsnn
