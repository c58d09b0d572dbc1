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
//
// emgsnn-cli: command-line front end for the simulator library.
//
//   synth      emit a synthetic labeled EMG-like recording as CSV
//   encode     spike-encode a recording into a window archive (ADM or PFM)
//   curve      input-output rate curve for one ablation config
//   calibrate  grid-search the weight-unit current for IO-curve linearity
//   train      train the plastic readout on a window archive
//   eval       k-fold cross-validated metrics on a window archive
//   ablate     accuracy ladder across the five ablation configs
//
// Global flags: --seed, --config <json>, --out <dir>. Every command is
// deterministic per (seed, config): re-running writes byte-identical
// artifacts. On failure a machine-readable error JSON goes to stderr and the
// exit code is nonzero.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "emgsnn/csvio.hpp"
#include "emgsnn/datapipe.hpp"
#include "emgsnn/encoders.hpp"
#include "emgsnn/engine.hpp"
#include "emgsnn/harness.hpp"
#include "emgsnn/learning.hpp"
#include "emgsnn/rng.hpp"
#include "emgsnn/topology.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace emgsnn;

namespace {

struct GlobalOpts {
  std::uint64_t seed = 1;
  std::string config_path;
  std::string out_dir = ".";

  json config;  // parsed --config file (empty object when absent)
};

void load_config(GlobalOpts& g) {
  if (g.config_path.empty()) {
    g.config = json::object();
    return;
  }
  std::ifstream in(g.config_path);
  if (!in) {
    throw std::runtime_error("cannot open config file: " + g.config_path);
  }
  in >> g.config;
}

NetworkConfig network_from(const GlobalOpts& g) {
  NetworkConfig cfg = config_from_json(g.config);
  cfg.seed = g.seed;
  return cfg;
}

SynthSpec synth_from(const GlobalOpts& g) {
  SynthSpec spec;
  spec.seed = g.seed;
  if (!g.config.contains("synth")) return spec;
  const json& s = g.config.at("synth");
  spec.n_classes = s.value("n_classes", spec.n_classes);
  spec.amplitude = s.value("amplitude", spec.amplitude);
  spec.amp_jitter_octaves =
      s.value("amp_jitter_octaves", spec.amp_jitter_octaves);
  spec.trial_s = s.value("trial_s", spec.trial_s);
  spec.trials_per_class = s.value("trials_per_class", spec.trials_per_class);
  spec.noise_floor = s.value("noise_floor", spec.noise_floor);
  spec.sample_rate_hz = s.value("sample_rate_hz", spec.sample_rate_hz);
  return spec;
}

AdmParams adm_from(const GlobalOpts& g) {
  AdmParams p;
  if (!g.config.contains("adm")) return p;
  const json& a = g.config.at("adm");
  p.threshold = a.value("threshold", p.threshold);
  p.refractory_us = a.value("refractory_us", p.refractory_us);
  p.interpolation_factor =
      a.value("interpolation_factor", p.interpolation_factor);
  return p;
}

PfmParams pfm_from(const GlobalOpts& g) {
  PfmParams p;
  if (!g.config.contains("pfm")) return p;
  const json& f = g.config.at("pfm");
  p.i_max_nA = f.value("i_max_nA", p.i_max_nA);
  p.rate_max_hz = f.value("rate_max_hz", p.rate_max_hz);
  p.percentile = f.value("percentile", p.percentile);
  return p;
}

TraceParams trace_from(const GlobalOpts& g) {
  TraceParams p;
  if (!g.config.contains("learning")) return p;
  const json& l = g.config.at("learning");
  p.tau_x_us = l.value("tau_x_us", p.tau_x_us);
  p.increment = l.value("increment", p.increment);
  p.teacher_value = l.value("teacher_value", p.teacher_value);
  p.alpha = l.value("alpha", p.alpha);
  p.w_max = l.value("w_max", p.w_max);
  return p;
}

fs::path out_path(const GlobalOpts& g, const std::string& name) {
  fs::create_directories(g.out_dir);
  return fs::path(g.out_dir) / name;
}

void write_json(const fs::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

void write_curve_csv(const fs::path& path, const IoCurve& curve) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "input_hz,output_hz\n";
  char buf[64];
  for (std::size_t i = 0; i < curve.input_hz.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.9g,%.9g\n", curve.input_hz[i],
                  curve.output_hz[i]);
    out << buf;
  }
}

std::map<int, int> label_histogram(std::span<const LabeledWindow> windows) {
  std::map<int, int> h;
  for (const auto& w : windows) ++h[w.label];
  return h;
}

json metrics_to_json(const Metrics& m) {
  return json{{"accuracy", m.accuracy},
              {"accuracy_std", m.accuracy_std},
              {"per_class_recall", m.per_class_recall},
              {"confusion", m.confusion},
              {"mean_output_rate_hz", m.mean_output_rate_hz}};
}

// ---------------------------------------------------------------------------
// Subcommands
// ---------------------------------------------------------------------------

void cmd_synth(const GlobalOpts& g) {
  const SynthSpec spec = synth_from(g);
  const AnalogRecording rec = synth_emg(spec);
  write_recording_csv(out_path(g, "synth.csv"), rec);

  std::map<int, int> label_counts;
  for (int l : rec.labels) ++label_counts[l];
  json summary{{"n_channels", rec.n_channels()},
               {"n_samples", rec.n_samples()},
               {"sample_rate_hz", rec.sample_rate_hz},
               {"duration_s", rec.n_samples() / rec.sample_rate_hz},
               {"n_classes", spec.n_classes},
               {"seed", g.seed}};
  for (const auto& [label, count] : label_counts) {
    summary["label_counts"][std::to_string(label)] = count;
  }
  write_json(out_path(g, "synth.json"), summary);
}

void cmd_encode(const GlobalOpts& g, const std::string& input,
                const std::string& method) {
  AnalogRecording rec = read_recording_csv(input);
  if (rec.labels.empty()) {
    throw std::runtime_error("encode: input CSV has no label column");
  }
  auto analog = segment(rec, g.seed);
  const std::size_t before = analog.size();
  analog = filter_label_bleed(std::move(analog));

  std::vector<LabeledWindow> windows;
  if (method == "adm") {
    windows = encode_windows_adm(analog, rec.sample_rate_hz, adm_from(g));
  } else {
    PfmParams params = pfm_calibrate(rec, pfm_from(g));
    windows = encode_windows_pfm(analog, rec.sample_rate_hz, params);
  }
  write_window_archive(out_path(g, "windows"), windows);

  double events = 0.0;
  for (const auto& w : windows) events += w.spikes.events.size();
  json summary{{"method", method},
               {"n_windows", windows.size()},
               {"windows_dropped_label_bleed", before - analog.size()},
               {"mean_events_per_window",
                windows.empty() ? 0.0 : events / windows.size()},
               {"seed", g.seed}};
  for (const auto& [label, count] : label_histogram(windows)) {
    summary["windows_per_class"][std::to_string(label)] = count;
  }
  write_json(out_path(g, "encode.json"), summary);
}

void cmd_curve(const GlobalOpts& g, const std::string& config_name,
               double duration_ms) {
  const NetworkConfig base = network_from(g);
  const AblationConfig& config = ablation_by_name(config_name);
  const auto rates = default_io_rates();
  const IoCurve curve =
      io_curve(base, config, rates, duration_ms * 1e3, g.seed);

  // File-system friendly config tag (+EI -> EI etc.).
  std::string tag = config_name;
  std::erase(tag, '+');
  write_curve_csv(out_path(g, "curve_" + tag + ".csv"), curve);
  write_json(out_path(g, "curve_" + tag + ".json"),
             json{{"config", config_name},
                  {"r2", linear_fit_r2(curve.input_hz, curve.output_hz)},
                  {"i_w_base_pA", base.i_w_base_pA},
                  {"duration_ms", duration_ms},
                  {"seed", g.seed}});
}

void cmd_calibrate(const GlobalOpts& g, std::vector<double> grid,
                   double duration_ms) {
  const NetworkConfig base = network_from(g);
  const auto rates = default_io_rates();
  const double chosen =
      calibrate_weight_unit(base, grid, rates, duration_ms * 1e3, g.seed);

  NetworkConfig cfg = base;
  cfg.i_w_base_pA = chosen;
  const IoCurve curve = io_curve(cfg, ablation_by_name("Full"), rates,
                                 duration_ms * 1e3, g.seed);
  write_curve_csv(out_path(g, "curve_calibrated.csv"), curve);
  write_json(out_path(g, "calibrate.json"),
             json{{"grid_pA", grid},
                  {"i_w_base_pA", chosen},
                  {"r2", linear_fit_r2(curve.input_hz, curve.output_hz)},
                  {"duration_ms", duration_ms},
                  {"seed", g.seed}});
}

void cmd_train(const GlobalOpts& g, const std::string& windows_dir, int epochs,
               double train_ratio) {
  const TraceParams params = trace_from(g);
  auto corpus = read_window_archive(windows_dir);
  const ClassMap class_map{static_cast<int>(label_histogram(corpus).size())};

  corpus = oversample(std::move(corpus), g.seed);
  const auto [train_set, test_set] = split(corpus, train_ratio, g.seed);

  // Mirrors train_and_eval but keeps the trained matrix for export.
  NetworkConfig cfg = network_from(g);
  cfg.adaptation = cfg.ei_balance = cfg.ff_inhibition = true;
  cfg.w_inp_e.clear();
  const Network net = build_network(cfg);
  const TrainResult trained = train(net, train_set, epochs, params, class_map,
                                    Rng::mix(g.seed, 0x7147));

  std::vector<std::vector<int>> confusion(
      class_map.n_classes, std::vector<int>(class_map.n_classes, 0));
  std::size_t correct = 0;
  for (std::size_t i = 0; i < test_set.size(); ++i) {
    const int predicted = predict(net, trained.weights, test_set[i], class_map,
                                  Rng::mix(g.seed, 0xe0a1 + i));
    if (predicted == test_set[i].label) ++correct;
    confusion[test_set[i].label][predicted] += 1;
  }

  {
    std::ofstream out(out_path(g, "weights.csv"));
    if (!out) throw std::runtime_error("cannot write weights.csv");
    char buf[32];
    for (int i = 0; i < cfg.n_input; ++i) {
      for (int j = 0; j < cfg.n_exc; ++j) {
        std::snprintf(buf, sizeof buf, "%.9g",
                      trained.weights[i * cfg.n_exc + j]);
        out << buf << (j + 1 < cfg.n_exc ? ',' : '\n');
      }
    }
  }
  write_json(out_path(g, "train.json"),
             json{{"epochs", epochs},
                  {"n_train", train_set.size()},
                  {"n_test", test_set.size()},
                  {"n_classes", class_map.n_classes},
                  {"mean_weight_per_epoch", trained.mean_weight_per_epoch},
                  {"test_accuracy",
                   test_set.empty()
                       ? 0.0
                       : static_cast<double>(correct) / test_set.size()},
                  {"confusion", confusion},
                  {"seed", g.seed}});
}

void cmd_eval(const GlobalOpts& g, const std::string& windows_dir, int folds,
              int epochs) {
  auto corpus = read_window_archive(windows_dir);
  const ClassMap class_map{static_cast<int>(label_histogram(corpus).size())};
  NetworkConfig cfg = network_from(g);
  cfg.adaptation = cfg.ei_balance = cfg.ff_inhibition = true;
  const Metrics m = evaluate(cfg, corpus, folds, epochs, trace_from(g),
                             class_map, g.seed);
  json j = metrics_to_json(m);
  j["folds"] = folds;
  j["epochs"] = epochs;
  j["seed"] = g.seed;
  write_json(out_path(g, "metrics.json"), j);
}

void cmd_ablate(const GlobalOpts& g, const std::string& windows_dir,
                int n_seeds, int epochs, double train_ratio) {
  auto corpus = read_window_archive(windows_dir);
  const ClassMap class_map{static_cast<int>(label_histogram(corpus).size())};
  std::vector<std::uint64_t> seeds;
  for (int i = 0; i < n_seeds; ++i) seeds.push_back(g.seed + i);

  const auto table = ablation_run(network_from(g), corpus, seeds, epochs,
                                  trace_from(g), class_map, train_ratio);

  {
    std::ofstream out(out_path(g, "ablation.csv"));
    if (!out) throw std::runtime_error("cannot write ablation.csv");
    out << "config,median_accuracy";
    for (int i = 0; i < n_seeds; ++i) out << ",seed" << i;
    out << '\n';
    char buf[32];
    for (const auto& row : table) {
      std::snprintf(buf, sizeof buf, "%.9g", row.median_accuracy);
      out << row.name << ',' << buf;
      for (double a : row.per_seed_accuracy) {
        std::snprintf(buf, sizeof buf, "%.9g", a);
        out << ',' << buf;
      }
      out << '\n';
    }
  }
  json rows = json::array();
  for (const auto& row : table) {
    rows.push_back(json{{"config", row.name},
                        {"median_accuracy", row.median_accuracy},
                        {"per_seed_accuracy", row.per_seed_accuracy}});
  }
  write_json(out_path(g, "ablation.json"),
             json{{"table", rows},
                  {"seeds", seeds},
                  {"epochs", epochs},
                  {"n_classes", class_map.n_classes}});
}

}  // namespace

int main(int argc, char** argv) {
  GlobalOpts g;

  CLI::App app{"spiking-network EMG classification toolkit"};
  app.require_subcommand(1);
  app.add_option("--seed", g.seed, "master random seed");
  app.add_option("--config", g.config_path, "JSON parameter file");
  app.add_option("--out", g.out_dir, "output directory");

  auto* synth = app.add_subcommand("synth", "emit a synthetic recording CSV");

  std::string enc_input, enc_method = "adm";
  auto* encode =
      app.add_subcommand("encode", "spike-encode a recording into windows");
  encode->add_option("--input", enc_input, "recording CSV with labels")
      ->required();
  encode->add_option("--method", enc_method, "adm|pfm")
      ->check(CLI::IsMember({"adm", "pfm"}));

  std::string curve_config = "Full";
  double curve_duration_ms = 1000.0;
  auto* curve = app.add_subcommand("curve", "input-output rate curve");
  curve->add_option("--config", curve_config,
                    "Base|+adapt|+EI|+FF|Full");
  curve->add_option("--duration-ms", curve_duration_ms,
                    "simulated time per rate point");

  std::vector<double> cal_grid{40, 60, 80, 100, 120, 150, 180, 220};
  double cal_duration_ms = 1000.0;
  auto* calibrate =
      app.add_subcommand("calibrate", "grid-search the weight-unit current");
  calibrate->add_option("--grid", cal_grid, "candidate i_w_base values (pA)")
      ->delimiter(',');
  calibrate->add_option("--duration-ms", cal_duration_ms,
                        "simulated time per rate point");

  std::string windows_dir;
  int epochs = 3, folds = 3, n_seeds = 3;
  double train_ratio = 0.8;
  auto* train_cmd =
      app.add_subcommand("train", "train the readout on a window archive");
  train_cmd->add_option("--windows", windows_dir, "window archive directory")
      ->required();
  train_cmd->add_option("--epochs", epochs, "training epochs");
  train_cmd->add_option("--train-ratio", train_ratio, "train split fraction");

  auto* eval_cmd = app.add_subcommand("eval", "k-fold cross validation");
  eval_cmd->add_option("--windows", windows_dir, "window archive directory")
      ->required();
  eval_cmd->add_option("--folds", folds, "number of folds");
  eval_cmd->add_option("--epochs", epochs, "training epochs");

  auto* ablate =
      app.add_subcommand("ablate", "accuracy across the ablation ladder");
  ablate->add_option("--windows", windows_dir, "window archive directory")
      ->required();
  ablate->add_option("--seeds", n_seeds, "number of consecutive seeds");
  ablate->add_option("--epochs", epochs, "training epochs");
  ablate->add_option("--train-ratio", train_ratio, "train split fraction");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::cerr << json{{"error", {{"type", "usage"},
                                 {"message", e.what()}}}}.dump()
              << '\n';
    return e.get_exit_code();
  }

  try {
    load_config(g);
    if (synth->parsed()) cmd_synth(g);
    if (encode->parsed()) cmd_encode(g, enc_input, enc_method);
    if (curve->parsed()) cmd_curve(g, curve_config, curve_duration_ms);
    if (calibrate->parsed()) cmd_calibrate(g, cal_grid, cal_duration_ms);
    if (train_cmd->parsed()) cmd_train(g, windows_dir, epochs, train_ratio);
    if (eval_cmd->parsed()) cmd_eval(g, windows_dir, folds, epochs);
    if (ablate->parsed())
      cmd_ablate(g, windows_dir, n_seeds, epochs, train_ratio);
  } catch (const std::exception& e) {
    std::cerr << json{{"error", {{"type", "runtime"},
                                 {"message", e.what()}}}}.dump()
              << '\n';
    return 1;
  }
  return 0;
}
