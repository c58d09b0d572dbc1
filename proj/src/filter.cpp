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

#include "emgsnn/filter.hpp"

#include <cmath>
#include <stdexcept>

namespace emgsnn {

namespace {
// Pole quality factors of a 4th-order Butterworth: 1/(2 cos(pi/8)) and
// 1/(2 cos(3 pi/8)).
constexpr double kButter4Q1 = 0.5411961001461969;
constexpr double kButter4Q2 = 1.3065629648763766;

void check_edge(double fc_hz, double fs_hz) {
  if (fs_hz <= 0.0 || fc_hz <= 0.0 || fc_hz >= 0.5 * fs_hz) {
    throw std::invalid_argument("filter: corner must lie in (0, fs/2)");
  }
}
}  // namespace

Biquad butterworth_lowpass(double fc_hz, double fs_hz, double q) {
  check_edge(fc_hz, fs_hz);
  const double w0 = 2.0 * M_PI * fc_hz / fs_hz;
  const double cw = std::cos(w0);
  const double alpha = std::sin(w0) / (2.0 * q);
  const double a0 = 1.0 + alpha;
  Biquad b;
  b.b0 = (1.0 - cw) / 2.0 / a0;
  b.b1 = (1.0 - cw) / a0;
  b.b2 = b.b0;
  b.a1 = -2.0 * cw / a0;
  b.a2 = (1.0 - alpha) / a0;
  return b;
}

Biquad butterworth_highpass(double fc_hz, double fs_hz, double q) {
  check_edge(fc_hz, fs_hz);
  const double w0 = 2.0 * M_PI * fc_hz / fs_hz;
  const double cw = std::cos(w0);
  const double alpha = std::sin(w0) / (2.0 * q);
  const double a0 = 1.0 + alpha;
  Biquad b;
  b.b0 = (1.0 + cw) / 2.0 / a0;
  b.b1 = -(1.0 + cw) / a0;
  b.b2 = b.b0;
  b.a1 = -2.0 * cw / a0;
  b.a2 = (1.0 - alpha) / a0;
  return b;
}

BandpassFilter::BandpassFilter(double low_hz, double high_hz, double fs_hz) {
  if (high_hz <= low_hz) {
    throw std::invalid_argument("BandpassFilter: high edge must exceed low");
  }
  hp1_ = butterworth_highpass(low_hz, fs_hz, kButter4Q1);
  hp2_ = butterworth_highpass(low_hz, fs_hz, kButter4Q2);
  if (high_hz >= 0.49 * fs_hz) {
    has_lp_ = false;
  } else {
    lp1_ = butterworth_lowpass(high_hz, fs_hz, kButter4Q1);
    lp2_ = butterworth_lowpass(high_hz, fs_hz, kButter4Q2);
  }
}

double BandpassFilter::process(double x) {
  double y = hp2_.process(hp1_.process(x));
  if (has_lp_) y = lp2_.process(lp1_.process(y));
  return y;
}

void BandpassFilter::reset() {
  hp1_.reset();
  hp2_.reset();
  lp1_.reset();
  lp2_.reset();
}

std::vector<double> BandpassFilter::apply(std::span<const double> signal) {
  std::vector<double> out;
  out.reserve(signal.size());
  for (double x : signal) out.push_back(process(x));
  return out;
}

}  // namespace emgsnn
