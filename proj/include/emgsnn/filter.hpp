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

#ifndef EMGSNN_FILTER_HPP
#define EMGSNN_FILTER_HPP

#include <span>
#include <vector>

namespace emgsnn {

// Direct form II transposed biquad section.
struct Biquad {
  double b0 = 1.0, b1 = 0.0, b2 = 0.0;
  double a1 = 0.0, a2 = 0.0;
  double z1 = 0.0, z2 = 0.0;

  double process(double x) {
    const double y = b0 * x + z1;
    z1 = b1 * x - a1 * y + z2;
    z2 = b2 * x - a2 * y;
    return y;
  }

  void reset() { z1 = z2 = 0.0; }
};

// Second-order Butterworth sections via the bilinear transform (RBJ
// coefficients). fc must lie strictly inside (0, fs/2). The default Q is a
// standalone 2nd-order Butterworth; pass the pole Qs of a higher-order
// design to build cascades.
Biquad butterworth_lowpass(double fc_hz, double fs_hz, double q = 0.7071067811865476);
Biquad butterworth_highpass(double fc_hz, double fs_hz, double q = 0.7071067811865476);

// Causal band-pass built from 4th-order Butterworth edges (two biquads per
// edge; pole Qs 0.5412 and 1.3066). The steep skirts keep adjacent bands
// separated by an order of magnitude in energy. When the high edge sits at
// or above ~Nyquist the low-pass stage is omitted and the band degenerates
// to a high-pass.
class BandpassFilter {
 public:
  BandpassFilter(double low_hz, double high_hz, double fs_hz);

  double process(double x);
  void reset();
  std::vector<double> apply(std::span<const double> signal);

 private:
  Biquad hp1_, hp2_;
  Biquad lp1_, lp2_;
  bool has_lp_ = true;
};

}  // namespace emgsnn

#endif  // EMGSNN_FILTER_HPP
