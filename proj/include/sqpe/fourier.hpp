// Copyright 2026 The sqpe authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace sqpe {

/// Parameters of the smoothed-step Fourier approximation: target band error
/// epsilon, band margin delta_band, truncation order d and damping beta.
struct FourierParams {
  double epsilon;
  double delta_band;
  int d;
  double beta;
};

/// The truncated Fourier approximation F(x) of the 2*pi-periodic unit step.
/// Only the magnitudes |F_k| on the odd positive frequencies k = 2j+1,
/// j = 0..d are stored; the full coefficient set is
///   F_0 = 1/2,   F_k = -i|F_k| (k > 0),   F_{-k} = -F_k,
/// so F(x) = 1/2 + 2 * sum_j |F_{2j+1}| sin((2j+1) x) is real.
class FourierSeries {
 public:
  const FourierParams& params() const { return params_; }
  int d() const { return params_.d; }
  /// |F_{2j+1}| for j = 0..d (entries below 1e-300 are zeroed out).
  std::span<const double> magnitudes() const { return magnitudes_; }
  double f0() const { return 0.5; }
  /// sum over all k in S1 of |F_k| (= 1/2 + 2 * sum of magnitudes).
  double magnitude_sum() const { return magnitude_sum_; }
  /// How many coefficients were dropped for being below 1e-300.
  int dropped_count() const { return dropped_count_; }

  /// Full complex coefficient for any integer frequency k.
  std::complex<double> coefficient(long k) const;

 private:
  friend FourierSeries build_series(const FourierParams& params);
  FourierParams params_{};
  std::vector<double> magnitudes_;
  double magnitude_sum_ = 0.0;
  int dropped_count_ = 0;
};

/// Principal branch of the Lambert W function for x >= 0
/// (W(x) e^{W(x)} = x, relative residual below 1e-12).
double lambert_w0(double x);

/// Exponentially scaled modified Bessel of the first kind, e^{-beta} I_n(beta).
/// Stable for beta up to ~1e6; computed by Miller's backward recurrence
/// normalized with e^{-beta}(I_0 + 2 sum I_k) = 1.
double scaled_bessel_i(int n, double beta);

/// e^{-beta} I_n(beta) for n = 0..n_max in one backward pass.
std::vector<double> scaled_bessel_row(int n_max, double beta);

/// The 2*pi-periodic unit step: 1 on [0, pi), 0 on [-pi, 0).
double heaviside_periodic(double x);

/// Selects (d, beta): beta = max{ W(3/(pi eps^2))/(4 sin^2 delta), 1 } and d
/// as the smallest truncation whose measured sup-error over a dense grid of
/// the band [delta, pi-delta] (and its mirror) is <= eps. The grid is denser
/// than 10^4 points per half-band, so any coarser re-measurement also passes.
FourierParams choose_params(double epsilon, double delta_band);

/// Coefficient magnitudes for the given (d, beta):
///   |F_{2j+1}| = sqrt(beta/2pi) e^{-beta} (I_j + I_{j+1})(beta) / (2j+1)
/// for j < d, and the boundary term |F_{2d+1}| uses I_d(beta)/(2d+1).
FourierSeries build_series(const FourierParams& params);

/// F(x) = 1/2 + 2 sum_j |F_{2j+1}| sin((2j+1)x); real, 2*pi-periodic,
/// within [-eps, 1+eps] everywhere for parameters from choose_params.
double evaluate(const FourierSeries& series, double x);

/// Max |step(x) - F(x)| over a grid of the band (both halves), n_points per
/// half-band, endpoints included.
double band_error(const FourierSeries& series, double delta_band,
                  std::size_t n_points);

}  // namespace sqpe
