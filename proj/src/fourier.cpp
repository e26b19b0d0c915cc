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

#include "sqpe/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sqpe {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kMagnitudeFloor = 1e-300;
constexpr std::size_t kBandGridPerHalf = 20001;
}  // namespace

double lambert_w0(double x) {
  if (x < 0.0) throw std::invalid_argument("lambert_w0: negative input");
  if (x == 0.0) return 0.0;
  // Initial guess: series for small x, asymptotic log-log for large x.
  double w;
  if (x < 1.0) {
    w = x * (1.0 - x + 1.5 * x * x);
  } else {
    const double l1 = std::log(x);
    const double l2 = std::log(std::max(l1, 1e-300));
    w = (l1 > 1.0) ? l1 - l2 + l2 / l1 : 0.5;
  }
  // Halley iteration on f(w) = w e^w - x.
  for (int it = 0; it < 100; ++it) {
    const double ew = std::exp(w);
    const double f = w * ew - x;
    const double step =
        f / (ew * (w + 1.0) - (w + 2.0) * f / (2.0 * w + 2.0));
    w -= step;
    if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(w))) break;
  }
  return w;
}

std::vector<double> scaled_bessel_row(int n_max, double beta) {
  if (n_max < 0) throw std::invalid_argument("scaled_bessel_i: n must be >= 0");
  if (!(beta > 0.0)) throw std::invalid_argument("scaled_bessel_i: beta must be > 0");
  // Miller's backward recurrence: I_{k-1} = I_{k+1} + (2k/beta) I_k, started
  // well above both n_max and the turnover k ~ beta, then normalized with
  // e^{-beta}(I_0 + 2 sum_{k>=1} I_k) = 1.
  const int start =
      n_max + static_cast<int>(10.0 * std::sqrt(std::max<double>(beta, n_max + 1))) + 20;
  std::vector<double> f(static_cast<std::size_t>(start) + 2, 0.0);
  f[start + 1] = 0.0;
  f[start] = 1e-280;
  for (int k = start; k >= 1; --k) {
    f[k - 1] = f[k + 1] + (2.0 * k / beta) * f[k];
    if (f[k - 1] > 1e260) {  // rescale to dodge overflow; ratios are preserved
      for (int j = k - 1; j <= start + 1; ++j) f[j] *= 1e-260;
    }
  }
  double norm = f[0];
  for (int k = 1; k <= start + 1; ++k) norm += 2.0 * f[k];
  f.resize(static_cast<std::size_t>(n_max) + 1);
  for (auto& v : f) v /= norm;
  return f;
}

double scaled_bessel_i(int n, double beta) {
  return scaled_bessel_row(n, beta)[static_cast<std::size_t>(n)];
}

double heaviside_periodic(double x) {
  double xm = std::fmod(x + kPi, 2.0 * kPi);
  if (xm < 0.0) xm += 2.0 * kPi;  // xm in [0, 2pi), step is 1 on [pi, 2pi)
  return xm >= kPi ? 1.0 : 0.0;
}

FourierSeries build_series(const FourierParams& params) {
  if (params.d < 1) throw std::invalid_argument("build_series: d must be >= 1");
  if (!(params.beta >= 1.0))
    throw std::invalid_argument("build_series: beta must be >= 1");
  const int d = params.d;
  const auto bessel = scaled_bessel_row(d + 1, params.beta);
  const double pref = std::sqrt(params.beta / (2.0 * kPi));

  FourierSeries s;
  s.params_ = params;
  s.magnitudes_.resize(static_cast<std::size_t>(d) + 1);
  for (int j = 0; j < d; ++j)
    s.magnitudes_[j] = pref * (bessel[j] + bessel[j + 1]) / (2.0 * j + 1.0);
  s.magnitudes_[d] = pref * bessel[d] / (2.0 * d + 1.0);

  double sum = 0.0;
  for (auto& m : s.magnitudes_) {
    if (m < kMagnitudeFloor) {
      m = 0.0;
      ++s.dropped_count_;
    }
    sum += m;
  }
  s.magnitude_sum_ = 0.5 + 2.0 * sum;
  return s;
}

std::complex<double> FourierSeries::coefficient(long k) const {
  if (k == 0) return {0.5, 0.0};
  const long a = k > 0 ? k : -k;
  if (a % 2 == 0 || (a - 1) / 2 > params_.d) return {0.0, 0.0};
  const double mag = magnitudes_[static_cast<std::size_t>((a - 1) / 2)];
  return k > 0 ? std::complex<double>{0.0, -mag} : std::complex<double>{0.0, mag};
}

double evaluate(const FourierSeries& series, double x) {
  // sin((2j+1)x) by the three-term recurrence, no trig in the loop.
  const double s1 = std::sin(x);
  const double c2 = 2.0 * std::cos(2.0 * x);
  double sk_prev = -s1;  // sin(-x)
  double sk = s1;        // sin(x)
  double acc = 0.0;
  for (double m : series.magnitudes()) {
    acc += m * sk;
    const double next = c2 * sk - sk_prev;
    sk_prev = sk;
    sk = next;
  }
  return 0.5 + 2.0 * acc;
}

double band_error(const FourierSeries& series, double delta_band,
                  std::size_t n_points) {
  if (n_points < 2) throw std::invalid_argument("band_error: grid too small");
  const double lo = delta_band, hi = kPi - delta_band;
  const double step = (hi - lo) / static_cast<double>(n_points - 1);
  double worst = 0.0;
  for (std::size_t i = 0; i < n_points; ++i) {
    const double x = lo + step * static_cast<double>(i);
    worst = std::max(worst, std::abs(1.0 - evaluate(series, x)));
    worst = std::max(worst, std::abs(0.0 - evaluate(series, -x)));
  }
  return worst;
}

FourierParams choose_params(double epsilon, double delta_band) {
  if (!(epsilon > 0.0 && epsilon < 0.5))
    throw std::invalid_argument("choose_params: epsilon must be in (0, 1/2)");
  if (!(delta_band > 0.0 && delta_band < kPi / 2.0))
    throw std::invalid_argument("choose_params: delta_band must be in (0, pi/2)");

  const double s = std::sin(delta_band);
  const double beta =
      std::max(lambert_w0(3.0 / (kPi * epsilon * epsilon)) / (4.0 * s * s), 1.0);

  auto passes = [&](int d) {
    FourierParams p{epsilon, delta_band, d, beta};
    return band_error(build_series(p), delta_band, kBandGridPerHalf) <= epsilon;
  };

  // Doubling then bisection for the smallest passing truncation.
  int d = 1;
  while (!passes(d)) {
    if (d > (1 << 17))
      throw std::runtime_error(
          "choose_params: band-error target unreachable (epsilon too small "
          "for this delta_band?)");
    d *= 2;
  }
  int lo = d / 2 + 1, hi = d;
  if (d == 1) lo = hi = 1;
  while (lo < hi) {
    const int mid = lo + (hi - lo) / 2;
    if (passes(mid))
      hi = mid;
    else
      lo = mid + 1;
  }
  return FourierParams{epsilon, delta_band, hi, beta};
}

}  // namespace sqpe
