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

#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "sqpe/fourier.hpp"

using namespace sqpe;
using Complex = std::complex<double>;

namespace {
constexpr double kPi = 3.14159265358979323846;

// e^{-beta} I_n(beta) by the power series in log space (test oracle,
// independent of the Miller recurrence used by the library).
double scaled_bessel_series(int n, double beta) {
  double sum = 0.0;
  const double lh = std::log(beta / 2.0);
  for (int k = 0; k < 4000; ++k) {
    const double lt = (n + 2.0 * k) * lh - beta - std::lgamma(k + 1.0) -
                      std::lgamma(n + k + 1.0);
    const double t = std::exp(lt);
    sum += t;
    if (k > beta / 2 && t < 1e-22 * sum) break;
  }
  return sum;
}

// e^{-beta} I_j(beta) as the Fourier integral of the periodic kernel
// e^{-beta(1-cos theta)}; trapezoid on the period is spectrally accurate.
double scaled_bessel_quadrature(int j, double beta) {
  const int n = 1 << 14;
  double acc = 0.0;
  for (int k = 0; k <= n; ++k) {
    const double th = kPi * k / n;
    const double w = (k == 0 || k == n) ? 0.5 : 1.0;
    acc += w * std::exp(-beta * (1.0 - std::cos(th))) * std::cos(j * th);
  }
  return acc / n;
}

}  // namespace

TEST_CASE("lambert_w0: fixed points and residuals") {
  CHECK(lambert_w0(0.0) == 0.0);
  CHECK(lambert_w0(std::exp(1.0)) == doctest::Approx(1.0).epsilon(1e-14));
  // frozen 20-digit reference
  CHECK(lambert_w0(10.0) ==
        doctest::Approx(1.7455280027406993831).epsilon(1e-14));
  for (double x : {1e-6, 0.1, 1.0, 10.0, 95.4929658551372, 1e8}) {
    const double w = lambert_w0(x);
    CHECK(std::abs(w * std::exp(w) - x) <= 1e-12 * std::max(1.0, x));
  }
  CHECK_THROWS_AS(lambert_w0(-1.0), std::invalid_argument);
}

TEST_CASE("scaled_bessel_i: small-argument limits") {
  CHECK(scaled_bessel_i(0, 1e-12) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(scaled_bessel_i(1, 1e-12) == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("scaled_bessel_i: recurrence vs power series vs quadrature") {
  // frozen 20-digit references
  CHECK(scaled_bessel_i(3, 50.0) ==
        doctest::Approx(0.05164737175755632952).epsilon(1e-13));
  CHECK(scaled_bessel_i(0, 5.0) ==
        doctest::Approx(0.18354081260932835307).epsilon(1e-13));
  for (int n : {0, 1, 3, 7}) {
    for (double beta : {1.0, 5.0, 50.0, 300.0}) {
      const double miller = scaled_bessel_i(n, beta);
      const double series = scaled_bessel_series(n, beta);
      CHECK(miller == doctest::Approx(series).epsilon(1e-10));
    }
    CHECK(scaled_bessel_i(n, 12.0) ==
          doctest::Approx(scaled_bessel_quadrature(n, 12.0)).epsilon(1e-12));
  }
  // decreasing in n for fixed beta; stable for very large beta
  double prev = scaled_bessel_i(0, 1e6);
  CHECK(std::isfinite(prev));
  for (int n = 1; n <= 5; ++n) {
    const double cur = scaled_bessel_i(n, 1e6);
    CHECK(cur > 0.0);
    CHECK(cur < prev);
    prev = cur;
  }
  CHECK_THROWS_AS(scaled_bessel_i(-1, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(scaled_bessel_i(0, 0.0), std::invalid_argument);
}

TEST_CASE("choose_params: beta formula and clamp") {
  // eps = 0.1, delta = pi/4: beta = W(3/(pi*0.01)) / (4 sin^2(pi/4)) = W/2
  const auto p = choose_params(0.1, kPi / 4.0);
  CHECK(p.beta == doctest::Approx(1.675035518931275469).epsilon(1e-13));
  CHECK(p.d >= 1);

  // large eps and delta drive the formula below 1 -> clamped
  const auto q = choose_params(0.49, 1.5);
  CHECK(q.beta == 1.0);
  CHECK_THROWS_AS(choose_params(0.6, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(choose_params(0.1, 2.0), std::invalid_argument);
}

TEST_CASE("choose_params: band error satisfied on a 10^4 grid, d minimal") {
  const auto params = choose_params(0.1, 0.057);
  const auto series = build_series(params);
  CHECK(band_error(series, params.delta_band, 10000) <= 0.1);
  if (params.d > 1) {
    auto smaller = params;
    smaller.d -= 1;
    CHECK(band_error(build_series(smaller), params.delta_band, 10000) > 0.1);
  }
}

TEST_CASE("build_series: structure and quadrature oracle at d=3, beta=5") {
  const FourierParams params{0.1, 0.3, 3, 5.0};
  const auto s = build_series(params);
  CHECK(s.f0() == 0.5);
  REQUIRE(s.magnitudes().size() == 4);

  // reconstructed coefficients: F_0 = 1/2, F_k = -i|F_k|, F_{-k} = -F_k
  CHECK(s.coefficient(0) == Complex{0.5, 0.0});
  for (long k : {1L, 3L, 5L, 7L}) {
    const auto f = s.coefficient(k);
    CHECK(f.real() == 0.0);
    CHECK(f.imag() < 0.0);
    CHECK(s.coefficient(-k) == -f);
  }
  CHECK(s.coefficient(2) == Complex{0.0, 0.0});
  CHECK(s.coefficient(9) == Complex{0.0, 0.0});

  // numerical Fourier-integral oracle for the magnitudes
  const double pref = std::sqrt(5.0 / (2.0 * kPi));
  const double i0 = scaled_bessel_quadrature(0, 5.0);
  const double i1 = scaled_bessel_quadrature(1, 5.0);
  const double i2 = scaled_bessel_quadrature(2, 5.0);
  const double i3 = scaled_bessel_quadrature(3, 5.0);
  const double expected[4] = {pref * (i0 + i1) / 1.0, pref * (i1 + i2) / 3.0,
                              pref * (i2 + i3) / 5.0, pref * i3 / 7.0};
  for (int j = 0; j < 4; ++j)
    CHECK(s.magnitudes()[j] == doctest::Approx(expected[j]).epsilon(1e-8));
}

TEST_CASE("evaluate: exact values and band targets") {
  const auto params = choose_params(0.05, 0.1);
  const auto s = build_series(params);
  CHECK(evaluate(s, 0.0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(std::abs(evaluate(s, kPi / 2.0) - 1.0) <= 0.05);
  CHECK(std::abs(evaluate(s, -kPi / 2.0) - 0.0) <= 0.05);
}

TEST_CASE("series invariants: global bound, antisymmetry, periodicity") {
  const auto params = choose_params(0.1, 0.2);
  const auto s = build_series(params);
  const double eps = 0.1;
  for (int k = 0; k <= 4000; ++k) {
    const double x = -kPi + 2.0 * kPi * k / 4000.0;
    const double f = evaluate(s, x);
    CHECK(f >= -eps - 1e-9);
    CHECK(f <= 1.0 + eps + 1e-9);
    CHECK(std::abs(evaluate(s, -x) - (1.0 - f)) < 1e-12);
    CHECK(std::abs(evaluate(s, x + 2.0 * kPi) - f) < 1e-12);
  }
}

TEST_CASE("heaviside_periodic") {
  CHECK(heaviside_periodic(0.5) == 1.0);
  CHECK(heaviside_periodic(-0.5) == 0.0);
  CHECK(heaviside_periodic(0.5 + 2 * kPi) == 1.0);
  CHECK(heaviside_periodic(-0.5 - 2 * kPi) == 0.0);
  CHECK(heaviside_periodic(0.0) == 1.0);
}
