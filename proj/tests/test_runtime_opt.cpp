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
#include <vector>

#include "sqpe/compiler.hpp"
#include "sqpe/estimator.hpp"
#include "sqpe/runtime_opt.hpp"
#include "support/oracles.hpp"

using namespace sqpe;

namespace {

PauliSum toy_hamiltonian() {
  return normalize_hamiltonian({{0.2, PauliString::from_letters("IIZ")},
                                {0.1, PauliString::from_letters("ZIX")},
                                {0.15, PauliString::from_letters("IZI")},
                                {0.25, PauliString::from_letters("IZZ")}},
                               0.05);
}

// the tiny synthetic instance used throughout: d = 2, tau*lambda = 0.8
FourierSeries tiny_series() {
  return build_series(FourierParams{0.1, 0.3, 2, 2.0});
}

struct TinyEval {
  double a;
  double n_g;
  double n_s;
};

TinyEval tiny_eval(const FourierSeries& s, const std::vector<long>& r,
                   double taulam, double margin) {
  double a = 0.0, num = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    const double t = -static_cast<double>(2 * i + 1) * taulam;
    const double mu = std::pow(normalization_sum(t, r[i], 1e-14).value,
                               static_cast<double>(r[i]));
    a += s.magnitudes()[i] * mu;
    num += s.magnitudes()[i] * mu * static_cast<double>(r[i]);
  }
  return {a, num / a, 8.0 * (a / margin) * (a / margin)};
}

}  // namespace

TEST_CASE("gate_cost: constant runtime vectors average to the constant") {
  const auto s = tiny_series();
  for (long c : {1L, 3L, 7L}) {
    RuntimeVector rv;
    for (std::size_t i = 0; i < 3; ++i) {
      rv.t.push_back(-static_cast<double>(2 * i + 1) * 0.8);
      rv.r.push_back(c);
    }
    CHECK(gate_cost(s, rv, 1e-14) ==
          doctest::Approx(static_cast<double>(c)).epsilon(1e-12));
  }
}

TEST_CASE("gate_cost: the default runtime satisfies the asymptotic bound") {
  const auto h = toy_hamiltonian();
  const auto s = build_series(choose_params(0.1, h.tau() * 0.05));
  const auto rv = default_runtime(s, h.tau(), h.lambda());
  const double ng = gate_cost(s, rv, 1e-14);
  long rmax = 1;
  for (long r : rv.r) rmax = std::max(rmax, r);
  CHECK(ng >= 1.0);
  CHECK(ng <= static_cast<double>(rmax));
  const double bound =
      2.0 * std::pow(std::ceil((2.0 * s.d() + 1.0) * h.lambda() * h.tau()), 2.0);
  CHECK(ng <= bound);
  CHECK(static_cast<double>(rmax) <= bound);
}

TEST_CASE("gate_cost: tiny instance matches the enumeration oracle") {
  const auto h = normalize_hamiltonian(
      {{0.6, PauliString::from_letters("X")},
       {-0.4, PauliString::from_letters("Z")}},
      0.2);
  const auto s = tiny_series();
  RuntimeVector rv;
  const std::vector<long> rs{1, 2, 3};
  for (std::size_t i = 0; i < 3; ++i) {
    rv.t.push_back(-static_cast<double>(2 * i + 1) * 0.35);
    rv.r.push_back(rs[i]);
  }
  std::vector<double> p;
  for (const auto& w : probability_weights(h)) p.push_back(w.probability);
  double a_oracle = 0.0, num_oracle = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    const double seg = oracles::enumerate_segment_sum(rv.t[i], rv.r[i], p, 16);
    const double w = s.magnitudes()[i] * std::pow(seg, double(rv.r[i]));
    a_oracle += w;
    num_oracle += w * static_cast<double>(rv.r[i]);
  }
  CHECK(gate_cost(s, rv, 1e-14) ==
        doctest::Approx(num_oracle / a_oracle).epsilon(1e-9));
}

TEST_CASE("gate_cost equals the empirical mean rotation count (3 sigma)") {
  const auto h = toy_hamiltonian();
  const auto eig = diagonalize(h);
  const auto phi = make_trial_state(eig, 0.25, 3);
  const auto s = build_series(choose_params(0.1, h.tau() * 0.05));
  const auto rv = default_runtime(s, h.tau(), h.lambda());
  EstimatorConfig cfg{0.25, 0.1, 0.1, ShotMode::single_shot};

  // count rotations per sampled circuit by replaying the same j marginal
  // and sampling unitaries through the public factor-list path
  const long N = 100000;
  const auto set = collect_samples(h, phi, s, rv, cfg, N, 3141, 2);
  double mean = 0.0, var = 0.0;
  for (const auto& rec : set.records) {
    const std::size_t i = static_cast<std::size_t>((rec.j - 1) / 2);
    mean += static_cast<double>(rv.r[i]);
  }
  mean /= static_cast<double>(N);
  for (const auto& rec : set.records) {
    const std::size_t i = static_cast<std::size_t>((rec.j - 1) / 2);
    const double d = static_cast<double>(rv.r[i]) - mean;
    var += d * d;
  }
  var /= static_cast<double>(N - 1);
  const double se = std::sqrt(var / static_cast<double>(N));
  CHECK(std::abs(mean - gate_cost(s, rv, 1e-14)) <= 3.0 * se);
}

TEST_CASE("default_runtime: clamping and direct values") {
  const auto s = tiny_series();
  // tau*lambda = 0 -> all r_j = 1
  const auto rv0 = default_runtime(s, 0.0, 0.7);
  for (long r : rv0.r) CHECK(r == 1);

  // |t_1| = 1 -> r_1 = 2
  const auto rv1 = default_runtime(s, 1.0, 1.0);
  CHECK(rv1.r[0] == 2);

  // toy-Hamiltonian scale: r_1 = ceil(2 (tau*lambda)^2) = 5
  const auto h = toy_hamiltonian();
  const auto rvc = default_runtime(s, h.tau(), h.lambda());
  CHECK(rvc.r[0] == 5);

  // per-segment normalization stays below sqrt(e) + eps_c
  for (std::size_t i = 0; i < rvc.size(); ++i)
    CHECK(normalization_sum(rvc.t[i], rvc.r[i], 1e-14).value <=
          std::sqrt(std::exp(1.0)) + 1e-12);
}

TEST_CASE("optimize_runtime: relaxing b_g never increases N~_s") {
  const auto s = tiny_series();
  EstimatorConfig cfg{0.25, 0.0625, 0.1, ShotMode::single_shot};
  OptimizerOptions opts;
  opts.r_cap = 64;
  double prev = 1e300;
  for (double bg : {1.0, 1.5, 2.0, 3.0, 5.0, 9.0}) {
    const auto p = optimize_runtime(s, cfg, OptimizeMode::min_samples_bounded,
                                    1.0, 0.8, bg, opts);
    CHECK(p.n_g <= bg + 1e-12);
    CHECK(p.n_s_scaled <= prev + 1e-12);
    prev = p.n_s_scaled;
  }
  CHECK_THROWS_AS(optimize_runtime(s, cfg, OptimizeMode::min_samples_bounded,
                                   1.0, 0.8, 0.5, opts),
                  std::invalid_argument);
}

TEST_CASE("optimize_runtime: mode-1 optimum beats the default choice") {
  const auto h = toy_hamiltonian();
  const auto s = build_series(choose_params(0.1, h.tau() * 0.05));
  EstimatorConfig cfg{0.25, 0.1, 0.1, ShotMode::single_shot};
  const auto opt = optimize_runtime(s, cfg, OptimizeMode::min_total, h.tau(),
                                    h.lambda());
  const auto rv_quad = default_runtime(s, h.tau(), h.lambda());
  const double margin = cfg.eta / 2.0 - cfg.epsilon;
  const double a_quad = compute_a(s, rv_quad, 1e-14);
  const double prod_quad =
      8.0 * (a_quad / margin) * (a_quad / margin) * gate_cost(s, rv_quad, 1e-14);
  CHECK(opt.n_s_scaled * opt.n_g <= prod_quad + 1e-9);
}

TEST_CASE("optimize_runtime: mode-1 optimum bounds every curve point's product") {
  const auto s = tiny_series();
  EstimatorConfig cfg{0.25, 0.0625, 0.1, ShotMode::single_shot};
  OptimizerOptions opts;
  opts.r_cap = 16;
  const auto best =
      optimize_runtime(s, cfg, OptimizeMode::min_total, 1.0, 0.8, 0.0, opts);
  const std::vector<double> grid{1.0, 1.5, 2.0, 3.0, 5.0, 8.0, 12.0};
  const auto curve = tradeoff_curve(s, cfg, 1.0, 0.8, grid, opts);
  for (const auto& p : curve)
    CHECK(best.n_s_scaled * best.n_g <= p.n_s_scaled * p.n_g + 1e-9);
}

TEST_CASE("tradeoff_curve: monotone and exhaustive-exact on the tiny instance") {
  const auto s = tiny_series();
  EstimatorConfig cfg{0.25, 0.0625, 0.1, ShotMode::single_shot};
  const double margin = cfg.eta / 2.0 - cfg.epsilon;
  OptimizerOptions opts;
  opts.r_cap = 6;  // shared box constraint with the oracle

  std::vector<double> grid{1.0, 1.2, 1.5, 1.8, 2.0, 2.5, 3.0, 3.5, 4.0, 5.0};
  const auto curve = tradeoff_curve(s, cfg, 1.0, 0.8, grid, opts);
  REQUIRE(curve.size() == grid.size());

  double prev = 1e300;
  for (const auto& p : curve) {
    CHECK(p.n_s_scaled <= prev + 1e-12);
    prev = p.n_s_scaled;
  }

  // exhaustive enumeration over r in {1..6}^3
  for (std::size_t gi = 0; gi < grid.size(); ++gi) {
    double best = 1e300;
    for (long r1 = 1; r1 <= 6; ++r1)
      for (long r2 = 1; r2 <= 6; ++r2)
        for (long r3 = 1; r3 <= 6; ++r3) {
          const auto e = tiny_eval(s, {r1, r2, r3}, 0.8, margin);
          if (e.n_g <= grid[gi] && e.n_s < best) best = e.n_s;
        }
    CHECK(curve[gi].n_s_scaled == doctest::Approx(best).epsilon(1e-9));
  }

  // all-infeasible grid errors out
  std::vector<double> bad{0.2, 0.5};
  CHECK_THROWS_AS(tradeoff_curve(s, cfg, 1.0, 0.8, bad, opts),
                  std::runtime_error);
}
