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

#include "sqpe/runtime_opt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_map>

#include "sqpe/compiler.hpp"

namespace sqpe {

double gate_cost(const FourierSeries& series, const RuntimeVector& rv,
                 double epsilon_c) {
  const auto mags = series.magnitudes();
  if (rv.size() != mags.size())
    throw std::invalid_argument("gate_cost: runtime vector / series mismatch");
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < mags.size(); ++i) {
    const double mu =
        std::pow(normalization_sum(rv.t[i], rv.r[i], epsilon_c).value,
                 static_cast<double>(rv.r[i]));
    num += mags[i] * mu * static_cast<double>(rv.r[i]);
    den += mags[i] * mu;
  }
  return num / den;
}

RuntimeVector default_runtime(const FourierSeries& series, double tau,
                              double lambda) {
  RuntimeVector rv;
  const std::size_t n = series.magnitudes().size();
  rv.r.resize(n);
  rv.t.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = -static_cast<double>(2 * i + 1) * tau * lambda;
    rv.t[i] = t;
    rv.r[i] = std::max<long>(1, static_cast<long>(std::ceil(2.0 * t * t)));
  }
  return rv;
}

namespace {

/// Memoized per-frequency weights w_j(r) = |F_j| mu_j(r) over candidate r.
class CostModel {
 public:
  CostModel(const FourierSeries& series, double tau, double lambda,
            const EstimatorConfig& cfg, double epsilon_c)
      : mags_(series.magnitudes().begin(), series.magnitudes().end()),
        epsilon_c_(epsilon_c) {
    const double margin = cfg.eta / 2.0 - cfg.epsilon;
    if (!(margin > 0.0))
      throw std::invalid_argument("optimize_runtime: epsilon must be < eta/2");
    margin_ = margin;
    t_.resize(mags_.size());
    cache_.resize(mags_.size());
    for (std::size_t i = 0; i < t_.size(); ++i)
      t_[i] = -static_cast<double>(2 * i + 1) * tau * lambda;
  }

  double weight(std::size_t i, long r) const {
    auto& memo = cache_[i];
    auto it = memo.find(r);
    if (it != memo.end()) return it->second;
    const double mu = std::pow(normalization_sum(t_[i], r, epsilon_c_).value,
                               static_cast<double>(r));
    const double w = mags_[i] * mu;
    memo.emplace(r, w);
    return w;
  }

  struct Eval {
    double a;
    double n_g;
    double n_s_scaled;
  };

  Eval evaluate(std::span<const long> r) const {
    double a = 0.0, num = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) {
      const double w = weight(i, r[i]);
      a += w;
      num += w * static_cast<double>(r[i]);
    }
    const double q = a / margin_;
    return {a, num / a, 8.0 * q * q};
  }

  std::size_t size() const { return mags_.size(); }
  std::span<const double> t() const { return t_; }

 private:
  std::vector<double> mags_;
  std::vector<double> t_;
  double epsilon_c_;
  double margin_ = 0.0;
  mutable std::vector<std::unordered_map<long, double>> cache_;
};

std::vector<long> family_vector(std::span<const double> t, double c,
                                long r_cap) {
  std::vector<long> r(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double v = std::ceil(c * t[i] * t[i]);
    r[i] = std::clamp<long>(static_cast<long>(v), 1, r_cap);
  }
  return r;
}

std::vector<long> candidate_values(long current, long r_cap) {
  if (r_cap <= 64) {
    std::vector<long> vals(static_cast<std::size_t>(r_cap));
    for (long v = 1; v <= r_cap; ++v) vals[v - 1] = v;
    return vals;
  }
  std::vector<long> vals;
  for (long v = 1; v <= r_cap;) {
    vals.push_back(v);
    v = std::max(v + 1, static_cast<long>(std::ceil(1.4 * v)));
  }
  for (long d = -2; d <= 2; ++d) {
    const long v = current + d;
    if (v >= 1 && v <= r_cap) vals.push_back(v);
  }
  std::sort(vals.begin(), vals.end());
  vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
  return vals;
}

// Objective per mode; infinity when infeasible.
double objective(const CostModel::Eval& e, OptimizeMode mode, double b_g) {
  if (mode == OptimizeMode::min_total) return e.n_s_scaled * e.n_g;
  return e.n_g <= b_g ? e.n_s_scaled : std::numeric_limits<double>::infinity();
}

std::pair<double, std::vector<long>> refine(const CostModel& model,
                                            std::vector<long> seed,
                                            OptimizeMode mode, double b_g,
                                            long r_cap) {
  double best = objective(model.evaluate(seed), mode, b_g);
  // walk down toward the all-ones vector until feasible
  while (!std::isfinite(best)) {
    auto it = std::max_element(seed.begin(), seed.end());
    if (*it == 1) return {best, seed};
    --*it;
    best = objective(model.evaluate(seed), mode, b_g);
  }
  std::vector<long> best_r = seed;

  const bool pair_moves = model.size() <= 8 && r_cap <= 16;
  std::vector<long> cand;
  auto propose = [&](const std::vector<long>& base) {
    const double val = objective(model.evaluate(base), mode, b_g);
    if (val < best - 1e-15) {
      best = val;
      best_r = base;
      return true;
    }
    return false;
  };

  bool improved = true;
  while (improved) {
    improved = false;
    for (std::size_t i = 0; i < best_r.size(); ++i) {
      for (long v : candidate_values(best_r[i], r_cap)) {
        if (v == best_r[i]) continue;
        cand = best_r;
        cand[i] = v;
        improved |= propose(cand);
      }
    }
    if (pair_moves) {
      for (std::size_t i = 0; i < best_r.size(); ++i) {
        for (std::size_t k = 0; k < best_r.size(); ++k) {
          if (i == k) continue;
          for (long vi = 1; vi <= r_cap; ++vi) {
            for (long vk = 1; vk <= r_cap; ++vk) {
              cand = best_r;
              cand[i] = vi;
              cand[k] = vk;
              improved |= propose(cand);
            }
          }
        }
      }
    }
  }
  return {best, best_r};
}

CostPoint finish_point(const CostModel& model, const std::vector<long>& r,
                       double c_param, double b_g) {
  const auto e = model.evaluate(r);
  CostPoint p;
  p.r.r = r;
  p.r.t.assign(model.t().begin(), model.t().end());
  p.n_g = e.n_g;
  p.n_s_scaled = e.n_s_scaled;
  p.a_value = e.a;
  p.c_param = c_param;
  p.b_g = b_g;
  return p;
}

CostPoint optimize_impl(const CostModel& model, OptimizeMode mode, double b_g,
                        const OptimizerOptions& options,
                        const std::vector<long>* warm_start) {
  const double c18 = 2.0;
  double best = std::numeric_limits<double>::infinity();
  std::vector<long> best_r;
  double best_c = 0.0;

  auto consider = [&](std::vector<long> seed, double c) {
    auto [val, r] = refine(model, std::move(seed), mode, b_g, options.r_cap);
    if (val < best - 1e-15) {
      best = val;
      best_r = std::move(r);
      best_c = c;
    }
  };

  consider(family_vector(model.t(), c18, options.r_cap), c18);
  for (int k = 0; k < options.c_grid_points; ++k) {
    const double u = options.c_grid_points == 1
                         ? 0.0
                         : static_cast<double>(k) /
                               static_cast<double>(options.c_grid_points - 1);
    const double c = 0.1 * c18 * std::pow(100.0, u);  // [0.1, 10] x c18
    consider(family_vector(model.t(), c, options.r_cap), c);
  }
  if (warm_start != nullptr) consider(*warm_start, 0.0);

  if (!std::isfinite(best))
    throw std::runtime_error(
        "optimize_runtime: infeasible gate bound b_g (below the minimal "
        "achievable N_g)");
  return finish_point(model, best_r, best_c, b_g);
}

}  // namespace

CostPoint optimize_runtime(const FourierSeries& series,
                           const EstimatorConfig& cfg, OptimizeMode mode,
                           double tau, double lambda, double b_g,
                           const OptimizerOptions& options) {
  if (mode == OptimizeMode::min_samples_bounded && !(b_g >= 1.0))
    throw std::invalid_argument("optimize_runtime: b_g must be >= 1");
  CostModel model(series, tau, lambda, cfg, options.epsilon_c);
  return optimize_impl(model, mode, b_g, options, nullptr);
}

std::vector<CostPoint> tradeoff_curve(const FourierSeries& series,
                                      const EstimatorConfig& cfg, double tau,
                                      double lambda,
                                      std::span<const double> b_g_grid,
                                      const OptimizerOptions& options) {
  for (std::size_t k = 1; k < b_g_grid.size(); ++k)
    if (!(b_g_grid[k] > b_g_grid[k - 1]))
      throw std::invalid_argument("tradeoff_curve: b_g grid must be ascending");
  CostModel model(series, tau, lambda, cfg, options.epsilon_c);
  std::vector<CostPoint> curve;
  const std::vector<long>* warm = nullptr;
  std::vector<long> prev;
  for (double bg : b_g_grid) {
    try {
      CostPoint p = optimize_impl(model, OptimizeMode::min_samples_bounded, bg,
                                  options, warm);
      prev = p.r.r;
      warm = &prev;
      curve.push_back(std::move(p));
    } catch (const std::runtime_error&) {
      // infeasible bound: skip this grid entry
    }
  }
  if (curve.empty())
    throw std::runtime_error("tradeoff_curve: every b_g in the grid is infeasible");
  return curve;
}

}  // namespace sqpe
