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

#include "sqpe/solvers.hpp"

#include <cmath>
#include <stdexcept>

namespace sqpe {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

int predicted_iterations(double delta_band) {
  double w = kPi;
  int iters = 0;
  while (w > 2.0 * delta_band && iters < 1024) {
    w = 0.5 * w + 2.0 * delta_band / 3.0;
    ++iters;
  }
  return iters;
}

SearchTrace binary_search_gse(const std::function<double(double)>& acdf_query,
                              const SearchConfig& cfg) {
  if (!(cfg.delta_band > 0.0 && cfg.delta_band < kPi / 2.0))
    throw std::invalid_argument(
        "binary_search_gse: delta_band must be in (0, pi/2)");
  if (!(cfg.tau > 0.0))
    throw std::invalid_argument("binary_search_gse: tau must be > 0");

  SearchTrace trace;
  double x0 = -kPi / 2.0, x1 = kPi / 2.0;
  int iters = 0;
  while (x1 - x0 > 2.0 * cfg.delta_band) {
    if (iters++ >= cfg.max_iters)
      throw std::runtime_error(
          "binary_search_gse: did not converge within max_iters (delta_band "
          "too small or inconsistent queries)");
    const double xl = 0.5 * (x0 + x1);
    const double c = acdf_query(xl);
    const int flag = c < cfg.eta / 2.0 ? 0 : 1;
    if (flag)
      x1 = xl + 2.0 * cfg.delta_band / 3.0;
    else
      x0 = xl - 2.0 * cfg.delta_band / 3.0;
    trace.iterations.push_back({xl, c, flag, x0, x1});
  }
  trace.result = 0.5 * (x0 + x1) / cfg.tau;
  return trace;
}

double total_deviation(std::span<const double> y, std::size_t m,
                       std::size_t n) {
  if (m < 1 || n < m || n > y.size())
    throw std::invalid_argument("total_deviation: index out of range");
  const std::size_t len = n - m + 1;
  double mean = 0.0;
  for (std::size_t k = m - 1; k < n; ++k) mean += y[k];
  mean /= static_cast<double>(len);
  double v = 0.0;
  for (std::size_t k = m - 1; k < n; ++k) {
    const double d = y[k] - mean;
    v += d * d;
  }
  return v;
}

std::size_t single_changepoint(std::span<const double> y) {
  const std::size_t M = y.size();
  if (M < 2)
    throw std::invalid_argument("single_changepoint: need at least 2 points");
  bool constant = true;
  for (std::size_t k = 1; k < M && constant; ++k) constant = y[k] == y[0];
  if (constant) return 1;  // every split ties; leftmost by convention

  // Prefix sums make each candidate split O(1):
  // V(a..b) = sumsq - sum^2/len.
  std::vector<double> ps(M + 1, 0.0), pss(M + 1, 0.0);
  for (std::size_t k = 0; k < M; ++k) {
    ps[k + 1] = ps[k] + y[k];
    pss[k + 1] = pss[k] + y[k] * y[k];
  }
  auto seg = [&](std::size_t a, std::size_t b) {  // 1-based inclusive
    const double s = ps[b] - ps[a - 1];
    const double ss = pss[b] - pss[a - 1];
    return ss - s * s / static_cast<double>(b - a + 1);
  };

  std::size_t best_m = 1;
  double best = seg(1, 1) + seg(2, M);
  for (std::size_t m = 2; m < M; ++m) {
    const double cost = seg(1, m) + seg(m + 1, M);
    if (cost < best) {
      best = cost;
      best_m = m;
    }
  }
  return best_m;
}

ChangepointResult changepoint_gse(std::span<const double> y,
                                  const ChangepointConfig& cfg, double tau) {
  const std::size_t M = y.size();
  if (M < 3)
    throw std::invalid_argument("changepoint_gse: need at least 3 points");
  if (cfg.grid.size() != M)
    throw std::invalid_argument("changepoint_gse: grid/values length mismatch");
  for (std::size_t k = 1; k < M; ++k) {
    const double h = cfg.grid[k] - cfg.grid[k - 1];
    if (!(h > 0.0) || std::abs(h - cfg.resolution) > 1e-12)
      throw std::invalid_argument("changepoint_gse: degenerate or non-uniform grid");
  }
  if (!(cfg.delta_c > 0.0))
    throw std::invalid_argument("changepoint_gse: delta_c must be > 0");

  ChangepointResult out;
  out.passes = 0;

  std::size_t m = single_changepoint(y);
  double drop = total_deviation(y, 1, M) -
                (total_deviation(y, 1, m) + total_deviation(y, m + 1, M));
  out.trace.push_back({1, m, drop, drop > cfg.delta_c});
  if (!(drop > cfg.delta_c))
    throw std::runtime_error(
        "changepoint_gse: no significant changepoint on the first pass "
        "(delta_c too large or flat CDF)");
  std::size_t accepted = m;
  out.passes = 1;

  int pass = 1;
  while (accepted >= 2) {
    ++pass;
    const auto left = y.subspan(0, accepted);
    const std::size_t m2 = single_changepoint(left);
    const double d2 =
        total_deviation(left, 1, accepted) -
        (total_deviation(left, 1, m2) + total_deviation(left, m2 + 1, accepted));
    const bool ok = d2 > cfg.delta_c;
    out.trace.push_back({pass, m2, d2, ok});
    if (!ok) break;
    accepted = m2;
    ++out.passes;
  }

  // accepted = last index of the left segment (1-based); the jump sits
  // between grid points accepted-1 and accepted (0-based).
  out.gse = (cfg.grid[accepted - 1] + cfg.grid[accepted]) / (2.0 * tau);
  return out;
}

}  // namespace sqpe
