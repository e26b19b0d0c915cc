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

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace sqpe {

/// Threshold binary-search configuration. success_probability = 1 - zeta is
/// informational: per-query nu = zeta / predicted_iterations(delta_band)
/// gives the union-bound choice.
struct SearchConfig {
  double eta;
  double delta_band;
  double tau;
  double success_probability = 0.9;
  int max_iters = 64;
};

struct SearchIteration {
  double x;
  double estimate;
  int flag;
  double x0;
  double x1;
};

/// Iteration log plus the final estimate beta~_0 = x*/tau.
struct SearchTrace {
  std::vector<SearchIteration> iterations;
  double result;
};

/// Deterministic iteration count of the bracket recurrence
/// w' = w/2 + (2/3) delta starting from width pi, stopping at w <= 2 delta.
int predicted_iterations(double delta_band);

/// Threshold binary search over [-pi/2, pi/2]: query the midpoint, compare
/// to eta/2, shrink with the 2/3-delta overshoot rule, stop at width
/// <= 2 delta. Returns the final midpoint scaled by 1/tau.
SearchTrace binary_search_gse(const std::function<double(double)>& acdf_query,
                              const SearchConfig& cfg);

/// Total mean-square deviation V(Y_{m:n}) = (n-m+1) Var(Y_{m:n}) with the
/// population-variance convention; m, n are 1-based inclusive.
double total_deviation(std::span<const double> y, std::size_t m, std::size_t n);

/// Least-squares single mean-change split: argmin over m in [1, M-1] of
/// V(Y_{1:m}) + V(Y_{m+1:M}); returns m (the last index of the left
/// segment, 1-based), leftmost on ties.
std::size_t single_changepoint(std::span<const double> y);

/// Grid and significance floor for binary segmentation.
struct ChangepointConfig {
  std::vector<double> grid;  // ascending, uniform spacing
  double delta_c;
  double resolution;
};

struct SplitRecord {
  int pass;
  std::size_t split;
  double deviation_drop;
  bool accepted;
};

struct ChangepointResult {
  double gse;
  std::vector<SplitRecord> trace;
  int passes;  // number of accepted splits
};

/// Binary segmentation toward the first jump: split the full sequence, and
/// while the deviation drop exceeds delta_c keep splitting the left segment.
/// The last accepted split m yields the estimate (x_m + x_{m+1}) / (2 tau)
/// (the midpoint straddling the detected jump). Throws if the grid is
/// degenerate or the first split is not significant.
ChangepointResult changepoint_gse(std::span<const double> y,
                                  const ChangepointConfig& cfg, double tau);

}  // namespace sqpe
