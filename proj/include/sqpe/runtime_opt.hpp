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

#include <span>
#include <vector>

#include "sqpe/estimator.hpp"
#include "sqpe/fourier.hpp"

namespace sqpe {

/// One point of the sample/gate trade-off: runtime vector, expected
/// controlled-Pauli rotations per circuit N_g, scaled sample count
/// N~_s = 8 (A/(eta/2-eps))^2 (the ln(1/nu) factor is divided out), and A.
struct CostPoint {
  RuntimeVector r;
  double n_g = 0.0;
  double n_s_scaled = 0.0;
  double a_value = 0.0;
  double c_param = 0.0;  // seed of the winning one-parameter family member
  double b_g = 0.0;      // bound this point was computed for (0 if none)
};

/// N_g(r) = sum_j |F_j| mu_j r_j / A: the mean rotation count per circuit
/// under the sampling distribution. Satisfies 1 <= N_g <= max_j r_j.
double gate_cost(const FourierSeries& series, const RuntimeVector& rv,
                 double epsilon_c);

/// r_j = max(1, ceil(2 t_j^2)) with t_j = -j tau lambda; keeps every
/// per-segment normalization sum below sqrt(e).
RuntimeVector default_runtime(const FourierSeries& series, double tau,
                              double lambda);

enum class OptimizeMode { min_total, min_samples_bounded };

struct OptimizerOptions {
  double epsilon_c = 1e-14;
  long r_cap = 1L << 20;   // box constraint r_j <= r_cap
  int c_grid_points = 64;  // seeds from the family r_j(c) = max(1, ceil(c t_j^2))
};

/// Searches the one-parameter family r_j(c) = max(1, ceil(c t_j^2)) over a
/// log-spaced c grid spanning [0.1, 10] x the default scale c = 2, refining
/// each seed by per-coordinate line scans (and pairwise scans on small
/// instances). Mode min_total minimizes N~_s * N_g; min_samples_bounded
/// minimizes N~_s subject to N_g <= b_g. Throws if b_g is infeasible.
CostPoint optimize_runtime(const FourierSeries& series,
                           const EstimatorConfig& cfg, OptimizeMode mode,
                           double tau, double lambda, double b_g = 0.0,
                           const OptimizerOptions& options = {});

/// One optimized point per feasible b_g; N~_s nonincreasing along the curve
/// (each point is warm-started from the previous optimum).
std::vector<CostPoint> tradeoff_curve(const FourierSeries& series,
                                      const EstimatorConfig& cfg, double tau,
                                      double lambda,
                                      std::span<const double> b_g_grid,
                                      const OptimizerOptions& options = {});

}  // namespace sqpe
