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

#include <cstdint>
#include <string>
#include <vector>

#include "sqpe/estimator.hpp"
#include "sqpe/runtime_opt.hpp"
#include "sqpe/solvers.hpp"

namespace sqpe {

/// Full run configuration. `epsilon < 0` resolves to eta/4;
/// `delta_band < 0` ("auto") resolves to min(pi/2, tau * delta_precision).
struct RunConfig {
  std::string hamiltonian_path;
  double delta_precision = 0.05;
  double eta = 0.25;
  double epsilon = -1.0;
  double nu = 0.1;
  double delta_band = -1.0;
  double epsilon_q = 1e-12;
  double epsilon_c = 1e-14;

  enum class RuntimeMode { quadratic, optimized } runtime_mode = RuntimeMode::quadratic;
  double b_g = 0.0;  // gate bound for runtime_mode = optimized

  ShotMode shot_mode = ShotMode::single_shot;
  std::uint64_t seed = 1;
  int threads = 1;

  enum class Solver { binary, changepoint } solver = Solver::binary;
  double grid_resolution = 0.057;
  double delta_c = 0.01;

  bool resample_per_iteration = false;  // default: reuse one sample set
  long sample_override = 0;             // 0 = use the sample-count formula

  std::string output_prefix;  // when set, trace CSVs are written there
  bool dump_samples = false;
  bool dump_series = false;
};

/// Key-value config file (`key = value`, `#` comments). Unknown keys throw.
RunConfig load_config_file(const std::string& path);
void apply_config_line(RunConfig& cfg, const std::string& key,
                       const std::string& value);

struct GseReport {
  double gse_estimate = 0.0;
  double beta0_reference = 0.0;
  double delta0 = 0.0;
  int n_iters = 0;
  long n_samples = 0;
  long n_samples_legacy = 0;
  double a_value = 0.0;
  double a_legacy = 0.0;
  double n_g = 0.0;
  std::uint64_t seed = 0;
  double lambda = 0.0;
  double tau = 0.0;
  double delta_band = 0.0;
  int fourier_d = 0;
  double fourier_beta = 0.0;
  double magnitude_sum = 0.0;
  long hadamard_shots = 0;  // 2 per sample per collection
  std::vector<std::string> warnings;
  std::string solver;
  RunConfig config_echo;

  std::string to_json() const;
};

/// Whole pipeline: parse -> diagonalize -> trial state -> Fourier params ->
/// runtime vector -> sample count -> collect -> solve. Deterministic given
/// the seed. Writes `<prefix>_trace.csv` (and optional dumps) when
/// output_prefix is set.
GseReport run_gse(const RunConfig& cfg);

struct SweepRow {
  double x;
  double estimate;
  double std_error;
  double exact_cdf;
  double closed_form_acdf;
};

/// ACDF sweep over the given grid reusing one sample set. Writes
/// `<prefix>_acdf.csv` (columns x, estimate, std_error, exact_cdf,
/// closed_form_acdf) when output_prefix is set.
std::vector<SweepRow> run_acdf_sweep(const RunConfig& cfg,
                                     const std::vector<double>& x_grid);

/// Trade-off curve for the configured Hamiltonian; writes
/// `<prefix>_tradeoff.csv` (columns b_g, n_g, n_s_scaled, c) when
/// output_prefix is set.
std::vector<CostPoint> run_tradeoff(const RunConfig& cfg,
                                    const std::vector<double>& b_g_grid);

struct SpectrumRow {
  std::size_t k;
  double eigenvalue;
  double scaled_eigenvalue;  // tau * beta_k
  double overlap;
  double cdf;  // cumulative overlap
};

/// Exact eigenvalues and CDF for the configured trial state; writes
/// `<prefix>_spectrum.csv` when output_prefix is set.
std::vector<SpectrumRow> run_spectrum(const RunConfig& cfg);

/// Sample-set persistence: CSV columns n, j, z_re, z_im with a comment
/// header carrying a_value, seed, and a config hash.
void save_sample_set(const AcdfSampleSet& set, std::uint64_t seed,
                     std::uint64_t config_hash, const std::string& path);
AcdfSampleSet load_sample_set(const std::string& path);

/// FNV-1a hash of the canonical config text (used in sample-set headers).
std::uint64_t config_hash(const RunConfig& cfg);

/// Diagnostic dump of series coefficients: CSV columns k, magnitude.
void save_series_csv(const FourierSeries& series, const std::string& path);

}  // namespace sqpe
