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
#include <vector>

#include "sqpe/fourier.hpp"
#include "sqpe/pauli.hpp"
#include "sqpe/statevector.hpp"

namespace sqpe {

/// Per-frequency segment counts r_j and times t_j = -j*tau*lambda for
/// j = 2i+1, i = 0..d. Lengths equal d+1.
struct RuntimeVector {
  std::vector<long> r;
  std::vector<double> t;

  std::size_t size() const { return r.size(); }
};

enum class ShotMode { single_shot, exact };

/// eta: overlap lower bound; epsilon in (0, eta/2); nu: per-query failure
/// probability; shot_mode selects emulated one-shot Hadamard outcomes vs
/// exact expectations.
struct EstimatorConfig {
  double eta;
  double epsilon;
  double nu;
  ShotMode shot_mode = ShotMode::single_shot;
};

/// One collected sample: frequency j (odd) and the two Hadamard-test
/// outcomes. In single-shot mode z_re, z_im are +-1; in exact mode they are
/// the exact Re/Im of phase * <phi|U|phi>.
struct SampleRecord {
  int j;
  double z_re;
  double z_im;
};

/// Reusable sample set: the records are x-independent, so one collection
/// serves every query point. Immutable after collection.
struct AcdfSampleSet {
  std::vector<SampleRecord> records;
  double a_value = 0.0;
  long count = 0;
};

struct AcdfEstimate {
  double x;
  double value;
  double std_error;
};

/// A(r) = sum_j |F_j| * C(t_j, r_j)^{r_j} over the odd positive frequencies.
double compute_a(const FourierSeries& series, const RuntimeVector& rv,
                 double epsilon_c);

/// Same sum over all of S1 (the j = 0 term contributes 1/2 and the mirrored
/// negative frequencies double the positive half): A° = 1/2 + 2 A.
double legacy_a(const FourierSeries& series, const RuntimeVector& rv,
                double epsilon_c = 1e-14);

struct SampleCount {
  long n_s;
  bool clamped;  // formula gave < 1, clamped up
};

/// N_s = ceil( 8 (A/(eta/2 - epsilon))^2 ln(1/nu) ), clamped to >= 1.
SampleCount sample_count_detail(double a_value, const EstimatorConfig& cfg);
long sample_count(double a_value, const EstimatorConfig& cfg);

/// Reference count without the symmetry reduction:
/// N_s° = ceil( (2 A°/(eta/2 - epsilon))^2 ln(1/nu) ).
long legacy_sample_count(double legacy_a_value, const EstimatorConfig& cfg);

/// Draws n_samples records: j from the sampling marginal |F_j| mu_j / A,
/// then a unitary at (t_j, r_j), then the two Hadamard outcomes. Sample n is
/// generated from stream (seed, n), so results are independent of thread
/// count and completion order.
AcdfSampleSet collect_samples(const PauliSum& h, const StateVector& state,
                              const FourierSeries& series,
                              const RuntimeVector& rv,
                              const EstimatorConfig& cfg, long n_samples,
                              std::uint64_t seed, int n_threads = 1,
                              double epsilon_q = 1e-12,
                              double epsilon_c = 1e-14);

/// C^_N(x) = 1/2 + 2/N * sum_n A (sin(j_n x) z_re,n + cos(j_n x) z_im,n),
/// with std_error = 2 * sample-std of the summands / sqrt(N).
AcdfEstimate estimate_at(const AcdfSampleSet& samples, double x);

/// Exact smoothed CDF for a point spectrum:
/// C~(x) = sum_k p_k F(x - tau beta_k).
double acdf_closed_form(const SpectralReference& ref,
                        const FourierSeries& series, double tau, double x);

}  // namespace sqpe
