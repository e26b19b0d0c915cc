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

#include <string>
#include <vector>

#include "sqpe/pauli.hpp"
#include "sqpe/rng.hpp"

namespace sqpe {

/// One factor of a sampled unitary: either a bare Pauli string or a Pauli
/// rotation e^{i theta P}. Factor order in SampledUnitary is application
/// order (factors[0] acts first on the state).
struct Factor {
  PauliString string;
  double theta = 0.0;
  bool is_rotation = false;
};

/// Product drawn by the randomized compilation sampler, together with the
/// accumulated quarter-turn phase s. Contains exactly r rotation factors,
/// one per segment.
struct SampledUnitary {
  std::vector<Factor> factors;
  Phase phase;

  int rotation_count() const;
  /// Diagnostic text dump: one factor per line ("P ZIX" / "R IZI -0.245"),
  /// then "phase +i".
  std::string to_text() const;
};

/// Truncated per-segment sum C = sum_m c_m >= 1 (deterministic given inputs).
struct NormalizationSum {
  double value;
  int truncation_terms;  // number of series terms included
};

/// Discrete distribution over even n with
///   q_n ~ |t/r|^n / n! * sqrt(1 + ((t/r)/(n+1))^2),
/// truncated so the residual tail mass is below epsilon_q, then renormalized.
struct QnDistribution {
  std::vector<double> probabilities;  // index i -> n = 2i
  std::vector<double> cumulative;
  int max_even_n() const { return 2 * (static_cast<int>(probabilities.size()) - 1); }
  int sample(RngStream& rng) const {
    return 2 * static_cast<int>(rng.categorical(cumulative));
  }
};

/// Inputs of the sampling procedure: dimensionless time t, segment count r,
/// tail cutoff epsilon_q, and the Hamiltonian whose weights are drawn from.
struct CompilationConfig {
  double t;
  long r;
  double epsilon_q;
  const PauliSum* hamiltonian;
};

/// Rotation angle theta_n = sgn(t) * arccos(1/sqrt(1 + ((t/r)/(n+1))^2)).
/// n must be even and >= 0.
double theta_of(long n, double t, long r);

QnDistribution qn_distribution(double t, long r, double epsilon_q);

/// C = sum_{n>=0} (t/r)^{2n}/(2n)! * sqrt(1 + ((t/r)/(2n+1))^2), truncated
/// once the next term drops below epsilon_c. 1 <= C <= exp(t^2/r^2).
NormalizationSum normalization_sum(double t, long r, double epsilon_c);

/// Precomputed tables for drawing unitaries at fixed (t, r). Pure given its
/// RNG stream; any number of samplers may run concurrently.
class UnitarySampler {
 public:
  UnitarySampler(const CompilationConfig& config);

  /// Draws the factor list per segment: n Pauli factors P_{l1}..P_{ln}
  /// followed by a rotation with angle sgn(alpha_{l'}) * theta_n; the phase
  /// accumulates (i sgn t)^n * sgn(alpha_{l1} ... alpha_{ln}) per segment.
  SampledUnitary sample(RngStream& rng) const;

  const QnDistribution& qn() const { return qn_; }

 private:
  friend class AcdfCollector;
  const PauliSum* h_;
  long r_;
  QnDistribution qn_;
  std::vector<double> theta_by_half_n_;  // theta_{2i}
  std::vector<double> term_cumulative_;  // cumulative of p_l
  std::vector<double> term_sign_;
};

/// One-shot convenience wrapper around UnitarySampler.
SampledUnitary sample_unitary(const CompilationConfig& config, RngStream& rng);

}  // namespace sqpe
