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

#include "sqpe/compiler.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace sqpe {

int SampledUnitary::rotation_count() const {
  int n = 0;
  for (const auto& f : factors) n += f.is_rotation ? 1 : 0;
  return n;
}

std::string SampledUnitary::to_text() const {
  std::ostringstream os;
  os.precision(17);
  for (const auto& f : factors) {
    if (f.is_rotation)
      os << "R " << f.string.letters() << ' ' << f.theta << '\n';
    else
      os << "P " << f.string.letters() << '\n';
  }
  os << "phase " << phase.str() << '\n';
  return os.str();
}

double theta_of(long n, double t, long r) {
  if (n < 0 || n % 2 != 0)
    throw std::invalid_argument("theta_of: n must be even and >= 0");
  if (r < 1) throw std::invalid_argument("theta_of: r must be >= 1");
  if (t == 0.0) return 0.0;
  const double x = t / static_cast<double>(r);
  const double u = x / static_cast<double>(n + 1);
  const double theta = std::acos(1.0 / std::sqrt(1.0 + u * u));
  return t > 0.0 ? theta : -theta;
}

namespace {

// Unnormalized weight of even n for |x| = |t/r|.
double qn_weight(long n, double ax, double x) {
  double w = std::sqrt(1.0 + (x / (n + 1)) * (x / (n + 1)));
  for (long k = 1; k <= n; ++k) w *= ax / static_cast<double>(k);
  return w;
}

}  // namespace

NormalizationSum normalization_sum(double t, long r, double epsilon_c) {
  if (r < 1) throw std::invalid_argument("normalization_sum: r must be >= 1");
  if (!(epsilon_c > 0.0))
    throw std::invalid_argument("normalization_sum: epsilon_c must be > 0");
  const double x = t / static_cast<double>(r);
  double sum = 0.0;
  int terms = 0;
  double term = std::sqrt(1.0 + x * x);  // n = 0
  for (long n = 0;; ++n) {
    sum += term;
    ++terms;
    const long m = 2 * (n + 1);
    const double u = x / static_cast<double>(m + 1);
    // ratio of the factorial-power part between consecutive even orders
    term = term / std::sqrt(1.0 + (x / (2.0 * n + 1.0)) * (x / (2.0 * n + 1.0)));
    term *= (x * x) / (static_cast<double>(m) * static_cast<double>(m - 1));
    term *= std::sqrt(1.0 + u * u);
    if (term < epsilon_c || terms > 500) break;
  }
  return {sum, terms};
}

QnDistribution qn_distribution(double t, long r, double epsilon_q) {
  if (r < 1) throw std::invalid_argument("qn_distribution: r must be >= 1");
  if (!(epsilon_q > 0.0 && epsilon_q < 1.0))
    throw std::invalid_argument("qn_distribution: epsilon_q must be in (0, 1)");
  const double x = t / static_cast<double>(r);
  const double ax = std::abs(x);
  // Total mass is the full normalization sum; keep the smallest even support
  // whose residual tail is below epsilon_q, then renormalize.
  const double total = normalization_sum(t, r, std::min(epsilon_q, 1e-16) * 1e-2).value;

  QnDistribution q;
  double acc = 0.0;
  for (long n = 0;; n += 2) {
    const double w = qn_weight(n, ax, x);
    q.probabilities.push_back(w);
    acc += w;
    if ((total - acc) / total < epsilon_q) break;
    if (n > 2000)
      throw std::runtime_error("qn_distribution: support did not converge");
  }
  q.cumulative.resize(q.probabilities.size());
  double c = 0.0;
  for (std::size_t i = 0; i < q.probabilities.size(); ++i) {
    q.probabilities[i] /= acc;
    c += q.probabilities[i];
    q.cumulative[i] = c;
  }
  q.cumulative.back() = 1.0;
  return q;
}

UnitarySampler::UnitarySampler(const CompilationConfig& config)
    : h_(config.hamiltonian), r_(config.r) {
  if (h_ == nullptr)
    throw std::invalid_argument("UnitarySampler: null Hamiltonian");
  if (r_ < 1) throw std::invalid_argument("UnitarySampler: r must be >= 1");
  qn_ = qn_distribution(config.t, config.r, config.epsilon_q);
  theta_by_half_n_.resize(qn_.probabilities.size());
  for (std::size_t i = 0; i < theta_by_half_n_.size(); ++i)
    theta_by_half_n_[i] = theta_of(2 * static_cast<long>(i), config.t, config.r);

  const auto weights = probability_weights(*h_);
  term_cumulative_.resize(weights.size());
  term_sign_.resize(weights.size());
  double c = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    c += weights[i].probability;
    term_cumulative_[i] = c;
    term_sign_[i] = weights[i].sign;
  }
  term_cumulative_.back() = 1.0;
}

SampledUnitary UnitarySampler::sample(RngStream& rng) const {
  SampledUnitary u;
  u.phase = Phase::one();
  const auto& terms = h_->terms();
  for (long seg = 0; seg < r_; ++seg) {
    const std::size_t half_n = rng.categorical(qn_.cumulative);
    const long n = 2 * static_cast<long>(half_n);
    long negatives = 0;
    for (long k = 0; k < n; ++k) {
      const std::size_t l = rng.categorical(term_cumulative_);
      if (term_sign_[l] < 0.0) ++negatives;
      u.factors.push_back({terms[l].string, 0.0, false});
    }
    const std::size_t lp = rng.categorical(term_cumulative_);
    u.factors.push_back(
        {terms[lp].string, term_sign_[lp] * theta_by_half_n_[half_n], true});
    // s *= (i * sgn t)^n * sgn(alpha_{l1} ... alpha_{ln}); n is even so the
    // sgn(t) power is +1 and the i power is (-1)^{n/2}.
    u.phase *= Phase::i_pow(n) * Phase::i_pow(2 * negatives);
  }
  return u;
}

SampledUnitary sample_unitary(const CompilationConfig& config, RngStream& rng) {
  return UnitarySampler(config).sample(rng);
}

}  // namespace sqpe
