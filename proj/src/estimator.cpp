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

#include "sqpe/estimator.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <thread>

#include "kernels.hpp"
#include "sqpe/compiler.hpp"
#include "sqpe/rng.hpp"

namespace sqpe {

namespace {

void check_shapes(const FourierSeries& series, const RuntimeVector& rv) {
  if (rv.size() != series.magnitudes().size() || rv.r.size() != rv.t.size())
    throw std::invalid_argument("runtime vector / series index mismatch");
  for (long r : rv.r)
    if (r < 1) throw std::invalid_argument("runtime vector entries must be >= 1");
}

}  // namespace

double compute_a(const FourierSeries& series, const RuntimeVector& rv,
                 double epsilon_c) {
  check_shapes(series, rv);
  const auto mags = series.magnitudes();
  double a = 0.0;
  for (std::size_t i = 0; i < mags.size(); ++i) {
    const double c = normalization_sum(rv.t[i], rv.r[i], epsilon_c).value;
    a += mags[i] * std::pow(c, static_cast<double>(rv.r[i]));
  }
  return a;
}

double legacy_a(const FourierSeries& series, const RuntimeVector& rv,
                double epsilon_c) {
  // Over S1 the j = 0 term has mu_0 = 1 and |F_0| = 1/2; each negative
  // frequency mirrors its positive partner (|F_{-j}| = |F_j|, t_{-j}^2 =
  // t_j^2, r_{-j} = r_j), so the sum is 1/2 + 2 * compute_a.
  return 0.5 + 2.0 * compute_a(series, rv, epsilon_c);
}

SampleCount sample_count_detail(double a_value, const EstimatorConfig& cfg) {
  if (!(cfg.eta > 0.0 && cfg.eta <= 1.0))
    throw std::invalid_argument("sample_count: eta must be in (0, 1]");
  if (!(cfg.epsilon > 0.0 && cfg.epsilon < cfg.eta / 2.0))
    throw std::invalid_argument("sample_count: epsilon must be in (0, eta/2)");
  if (!(cfg.nu > 0.0 && cfg.nu < 1.0))
    throw std::invalid_argument("sample_count: nu must be in (0, 1)");
  const double margin = cfg.eta / 2.0 - cfg.epsilon;
  const double raw =
      8.0 * (a_value / margin) * (a_value / margin) * std::log(1.0 / cfg.nu);
  long n = static_cast<long>(std::ceil(raw));
  const bool clamped = n < 1;
  if (clamped) {
    std::fprintf(stderr,
                 "sqpe: warning: sample count formula gave %ld, clamped to 1\n",
                 n);
    n = 1;
  }
  return {n, clamped};
}

long sample_count(double a_value, const EstimatorConfig& cfg) {
  return sample_count_detail(a_value, cfg).n_s;
}

long legacy_sample_count(double legacy_a_value, const EstimatorConfig& cfg) {
  const double margin = cfg.eta / 2.0 - cfg.epsilon;
  if (!(margin > 0.0))
    throw std::invalid_argument("legacy_sample_count: epsilon must be < eta/2");
  const double raw = (2.0 * legacy_a_value / margin) *
                     (2.0 * legacy_a_value / margin) * std::log(1.0 / cfg.nu);
  return std::max<long>(1, static_cast<long>(std::ceil(raw)));
}

/// Internal fast path: samples a unitary and applies it to a scratch buffer
/// without materializing the factor list. Draw order matches
/// UnitarySampler::sample exactly, so both paths agree stream-for-stream.
class AcdfCollector {
 public:
  AcdfCollector(const PauliSum& h, const StateVector& state,
                const FourierSeries& series, const RuntimeVector& rv,
                double epsilon_q, double epsilon_c)
      : h_(h), state_(state) {
    check_shapes(series, rv);
    const auto mags = series.magnitudes();
    samplers_.reserve(mags.size());
    double acc = 0.0;
    j_cumulative_.resize(mags.size());
    j_value_.resize(mags.size());
    for (std::size_t i = 0; i < mags.size(); ++i) {
      samplers_.emplace_back(
          CompilationConfig{rv.t[i], rv.r[i], epsilon_q, &h});
      const double c = normalization_sum(rv.t[i], rv.r[i], epsilon_c).value;
      acc += mags[i] * std::pow(c, static_cast<double>(rv.r[i]));
      j_cumulative_[i] = acc;
      j_value_[i] = 2 * static_cast<int>(i) + 1;
    }
    a_value_ = acc;
    for (auto& c : j_cumulative_) c /= acc;
    j_cumulative_.back() = 1.0;
  }

  double a_value() const { return a_value_; }

  SampleRecord draw(std::uint64_t seed, std::uint64_t n, ShotMode mode) const {
    RngStream rng(seed, n);
    const std::size_t ji = rng.categorical(j_cumulative_);
    const Complex z = sample_expectation(samplers_[ji], rng);
    SampleRecord rec;
    rec.j = j_value_[ji];
    if (mode == ShotMode::exact) {
      rec.z_re = z.real();
      rec.z_im = z.imag();
    } else {
      rec.z_re = rng.pm_one(0.5 * (1.0 + z.real()));
      rec.z_im = rng.pm_one(0.5 * (1.0 + z.imag()));
    }
    return rec;
  }

 private:
  Complex sample_expectation(const UnitarySampler& sampler,
                             RngStream& rng) const {
    work_ = state_.amps_;
    const auto& terms = h_.terms();
    unsigned quarter = 0;
    for (long seg = 0; seg < sampler.r_; ++seg) {
      const std::size_t half_n = rng.categorical(sampler.qn_.cumulative);
      const long n = 2 * static_cast<long>(half_n);
      for (long k = 0; k < n; ++k) {
        const std::size_t l = rng.categorical(sampler.term_cumulative_);
        if (sampler.term_sign_[l] < 0.0) quarter += 2;
        detail::apply_pauli_inplace(work_, terms[l].string, Complex{1.0, 0.0});
      }
      const std::size_t lp = rng.categorical(sampler.term_cumulative_);
      detail::apply_rotation_inplace(
          work_, terms[lp].string,
          sampler.term_sign_[lp] * sampler.theta_by_half_n_[half_n]);
      quarter += static_cast<unsigned>(n);
    }
    Complex ip{0.0, 0.0};
    const auto& base = state_.amps_;
    for (std::size_t k = 0; k < base.size(); ++k)
      ip += std::conj(base[k]) * work_[k];
    return Phase::i_pow(quarter & 3u).value() * ip;
  }

  const PauliSum& h_;
  const StateVector& state_;
  std::vector<UnitarySampler> samplers_;
  std::vector<double> j_cumulative_;
  std::vector<int> j_value_;
  double a_value_ = 0.0;
  mutable std::vector<Complex> work_;
};

AcdfSampleSet collect_samples(const PauliSum& h, const StateVector& state,
                              const FourierSeries& series,
                              const RuntimeVector& rv,
                              const EstimatorConfig& cfg, long n_samples,
                              std::uint64_t seed, int n_threads,
                              double epsilon_q, double epsilon_c) {
  if (n_samples < 1)
    throw std::invalid_argument("collect_samples: n_samples must be >= 1");
  if (state.n_qubits() != h.n_qubits())
    throw std::invalid_argument("collect_samples: state/Hamiltonian mismatch");

  AcdfCollector collector(h, state, series, rv, epsilon_q, epsilon_c);
  AcdfSampleSet set;
  set.a_value = collector.a_value();
  set.count = n_samples;
  set.records.resize(static_cast<std::size_t>(n_samples));

  const int workers =
      std::max(1, std::min<int>(n_threads, static_cast<int>(n_samples)));
  if (workers == 1) {
    for (long n = 0; n < n_samples; ++n)
      set.records[n] = collector.draw(seed, n, cfg.shot_mode);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        // each worker needs its own scratch buffer
        AcdfCollector local(h, state, series, rv, epsilon_q, epsilon_c);
        for (long n = w; n < n_samples; n += workers)
          set.records[n] = local.draw(seed, n, cfg.shot_mode);
      });
    }
    for (auto& t : pool) t.join();
  }
  return set;
}

AcdfEstimate estimate_at(const AcdfSampleSet& samples, double x) {
  if (samples.records.empty())
    throw std::invalid_argument("estimate_at: empty sample set");
  const double a = samples.a_value;
  const std::size_t n = samples.records.size();
  double sum = 0.0, sumsq = 0.0;
  for (const auto& rec : samples.records) {
    const double s =
        a * (std::sin(rec.j * x) * rec.z_re + std::cos(rec.j * x) * rec.z_im);
    sum += s;
    sumsq += s * s;
  }
  const double mean = sum / static_cast<double>(n);
  double stderr_ = 0.0;
  if (n >= 2) {
    const double var =
        std::max(0.0, (sumsq - sum * mean) / static_cast<double>(n - 1));
    stderr_ = 2.0 * std::sqrt(var / static_cast<double>(n));
  }
  return {x, 0.5 + 2.0 * mean, stderr_};
}

double acdf_closed_form(const SpectralReference& ref,
                        const FourierSeries& series, double tau, double x) {
  double c = 0.0;
  for (std::size_t k = 0; k < ref.eigenvalues.size(); ++k)
    c += ref.overlaps[k] * evaluate(series, x - tau * ref.eigenvalues[k]);
  return c;
}

}  // namespace sqpe
