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

#include "sqpe/statevector.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <stdexcept>

#include "kernels.hpp"
#include "sqpe/rng.hpp"

namespace sqpe {

using detail::apply_pauli_inplace;
using detail::apply_rotation_inplace;
using detail::z_sign;

namespace {

constexpr double kNormTolerance = 1e-8;
constexpr double kDegeneracyGap = 1e-9;

}  // namespace

StateVector::StateVector(std::size_t n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits == 0 || n_qubits > 26)
    throw std::invalid_argument("StateVector: n_qubits must be in [1, 26]");
  amps_.assign(std::size_t{1} << n_qubits, Complex{0.0, 0.0});
  amps_[0] = 1.0;
}

StateVector::StateVector(std::size_t n_qubits, std::vector<Complex> amplitudes)
    : n_qubits_(n_qubits), amps_(std::move(amplitudes)) {
  if (n_qubits == 0 || n_qubits > 26)
    throw std::invalid_argument("StateVector: n_qubits must be in [1, 26]");
  if (amps_.size() != (std::size_t{1} << n_qubits))
    throw std::invalid_argument("StateVector: amplitude count != 2^n");
  if (std::abs(norm() - 1.0) > kNormTolerance)
    throw std::invalid_argument("StateVector: amplitudes not normalized");
}

StateVector StateVector::computational_basis(std::size_t n_qubits,
                                             std::uint64_t index) {
  StateVector s(n_qubits);
  s.amps_[0] = 0.0;
  s.amps_.at(index) = 1.0;
  return s;
}

double StateVector::norm() const {
  double n2 = 0.0;
  for (const auto& a : amps_) n2 += std::norm(a);
  return std::sqrt(n2);
}

Complex StateVector::inner_product(const StateVector& other) const {
  if (other.dimension() != dimension())
    throw std::invalid_argument("inner_product: dimension mismatch");
  Complex acc{0.0, 0.0};
  for (std::size_t k = 0; k < amps_.size(); ++k)
    acc += std::conj(amps_[k]) * other.amps_[k];
  return acc;
}

StateVector apply_pauli(const StateVector& state, const PauliString& p,
                        Phase phase) {
  if (p.n_qubits() != state.n_qubits())
    throw std::invalid_argument("apply_pauli: dimension mismatch");
  StateVector out = state;
  apply_pauli_inplace(out.amps_, p, phase.value());
  return out;
}

StateVector apply_pauli_rotation(const StateVector& state, const PauliString& p,
                                 double theta) {
  if (p.n_qubits() != state.n_qubits())
    throw std::invalid_argument("apply_pauli_rotation: dimension mismatch");
  if (!std::isfinite(theta))
    throw std::invalid_argument("apply_pauli_rotation: theta must be finite");
  StateVector out = state;
  apply_rotation_inplace(out.amps_, p, theta);
  return out;
}

Complex expectation(const StateVector& state, const SampledUnitary& u) {
  StateVector work = state;
  for (const auto& f : u.factors) {
    if (f.string.n_qubits() != state.n_qubits())
      throw std::invalid_argument("expectation: dimension mismatch");
    if (f.is_rotation)
      apply_rotation_inplace(work.amps_, f.string, f.theta);
    else
      apply_pauli_inplace(work.amps_, f.string, Complex{1.0, 0.0});
  }
  return u.phase.value() * state.inner_product(work);
}

namespace {

// Dense Hermitian matrix of the Pauli sum, row-major.
std::vector<Complex> dense_matrix(const PauliSum& h) {
  const std::size_t dim = std::size_t{1} << h.n_qubits();
  std::vector<Complex> m(dim * dim, Complex{0.0, 0.0});
  for (const auto& term : h.terms()) {
    const std::uint64_t x = term.string.x_mask(), z = term.string.z_mask();
    const Complex g =
        term.coefficient * Phase::i_pow(term.string.y_count()).value();
    for (std::uint64_t col = 0; col < dim; ++col)
      m[(col ^ x) * dim + col] += g * z_sign(z, col);
  }
  return m;
}

}  // namespace

EigenSystem diagonalize(const PauliSum& h) {
  if (h.n_qubits() > kMaxDiagonalizeQubits)
    throw std::invalid_argument("diagonalize: n_qubits exceeds the cap (12)");
  const std::size_t dim = std::size_t{1} << h.n_qubits();
  std::vector<Complex> a = dense_matrix(h);
  std::vector<Complex> v(dim * dim, Complex{0.0, 0.0});
  for (std::size_t k = 0; k < dim; ++k) v[k * dim + k] = 1.0;

  auto at = [&](std::size_t r, std::size_t c) -> Complex& { return a[r * dim + c]; };

  double scale = 0.0;
  for (const auto& e : a) scale += std::norm(e);
  scale = std::max(std::sqrt(scale), 1.0);

  // Cyclic Jacobi with complex plane rotations. Each (p,q) rotation zeroes
  // a_pq using U = [[c, s e^{i phi}], [-s e^{-i phi}, c]], phi = arg(a_pq).
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < dim; ++p)
      for (std::size_t q = p + 1; q < dim; ++q) off += std::norm(at(p, q));
    if (std::sqrt(off) < 1e-14 * scale) break;

    for (std::size_t p = 0; p < dim; ++p) {
      for (std::size_t q = p + 1; q < dim; ++q) {
        const Complex apq = at(p, q);
        const double absb = std::abs(apq);
        if (absb < 1e-20 * scale) continue;
        const Complex eip = apq / absb;  // e^{i phi}
        const double app = at(p, p).real(), aqq = at(q, q).real();
        const double zeta = (aqq - app) / (2.0 * absb);
        const double t = (zeta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(zeta) + std::sqrt(zeta * zeta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const Complex uuq = s * eip;         // U_pq
        const Complex uqp = -s * std::conj(eip);  // U_qp

        // A <- U^dagger A U ; columns first, then rows.
        for (std::size_t k = 0; k < dim; ++k) {
          const Complex akp = at(k, p), akq = at(k, q);
          at(k, p) = c * akp + uqp * akq;
          at(k, q) = uuq * akp + c * akq;
        }
        for (std::size_t k = 0; k < dim; ++k) {
          const Complex apk = at(p, k), aqk = at(q, k);
          at(p, k) = c * apk + std::conj(uqp) * aqk;
          at(q, k) = std::conj(uuq) * apk + c * aqk;
        }
        for (std::size_t k = 0; k < dim; ++k) {
          const Complex vkp = v[k * dim + p], vkq = v[k * dim + q];
          v[k * dim + p] = c * vkp + uqp * vkq;
          v[k * dim + q] = uuq * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<std::size_t> order(dim);
  std::iota(order.begin(), order.end(), 0);
  std::vector<double> diag(dim);
  for (std::size_t k = 0; k < dim; ++k) diag[k] = at(k, k).real();
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return diag[i] < diag[j]; });

  EigenSystem out;
  out.n_qubits = h.n_qubits();
  out.eigenvalues.resize(dim);
  out.eigenvectors.resize(dim * dim);
  for (std::size_t k = 0; k < dim; ++k) {
    out.eigenvalues[k] = diag[order[k]];
    for (std::size_t r = 0; r < dim; ++r)
      out.eigenvectors[k * dim + r] = v[r * dim + order[k]];
  }
  return out;
}

SpectralReference spectral_reference(const EigenSystem& eig,
                                     const StateVector& trial) {
  if (trial.dimension() != eig.dimension())
    throw std::invalid_argument("spectral_reference: dimension mismatch");
  SpectralReference ref;
  ref.eigenvalues = eig.eigenvalues;
  ref.project_dim = eig.dimension();
  ref.overlaps.resize(eig.dimension());
  const auto amps = trial.amplitudes();
  for (std::size_t k = 0; k < eig.dimension(); ++k) {
    const auto col = eig.column(k);
    Complex ip{0.0, 0.0};
    for (std::size_t r = 0; r < col.size(); ++r)
      ip += std::conj(col[r]) * amps[r];
    ref.overlaps[k] = std::norm(ip);
  }
  return ref;
}

StateVector make_trial_state(const EigenSystem& eig, double eta,
                             std::uint64_t seed, TrialStateInfo* info) {
  if (!(eta > 0.0 && eta <= 1.0))
    throw std::invalid_argument("make_trial_state: eta must be in (0, 1]");
  const std::size_t dim = eig.dimension();

  std::size_t mult = 1;
  while (mult < dim &&
         eig.eigenvalues[mult] - eig.eigenvalues[0] < kDegeneracyGap)
    ++mult;
  if (info != nullptr) {
    info->ground_degenerate = mult > 1;
    info->ground_multiplicity = mult;
  }
  if (mult > 1)
    std::fprintf(stderr,
                 "sqpe: warning: ground state is %zu-fold degenerate; using "
                 "the first eigenvector of the sorted basis\n",
                 mult);

  std::vector<Complex> amps(eig.column(0).begin(), eig.column(0).end());
  if (eta < 1.0) {
    if (mult >= dim)
      throw std::invalid_argument(
          "make_trial_state: no orthogonal complement (fully degenerate "
          "spectrum)");
    RngStream rng(seed, 0);
    std::vector<Complex> u(dim);
    double n2 = 0.0;
    for (int attempt = 0; attempt < 64 && n2 < 1e-12; ++attempt) {
      for (auto& c : u) c = Complex{rng.gaussian(), rng.gaussian()};
      // remove the whole (near-)degenerate ground subspace
      for (std::size_t g = 0; g < mult; ++g) {
        const auto col = eig.column(g);
        Complex ip{0.0, 0.0};
        for (std::size_t r = 0; r < dim; ++r) ip += std::conj(col[r]) * u[r];
        for (std::size_t r = 0; r < dim; ++r) u[r] -= ip * col[r];
      }
      n2 = 0.0;
      for (const auto& c : u) n2 += std::norm(c);
    }
    const double se = std::sqrt(eta), so = std::sqrt(1.0 - eta) / std::sqrt(n2);
    for (std::size_t r = 0; r < dim; ++r) amps[r] = se * amps[r] + so * u[r];
  }
  // tidy residual rounding
  double n2 = 0.0;
  for (const auto& c : amps) n2 += std::norm(c);
  const double inv = 1.0 / std::sqrt(n2);
  for (auto& c : amps) c *= inv;
  return StateVector(eig.n_qubits, std::move(amps));
}

StateVector make_trial_state(const PauliSum& h, double eta, std::uint64_t seed,
                             TrialStateInfo* info) {
  return make_trial_state(diagonalize(h), eta, seed, info);
}

double exact_cdf(const SpectralReference& ref, double tau, double x) {
  double c = 0.0;
  for (std::size_t k = 0; k < ref.eigenvalues.size(); ++k)
    if (tau * ref.eigenvalues[k] <= x) c += ref.overlaps[k];
  return c;
}

}  // namespace sqpe
