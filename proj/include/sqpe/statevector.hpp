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

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "sqpe/compiler.hpp"
#include "sqpe/pauli.hpp"

namespace sqpe {

using Complex = std::complex<double>;

/// Dense normalized amplitude vector over the 2^n computational basis.
/// Values are immutable snapshots; all operations allocate their output.
class StateVector {
 public:
  /// |0...0>
  explicit StateVector(std::size_t n_qubits);
  /// Takes ownership of amplitudes; must be normalized within 1e-8.
  StateVector(std::size_t n_qubits, std::vector<Complex> amplitudes);
  static StateVector computational_basis(std::size_t n_qubits,
                                         std::uint64_t index);

  std::size_t n_qubits() const { return n_qubits_; }
  std::size_t dimension() const { return amps_.size(); }
  std::span<const Complex> amplitudes() const { return amps_; }
  Complex amplitude(std::uint64_t index) const { return amps_[index]; }

  double norm() const;
  /// <this|other>
  Complex inner_product(const StateVector& other) const;

 private:
  friend StateVector apply_pauli(const StateVector&, const PauliString&, Phase);
  friend StateVector apply_pauli_rotation(const StateVector&,
                                          const PauliString&, double);
  friend Complex expectation(const StateVector&, const SampledUnitary&);
  friend class AcdfCollector;

  std::size_t n_qubits_;
  std::vector<Complex> amps_;
};

/// phase * (P applied to state); norm preserved.
StateVector apply_pauli(const StateVector& state, const PauliString& p,
                        Phase phase);

/// e^{i theta P} state = (cos theta I + i sin theta P) state.
StateVector apply_pauli_rotation(const StateVector& state, const PauliString& p,
                                 double theta);

/// <phi|U|phi> including the sampled phase, computed by applying u's factors
/// in order and taking the inner product with the original state.
Complex expectation(const StateVector& state, const SampledUnitary& u);

/// Full spectrum of the dense Hermitian matrix of h, ascending, with
/// orthonormal eigenvectors (column k of `eigenvectors`, column-major).
struct EigenSystem {
  std::size_t n_qubits;
  std::vector<double> eigenvalues;
  std::vector<Complex> eigenvectors;  // dim x dim, column-major

  std::size_t dimension() const { return eigenvalues.size(); }
  std::span<const Complex> column(std::size_t k) const {
    return {eigenvectors.data() + k * dimension(), dimension()};
  }
};

/// Cyclic Jacobi on the dense 2^n x 2^n Hermitian matrix. Capped at
/// n <= 12 qubits (O(dim^3) per sweep; expect minutes at the cap).
EigenSystem diagonalize(const PauliSum& h);

inline constexpr std::size_t kMaxDiagonalizeQubits = 12;

/// Spectral weights beta_k (ascending) and p_k = |<psi_k|phi>|^2 for a trial
/// state; sum p_k = 1.
struct SpectralReference {
  std::vector<double> eigenvalues;
  std::vector<double> overlaps;
  std::size_t project_dim = 0;
};

SpectralReference spectral_reference(const EigenSystem& eig,
                                     const StateVector& trial);

struct TrialStateInfo {
  bool ground_degenerate = false;
  std::size_t ground_multiplicity = 1;
};

/// phi = sqrt(eta) psi_0 + sqrt(1-eta) u with u a seeded-random unit vector
/// orthogonal to the (near-)degenerate ground subspace (eigenvalue gap below
/// 1e-9), so |<psi_0|phi>|^2 = eta exactly and the spectral weight of the
/// ground level equals eta. Warns on degeneracy.
StateVector make_trial_state(const EigenSystem& eig, double eta,
                             std::uint64_t seed, TrialStateInfo* info = nullptr);
StateVector make_trial_state(const PauliSum& h, double eta, std::uint64_t seed,
                             TrialStateInfo* info = nullptr);

/// C(x) = sum of p_k over { k : tau*beta_k <= x }; right-continuous step.
double exact_cdf(const SpectralReference& ref, double tau, double x);

}  // namespace sqpe
