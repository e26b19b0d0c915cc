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
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace sqpe {

/// Quarter-turn phase i^k, k in {0,1,2,3}; the group {+1, +i, -1, -i}.
class Phase {
 public:
  constexpr Phase() = default;

  static constexpr Phase one() { return Phase(0); }
  static constexpr Phase i() { return Phase(1); }
  static constexpr Phase minus_one() { return Phase(2); }
  static constexpr Phase minus_i() { return Phase(3); }

  /// i^n for any integer n (negative allowed).
  static constexpr Phase i_pow(long n) {
    return Phase(static_cast<unsigned>(((n % 4) + 4) % 4));
  }
  /// +1 -> one, -1 -> minus_one.
  static constexpr Phase from_sign(double s) { return s < 0 ? minus_one() : one(); }

  constexpr Phase operator*(Phase o) const { return Phase((k_ + o.k_) & 3u); }
  constexpr Phase& operator*=(Phase o) {
    k_ = (k_ + o.k_) & 3u;
    return *this;
  }
  constexpr bool operator==(const Phase&) const = default;

  constexpr unsigned quarter_turns() const { return k_; }
  std::complex<double> value() const {
    static constexpr double re[4] = {1.0, 0.0, -1.0, 0.0};
    static constexpr double im[4] = {0.0, 1.0, 0.0, -1.0};
    return {re[k_], im[k_]};
  }
  std::string str() const {
    static const char* names[4] = {"+1", "+i", "-1", "-i"};
    return names[k_];
  }

 private:
  explicit constexpr Phase(unsigned k) : k_(k) {}
  unsigned k_ = 0;
};

/// An n-qubit Pauli string stored as X/Z bitmasks. Letter at qubit q:
///   x z  ->  letter
///   0 0      I
///   1 0      X
///   1 1      Y   (Y = i X Z; the i per Y is NOT stored, it is part of the
///                 operator's definition and handled by apply/multiply)
///   0 1      Z
/// Convention: qubit 0 is the leftmost letter of the text form.
class PauliString {
 public:
  /// Identity on n qubits.
  explicit PauliString(std::size_t n_qubits);
  /// Parse e.g. "IXZ" (leftmost letter = qubit 0). Throws on bad letters.
  static PauliString from_letters(std::string_view letters);

  std::size_t n_qubits() const { return n_qubits_; }
  std::uint64_t x_mask() const { return x_; }
  std::uint64_t z_mask() const { return z_; }
  bool is_identity() const { return (x_ | z_) == 0; }
  int y_count() const;

  char letter(std::size_t qubit) const;
  std::string letters() const;

  void set_letter(std::size_t qubit, char letter);

  bool operator==(const PauliString&) const = default;

 private:
  PauliString(std::size_t n, std::uint64_t x, std::uint64_t z)
      : n_qubits_(n), x_(x), z_(z) {}
  friend std::pair<Phase, PauliString> multiply(const PauliString&,
                                                const PauliString&);

  std::size_t n_qubits_ = 0;
  std::uint64_t x_ = 0;
  std::uint64_t z_ = 0;
};

/// Product of two Pauli strings: a*b = phase * c with c phase-free.
std::pair<Phase, PauliString> multiply(const PauliString& a,
                                       const PauliString& b);

/// One LCU term: real signed weight times a Pauli string.
struct PauliTerm {
  double coefficient;
  PauliString string;
};

/// The Hamiltonian H = sum_j alpha_j P_j together with its normalization
/// constants: lambda = sum |alpha_j|, tau = pi/(2*lambda + Delta), and the
/// target precision Delta. Term order is preserved from input; sampling
/// indices refer to this order. Immutable after construction.
class PauliSum {
 public:
  const std::vector<PauliTerm>& terms() const { return terms_; }
  std::size_t n_qubits() const { return n_qubits_; }
  double lambda() const { return lambda_; }
  double tau() const { return tau_; }
  double delta_precision() const { return delta_precision_; }

 private:
  friend PauliSum normalize_hamiltonian(std::vector<PauliTerm> terms,
                                        double delta_precision);
  PauliSum() = default;

  std::vector<PauliTerm> terms_;
  std::size_t n_qubits_ = 0;
  double lambda_ = 0.0;
  double tau_ = 0.0;
  double delta_precision_ = 0.0;
};

/// Builds the normalized Hamiltonian container: lambda = sum|alpha_j| and
/// tau = pi/(2*lambda + Delta), which guarantees tau*lambda < pi/2.
/// Throws on an empty list, mismatched qubit counts, non-finite or exactly
/// zero coefficients, or zero total weight.
PauliSum normalize_hamiltonian(std::vector<PauliTerm> terms,
                               double delta_precision);

struct TermWeight {
  double probability;  // |alpha_j| / lambda, in (0, 1]
  double sign;         // sgn(alpha_j), +-1
};

/// Sampling weights p_j = |alpha_j|/lambda with the signs split off
/// (P~_j = sgn(alpha_j) P_j). Pairing follows the term order of h.
std::vector<TermWeight> probability_weights(const PauliSum& h);

}  // namespace sqpe
