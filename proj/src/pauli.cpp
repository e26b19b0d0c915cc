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

#include "sqpe/pauli.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace sqpe {

namespace {
constexpr std::size_t kMaxQubits = 64;
}

PauliString::PauliString(std::size_t n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits == 0 || n_qubits > kMaxQubits)
    throw std::invalid_argument("PauliString: n_qubits must be in [1, 64]");
}

PauliString PauliString::from_letters(std::string_view letters) {
  PauliString p(letters.size());
  for (std::size_t q = 0; q < letters.size(); ++q) p.set_letter(q, letters[q]);
  return p;
}

void PauliString::set_letter(std::size_t qubit, char letter) {
  if (qubit >= n_qubits_)
    throw std::invalid_argument("PauliString: qubit index out of range");
  const std::uint64_t bit = std::uint64_t{1} << qubit;
  x_ &= ~bit;
  z_ &= ~bit;
  switch (letter) {
    case 'I':
      break;
    case 'X':
      x_ |= bit;
      break;
    case 'Y':
      x_ |= bit;
      z_ |= bit;
      break;
    case 'Z':
      z_ |= bit;
      break;
    default:
      throw std::invalid_argument(std::string("PauliString: invalid letter '") +
                                  letter + "'");
  }
}

char PauliString::letter(std::size_t qubit) const {
  if (qubit >= n_qubits_)
    throw std::invalid_argument("PauliString: qubit index out of range");
  const bool x = (x_ >> qubit) & 1;
  const bool z = (z_ >> qubit) & 1;
  if (x && z) return 'Y';
  if (x) return 'X';
  if (z) return 'Z';
  return 'I';
}

std::string PauliString::letters() const {
  std::string s(n_qubits_, 'I');
  for (std::size_t q = 0; q < n_qubits_; ++q) s[q] = letter(q);
  return s;
}

int PauliString::y_count() const {
  return std::popcount(x_ & z_);
}

std::pair<Phase, PauliString> multiply(const PauliString& a,
                                       const PauliString& b) {
  if (a.n_qubits() != b.n_qubits())
    throw std::invalid_argument("multiply: qubit-count mismatch");
  // With P = i^{#Y} X^x Z^z:  a*b = i^{ya+yb} X^xa Z^za X^xb Z^zb
  //                               = i^{ya+yb} (-1)^{|za & xb|} X^xc Z^zc
  // and the canonical result carries i^{yc}, so the residual phase is
  // i^{ya+yb-yc} (-1)^{|za & xb|}.
  PauliString c(a.n_qubits(), a.x_ ^ b.x_, a.z_ ^ b.z_);
  const long q = a.y_count() + b.y_count() - c.y_count() +
                 2L * std::popcount(a.z_ & b.x_);
  return {Phase::i_pow(q), c};
}

PauliSum normalize_hamiltonian(std::vector<PauliTerm> terms,
                               double delta_precision) {
  if (terms.empty())
    throw std::invalid_argument("normalize_hamiltonian: empty term list");
  if (!(delta_precision > 0.0))
    throw std::invalid_argument(
        "normalize_hamiltonian: delta_precision must be > 0");
  const std::size_t n = terms.front().string.n_qubits();
  double lambda = 0.0;
  for (const auto& t : terms) {
    if (t.string.n_qubits() != n)
      throw std::invalid_argument(
          "normalize_hamiltonian: inconsistent qubit counts");
    if (!std::isfinite(t.coefficient))
      throw std::invalid_argument(
          "normalize_hamiltonian: non-finite coefficient");
    if (t.coefficient == 0.0)
      throw std::invalid_argument(
          "normalize_hamiltonian: zero coefficient not allowed");
    lambda += std::abs(t.coefficient);
  }
  if (!(lambda > 0.0))
    throw std::invalid_argument("normalize_hamiltonian: zero total weight");

  PauliSum h;
  h.terms_ = std::move(terms);
  h.n_qubits_ = n;
  h.lambda_ = lambda;
  h.tau_ = 3.14159265358979323846 / (2.0 * lambda + delta_precision);
  h.delta_precision_ = delta_precision;
  return h;
}

std::vector<TermWeight> probability_weights(const PauliSum& h) {
  std::vector<TermWeight> w;
  w.reserve(h.terms().size());
  for (const auto& t : h.terms())
    w.push_back({std::abs(t.coefficient) / h.lambda(),
                 t.coefficient < 0.0 ? -1.0 : 1.0});
  return w;
}

}  // namespace sqpe
