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

// Internal in-place amplitude kernels shared by the emulator and the
// sample collector. With P = i^{#Y} X^x Z^z, basis state k picks up the
// sign (-1)^{popcount(z & k)} and moves to k ^ x.

#pragma once

#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "sqpe/pauli.hpp"

namespace sqpe::detail {

using Complex = std::complex<double>;

inline double z_sign(std::uint64_t z, std::uint64_t k) {
  return (std::popcount(z & k) & 1) ? -1.0 : 1.0;
}

// a <- scale * P a
inline void apply_pauli_inplace(std::vector<Complex>& a, const PauliString& p,
                                Complex scale) {
  const std::uint64_t x = p.x_mask(), z = p.z_mask();
  const Complex g = scale * Phase::i_pow(p.y_count()).value();
  const std::uint64_t dim = a.size();
  if (x == 0) {
    for (std::uint64_t k = 0; k < dim; ++k) a[k] *= g * z_sign(z, k);
    return;
  }
  for (std::uint64_t k = 0; k < dim; ++k) {
    const std::uint64_t j = k ^ x;
    if (j < k) continue;
    const Complex ak = a[k], aj = a[j];
    a[k] = g * z_sign(z, j) * aj;
    a[j] = g * z_sign(z, k) * ak;
  }
}

// a <- (cos theta I + i sin theta P) a
inline void apply_rotation_inplace(std::vector<Complex>& a,
                                   const PauliString& p, double theta) {
  const std::uint64_t x = p.x_mask(), z = p.z_mask();
  const Complex is =
      Complex{0.0, 1.0} * std::sin(theta) * Phase::i_pow(p.y_count()).value();
  const double c = std::cos(theta);
  const std::uint64_t dim = a.size();
  if (x == 0) {
    for (std::uint64_t k = 0; k < dim; ++k) a[k] *= c + is * z_sign(z, k);
    return;
  }
  for (std::uint64_t k = 0; k < dim; ++k) {
    const std::uint64_t j = k ^ x;
    if (j < k) continue;
    const Complex ak = a[k], aj = a[j];
    a[k] = c * ak + is * z_sign(z, j) * aj;
    a[j] = c * aj + is * z_sign(z, k) * ak;
  }
}

}  // namespace sqpe::detail
