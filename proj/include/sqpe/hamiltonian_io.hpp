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

#include <istream>
#include <string>

#include "sqpe/pauli.hpp"

namespace sqpe {

/// Hamiltonian text format: one term per line, `<coefficient> <letters>`
/// (e.g. `0.2 IIZ`), `#` comment lines and blank lines skipped. The leftmost
/// letter is qubit 0. Coefficients must be finite and nonzero; all strings
/// must share one length. Errors carry the line number.
PauliSum parse_hamiltonian(std::istream& in, double delta_precision);
PauliSum parse_hamiltonian(const std::string& path, double delta_precision);

}  // namespace sqpe
