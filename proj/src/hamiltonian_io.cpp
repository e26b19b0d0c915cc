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

#include "sqpe/hamiltonian_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace sqpe {

namespace {

[[noreturn]] void fail(int line, const std::string& what) {
  throw std::runtime_error("hamiltonian: line " + std::to_string(line) + ": " +
                           what);
}

}  // namespace

PauliSum parse_hamiltonian(std::istream& in, double delta_precision) {
  std::vector<PauliTerm> terms;
  std::string line;
  int line_no = 0;
  std::size_t n_qubits = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;

    std::istringstream ls(line);
    std::string coeff_tok, letters, extra;
    if (!(ls >> coeff_tok >> letters))
      fail(line_no, "expected `<coefficient> <pauli-letters>`");
    if (ls >> extra) fail(line_no, "unexpected trailing token '" + extra + "'");

    std::size_t consumed = 0;
    double coeff = 0.0;
    try {
      coeff = std::stod(coeff_tok, &consumed);
    } catch (const std::exception&) {
      fail(line_no, "bad coefficient '" + coeff_tok + "'");
    }
    if (consumed != coeff_tok.size())
      fail(line_no, "bad coefficient '" + coeff_tok + "'");
    if (!std::isfinite(coeff)) fail(line_no, "non-finite coefficient");
    if (coeff == 0.0) fail(line_no, "zero coefficient not allowed");

    for (char c : letters)
      if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z')
        fail(line_no, std::string("invalid Pauli letter '") + c + "' in '" +
                          letters + "'");
    if (n_qubits == 0)
      n_qubits = letters.size();
    else if (letters.size() != n_qubits)
      fail(line_no, "string length " + std::to_string(letters.size()) +
                        " != " + std::to_string(n_qubits) +
                        " of earlier terms");
    terms.push_back({coeff, PauliString::from_letters(letters)});
  }
  if (terms.empty())
    throw std::runtime_error("hamiltonian: no terms found (empty file?)");
  return normalize_hamiltonian(std::move(terms), delta_precision);
}

PauliSum parse_hamiltonian(const std::string& path, double delta_precision) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("hamiltonian: cannot open '" + path + "'");
  return parse_hamiltonian(f, delta_precision);
}

}  // namespace sqpe
