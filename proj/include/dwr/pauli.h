// Copyright 2026 The DWR Compiler Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DWR_PAULI_H
#define DWR_PAULI_H

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace dwr {

/// A multi-qubit Pauli operator i^phase * (P_0 ⊗ P_1 ⊗ ...), where each P_q is one of the
/// matrices I, X, Y, Z. Y is stored as the pair of bits (x=1, z=1) but always means the Y matrix,
/// so no hidden factor of i is attached to it.
struct PauliString {
    std::vector<uint8_t> xs;
    std::vector<uint8_t> zs;
    uint8_t phase = 0;

    PauliString() = default;
    explicit PauliString(size_t num_qubits);

    /// Parses text like "ZZXI", "-XY", "+iZ". Throws std::invalid_argument on bad input.
    static PauliString from_text(std::string_view text);
    /// Letters placed at the given qubits of an n-qubit identity, e.g. (6, {0, 4}, "ZZ").
    static PauliString from_sparse(size_t num_qubits, const std::vector<size_t> &qubits, std::string_view letters);

    size_t num_qubits() const {
        return xs.size();
    }
    char letter(size_t q) const;
    void set_letter(size_t q, char c);
    size_t weight() const;
    std::vector<size_t> support() const;
    bool is_hermitian() const {
        return (phase & 1) == 0;
    }
    bool is_identity_up_to_phase() const {
        return weight() == 0;
    }
    /// Same letters, ignoring the phase.
    bool same_letters(const PauliString &other) const;

    /// Canonical text form with an explicit sign prefix: "+ZZ", "-X", "+iY", "-iXZ".
    std::string str() const;

    PauliString operator*(const PauliString &other) const;
    PauliString &operator*=(const PauliString &other);
    bool operator==(const PauliString &other) const;
    bool operator!=(const PauliString &other) const {
        return !(*this == other);
    }
};

PauliString multiply(const PauliString &a, const PauliString &b);
bool commutes(const PauliString &a, const PauliString &b);

/// Weight-1 Pauli anticommuting with p. Chosen at p's lowest non-identity qubit: Z there if p has X or Y,
/// otherwise X.
PauliString destabilizer(const PauliString &p);

std::ostream &operator<<(std::ostream &out, const PauliString &p);

}  // namespace dwr

#endif
