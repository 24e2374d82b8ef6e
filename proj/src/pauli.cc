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

#include "dwr/pauli.h"

#include <ostream>
#include <stdexcept>

namespace dwr {

namespace {

void require_same_size(const PauliString &a, const PauliString &b) {
    if (a.num_qubits() != b.num_qubits()) {
        throw std::invalid_argument(
            "Pauli size mismatch: " + std::to_string(a.num_qubits()) + " vs " + std::to_string(b.num_qubits()));
    }
}

// Exponent of i picked up by the single-qubit product (x1,z1)·(x2,z2).
int product_phase(uint8_t x1, uint8_t z1, uint8_t x2, uint8_t z2) {
    if (x1 && z1) {
        return (int)z2 - (int)x2;
    }
    if (x1) {
        return z2 ? (x2 ? 1 : -1) : 0;
    }
    if (z1) {
        return x2 ? (z2 ? -1 : 1) : 0;
    }
    return 0;
}

}  // namespace

PauliString::PauliString(size_t num_qubits) : xs(num_qubits, 0), zs(num_qubits, 0), phase(0) {
}

PauliString PauliString::from_text(std::string_view text) {
    size_t k = 0;
    uint8_t phase = 0;
    if (k < text.size() && (text[k] == '+' || text[k] == '-')) {
        if (text[k] == '-') {
            phase = 2;
        }
        k++;
    }
    if (k < text.size() && text[k] == 'i') {
        phase = (phase + 1) & 3;
        k++;
    }
    PauliString result(text.size() - k);
    result.phase = phase;
    for (size_t q = 0; k < text.size(); k++, q++) {
        char c = text[k];
        if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z') {
            throw std::invalid_argument("bad Pauli letter '" + std::string(1, c) + "' in \"" + std::string(text) + "\"");
        }
        result.set_letter(q, c);
    }
    return result;
}

PauliString PauliString::from_sparse(size_t num_qubits, const std::vector<size_t> &qubits, std::string_view letters) {
    if (qubits.size() != letters.size()) {
        throw std::invalid_argument("qubit list and letters differ in length");
    }
    PauliString result(num_qubits);
    for (size_t k = 0; k < qubits.size(); k++) {
        if (qubits[k] >= num_qubits) {
            throw std::invalid_argument("qubit index " + std::to_string(qubits[k]) + " out of range");
        }
        result.set_letter(qubits[k], letters[k]);
    }
    return result;
}

char PauliString::letter(size_t q) const {
    return "IXZY"[xs[q] | (zs[q] << 1)];
}

void PauliString::set_letter(size_t q, char c) {
    switch (c) {
        case 'I':
            xs[q] = 0, zs[q] = 0;
            break;
        case 'X':
            xs[q] = 1, zs[q] = 0;
            break;
        case 'Y':
            xs[q] = 1, zs[q] = 1;
            break;
        case 'Z':
            xs[q] = 0, zs[q] = 1;
            break;
        default:
            throw std::invalid_argument("bad Pauli letter '" + std::string(1, c) + "'");
    }
}

size_t PauliString::weight() const {
    size_t w = 0;
    for (size_t q = 0; q < xs.size(); q++) {
        w += (xs[q] | zs[q]) != 0;
    }
    return w;
}

std::vector<size_t> PauliString::support() const {
    std::vector<size_t> result;
    for (size_t q = 0; q < xs.size(); q++) {
        if (xs[q] | zs[q]) {
            result.push_back(q);
        }
    }
    return result;
}

bool PauliString::same_letters(const PauliString &other) const {
    return xs == other.xs && zs == other.zs;
}

std::string PauliString::str() const {
    static const char *prefixes[] = {"+", "+i", "-", "-i"};
    std::string result = prefixes[phase & 3];
    for (size_t q = 0; q < xs.size(); q++) {
        result.push_back(letter(q));
    }
    return result;
}

PauliString &PauliString::operator*=(const PauliString &other) {
    require_same_size(*this, other);
    int total = phase + other.phase;
    for (size_t q = 0; q < xs.size(); q++) {
        total += product_phase(xs[q], zs[q], other.xs[q], other.zs[q]);
        xs[q] ^= other.xs[q];
        zs[q] ^= other.zs[q];
    }
    phase = (uint8_t)(((total % 4) + 4) % 4);
    return *this;
}

PauliString PauliString::operator*(const PauliString &other) const {
    PauliString result = *this;
    result *= other;
    return result;
}

bool PauliString::operator==(const PauliString &other) const {
    return phase == other.phase && xs == other.xs && zs == other.zs;
}

PauliString multiply(const PauliString &a, const PauliString &b) {
    return a * b;
}

bool commutes(const PauliString &a, const PauliString &b) {
    require_same_size(a, b);
    uint8_t parity = 0;
    for (size_t q = 0; q < a.xs.size(); q++) {
        parity ^= (a.xs[q] & b.zs[q]) ^ (a.zs[q] & b.xs[q]);
    }
    return parity == 0;
}

PauliString destabilizer(const PauliString &p) {
    for (size_t q = 0; q < p.num_qubits(); q++) {
        if (p.xs[q] | p.zs[q]) {
            PauliString result(p.num_qubits());
            result.set_letter(q, p.xs[q] ? 'Z' : 'X');
            return result;
        }
    }
    throw std::invalid_argument("destabilizer of a weight-0 Pauli");
}

std::ostream &operator<<(std::ostream &out, const PauliString &p) {
    return out << p.str();
}

}  // namespace dwr
