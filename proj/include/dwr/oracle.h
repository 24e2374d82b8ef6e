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

#ifndef DWR_ORACLE_H
#define DWR_ORACLE_H

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "dwr/circuit.h"
#include "dwr/pauli.h"

namespace dwr {

// State-vector reference used to cross-check the symbolic verifier. Qubit 0 is the most significant bit of a
// basis index.

using Amplitude = std::complex<double>;
using StateVector = std::vector<Amplitude>;

/// Largest total qubit count the dense oracle accepts.
constexpr size_t kDenseQubitCap = 13;

/// ψ ← P·ψ, including the phase of P.
void apply_pauli(const PauliString &p, StateVector &state);
/// ψ ← (ψ + (-1)^outcome·P·ψ) / 2 for Hermitian P.
void apply_projector(const PauliString &p, bool outcome, StateVector &state);
void apply_rotation(Rotation gate, size_t qubit, size_t num_qubits, StateVector &state);
double norm(const StateVector &state);

/// Square complex matrix on num_qubits qubits, row-major.
struct DenseMatrix {
    size_t num_qubits = 0;
    std::vector<Amplitude> data;

    static DenseMatrix identity(size_t num_qubits);
    static DenseMatrix of_pauli(const PauliString &p);
    size_t dim() const {
        return size_t{1} << num_qubits;
    }
    Amplitude &at(size_t row, size_t col) {
        return data[row * dim() + col];
    }
    Amplitude at(size_t row, size_t col) const {
        return data[row * dim() + col];
    }
    DenseMatrix operator*(const DenseMatrix &other) const;
    DenseMatrix adjoint() const;
    std::string str() const;
};

/// Matrix of the whole circuit for one outcome string: epilogue · Π_last ⋯ Π_first · prologue.
DenseMatrix sequence_operator(const Circuit &c, const std::vector<uint8_t> &outcomes);

/// ⟨aux_out| K |aux_in⟩ on the physical qubits (in order). The auxiliary vectors are indexed by the
/// auxiliary qubits in order, first one most significant.
DenseMatrix restrict_to_physical(
    const DenseMatrix &k, const Circuit &c, const StateVector &aux_in, const StateVector &aux_out);

/// min_c ‖a − c·b‖ / ‖a‖. Infinite when b is zero and a is not.
double proportionality_deviation(const DenseMatrix &a, const DenseMatrix &b);

struct OracleOptions {
    /// 0 walks every consistent outcome string; otherwise this many random walks.
    size_t samples = 0;
    uint64_t seed = 1;
    /// Number of random physical input vectors pushed through together.
    size_t inputs = 2;
};

struct OracleReport {
    /// Dense checks passed and the verifier accepted the circuit with matching predictions.
    bool ok = false;
    /// Dense checks alone, without reference to the verifier.
    bool dense_ok = false;
    std::string diagnosis;
    /// Complete outcome strings checked.
    size_t leaves = 0;
    /// Branch possibilities that disagreed with the verifier's random/determined prediction.
    size_t determinism_mismatches = 0;
    size_t factor_failures = 0;
    size_t sign_mismatches = 0;
    size_t byproduct_mismatches = 0;
    /// Worst relative deviation from u ⊗ b and from u ∝ B·v over all leaves.
    double max_deviation = 0;

    std::string str() const;
};

/// Runs the circuit densely on random physical inputs for every consistent outcome string (or a sample of
/// them) and checks, independently of the tableau, that:
///   - branches are possible exactly when verify_dwr says so;
///   - the output factors as (physical) ⊗ (fixed auxiliary state);
///   - the physical part is a target eigenvector whose eigenvalue matches the verifier's sign mask;
///   - it equals a Pauli byproduct applied to the projected input, and that Pauli matches the verifier's.
/// Throws std::invalid_argument above kDenseQubitCap qubits.
OracleReport oracle_verify(const Circuit &c, const PauliString &target, const OracleOptions &options = {});

}  // namespace dwr

#endif
