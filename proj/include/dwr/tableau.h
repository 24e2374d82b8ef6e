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

#ifndef DWR_TABLEAU_H
#define DWR_TABLEAU_H

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dwr/circuit.h"
#include "dwr/outcome_expr.h"
#include "dwr/pauli.h"

namespace dwr {

/// Stabilizer group learned from a measurement sequence applied to an arbitrary input. Each row is a
/// Hermitian Pauli with + phase; (-1)^sign · row stabilizes everything the sequence can output.
class SymbolicTableau {
   public:
    explicit SymbolicTableau(size_t num_qubits) : num_qubits_(num_qubits) {
    }

    struct Outcome {
        bool random;
        /// For random outcomes the fresh symbol itself; otherwise the determined value.
        OutcomeExpr value;
    };

    /// Measures the Hermitian Pauli p (a - sign is allowed) and records its outcome as symbol `outcome_id`.
    Outcome measure(const PauliString &p, size_t outcome_id);

    const std::vector<SignedPauli> &rows() const {
        return rows_;
    }
    size_t num_qubits() const {
        return num_qubits_;
    }
    /// If ±p lies in the group, the sign expression e with (-1)^e · p in the group. p may carry any phase;
    /// returns nothing when p is not in the group up to a real sign.
    std::optional<OutcomeExpr> sign_of(const PauliString &p) const;
    /// First row (lowest index) anticommuting with p.
    const SignedPauli *anticommuting_row(const PauliString &p) const;

   private:
    size_t num_qubits_;
    std::vector<SignedPauli> rows_;
};

/// Product of two group elements; folds a real phase into the sign.
SignedPauli multiply_rows(const SignedPauli &a, const SignedPauli &b);

/// Echelon basis of the rows, pivoting on qubits in the given order (x bit, then z bit).
std::vector<SignedPauli> echelon(std::vector<SignedPauli> rows, const std::vector<size_t> &qubit_order);

/// Generators of the subgroup supported only on `qubits`.
std::vector<SignedPauli> restricted_subgroup(const std::vector<SignedPauli> &rows, const std::vector<size_t> &qubits);

/// The measured operators in reading order on all qubits, with the prologue folded in. Throws
/// std::invalid_argument if the epilogue does not undo the prologue.
std::vector<PauliString> measurement_sequence(const Circuit &c);

/// Extends a target given on the physical qubits (in order) to all qubits. Full-size targets pass through.
PauliString embed_target(const Circuit &c, const PauliString &target);

struct VerificationReport {
    bool ok = false;
    std::string diagnosis;
    /// (-1)^sign_mask is the target eigenvalue the circuit projected onto.
    OutcomeExpr sign_mask;
    /// Per outcome id: whether the outcome is random, and its value (the symbol itself if random).
    std::vector<uint8_t> random;
    std::vector<OutcomeExpr> outcomes;
    /// Pauli byproduct X^bx Z^bz per qubit left on the physical qubits (commutes with the target).
    std::vector<OutcomeExpr> byproduct_x;
    std::vector<OutcomeExpr> byproduct_z;
    /// Apply `correction` iff `correction_condition` is 1 to land in the +1 eigenspace of the target.
    PauliString correction;
    OutcomeExpr correction_condition;
    size_t auxiliary_count = 0;
    size_t depth = 0;
    size_t volume = 0;

    /// The byproduct as a Pauli for the given outcomes, phase dropped.
    PauliString byproduct(const std::vector<uint8_t> &outcomes) const;
    std::string str() const;
    std::string kv() const;
};

/// Checks that the circuit measures exactly the target on its physical qubits, leaves every auxiliary qubit
/// in a determined state, and acts on the physical qubits as byproduct · projector. Structural problems are
/// reported through `ok` and `diagnosis` rather than thrown.
VerificationReport verify_dwr(const Circuit &c, const PauliString &target);

class PropagationError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Pushes each input Pauli P through the sequence: returns (O, s) with K·P = (-1)^s·O·K, where O avoids
/// every qubit the sequence leaves in a fixed single-qubit state. Throws PropagationError if P is destroyed.
std::vector<SignedPauli> pauli_map(const Circuit &c, const std::vector<PauliString> &inputs);

struct ConditionalPauli {
    PauliString pauli;
    /// Apply `pauli` iff this evaluates to 1.
    OutcomeExpr condition;
};

/// destabilizer(target) applied iff sign_mask ≠ desired. It anticommutes with the target, so it maps the
/// (-1)^sign_mask eigenspace onto the (-1)^desired one.
ConditionalPauli correction_for(const PauliString &target, const OutcomeExpr &sign_mask, bool desired);

/// Per-qubit correction X^x Z^z removing every outcome-dependent sign of a Pauli map, i.e. it anticommutes
/// with output O_j exactly when sign_j is 1. Returns (x exponents, z exponents).
std::pair<std::vector<OutcomeExpr>, std::vector<OutcomeExpr>> frame_correction(const std::vector<SignedPauli> &map);

}  // namespace dwr

#endif
