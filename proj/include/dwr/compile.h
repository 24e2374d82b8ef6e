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

#ifndef DWR_COMPILE_H
#define DWR_COMPILE_H

#include <utility>
#include <vector>

#include "dwr/circuit.h"
#include "dwr/graph.h"
#include "dwr/outcome_expr.h"

namespace dwr {

/// Measurement sequence for Z on every leaf of the layout, built from one- and two-qubit measurements on the
/// tree: X on parents and Z on internal nodes, then rounds of parent-child ZZ, XX between auxiliaries and X
/// refreshes, then a last ZZ per remaining leaf and single-qubit read-outs.
///
/// Every op is checked against the learned stabilizer group before it is emitted. A parent whose Z would read
/// its child directly sits the ZZ out, and an XX towards an auxiliary already fixed in X is relayed through
/// Z-reset nodes. The parent left out of a round is the one with the fewest unmeasured children; ties go to
/// the lowest index.
Circuit compile_general(const TreeLayout &layout);

/// Two auxiliary qubits; depth 5 + 4⌊(w-3)/2⌋.
Circuit compile_constant_space(size_t w);
/// w auxiliary qubits on a line; depth 5.
Circuit compile_depth5(size_t w);
/// ⌈w/2⌉ auxiliary qubits on a line, two leaves each; depth 6 once the line has three or more auxiliaries.
Circuit compile_depth6(size_t w);
/// a auxiliary qubits on a line with leaves dealt round-robin.
Circuit compile_interpolating(size_t w, size_t a);

/// Parity of the outcomes that the recipe assigns to the target: every op whose letters on auxiliary qubits
/// are all Z. Complemented when the target carries a - sign.
OutcomeExpr predicted_sign_mask(const Circuit &c, const PauliString &target);

enum class RebaseMode {
    /// Physical letters of each measurement become the target letters.
    Basis,
    /// Measurements stay in Z; per-qubit rotations into the target basis go in the prologue and epilogue.
    Rotations,
};

/// Turns a circuit measuring Z on every physical qubit into one measuring `target` (given on the physical
/// qubits in order, or on all qubits).
Circuit rebase(const Circuit &c, const PauliString &target, RebaseMode mode = RebaseMode::Basis);

struct CxDemo {
    Circuit circuit;
    size_t control = 0;
    size_t target = 1;
    size_t auxiliary = 2;
    /// Input Pauli and its expected image, K·P = (-1)^sign·image·K.
    std::vector<std::pair<PauliString, SignedPauli>> expected_map;
};

/// X_a; Z_c Z_a; X_a X_t; Z_a on (control, target, auxiliary) = (0, 1, 2). Equals CX up to a Pauli.
CxDemo cx_via_measurements();

/// X_1; Z_0 Z_1; X_0. Moves the state of qubit 0 onto qubit 1 up to a Pauli.
Circuit teleportation_circuit();

}  // namespace dwr

#endif
