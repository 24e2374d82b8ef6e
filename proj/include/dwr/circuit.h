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

#ifndef DWR_CIRCUIT_H
#define DWR_CIRCUIT_H

#include <string>
#include <string_view>
#include <vector>

#include "dwr/pauli.h"

namespace dwr {

/// A one- or two-qubit Pauli measurement. `basis` is indexed by position in `support`, not by qubit.
struct MeasureOp {
    std::vector<size_t> support;
    PauliString basis;
    size_t outcome_id = 0;

    static MeasureOp make(const std::vector<size_t> &support, std::string_view letters, size_t outcome_id = 0);
    std::string letters() const;
    char letter_on(size_t qubit) const;
    /// The measured operator on all `num_qubits` qubits.
    PauliString full_basis(size_t num_qubits) const;
    bool operator==(const MeasureOp &other) const {
        return support == other.support && basis == other.basis && outcome_id == other.outcome_id;
    }
};

enum class Rotation { H, S, SDG };

struct RotationStep {
    size_t qubit;
    Rotation gate;
    bool operator==(const RotationStep &other) const {
        return qubit == other.qubit && gate == other.gate;
    }
};

const char *rotation_name(Rotation gate);

/// Layers of support-disjoint measurements, plus single-qubit rotations applied before the first layer
/// (prologue) and after the last (epilogue). Outcome ids follow reading order: layer by layer, op by op.
struct Circuit {
    size_t qubit_count = 0;
    std::vector<size_t> physical;
    std::vector<size_t> auxiliary;
    std::vector<std::vector<MeasureOp>> layers;
    std::vector<RotationStep> prologue;
    std::vector<RotationStep> epilogue;

    size_t op_count() const;
    /// All ops in reading order.
    std::vector<MeasureOp> ops() const;
    /// Reassigns outcome ids in reading order.
    void renumber();
    /// Throws std::invalid_argument when a structural invariant is broken.
    void validate() const;
    bool operator==(const Circuit &other) const;
};

struct Metrics {
    size_t auxiliary_count = 0;
    size_t depth = 0;
    size_t volume = 0;
    /// Per qubit: layers between its first and last op (inclusive) in which it is not measured.
    std::vector<size_t> idle;
};

size_t depth(const Circuit &c);
Metrics metrics(const Circuit &c);

/// Greedy earliest-layer placement in reading order. An op may only move ahead of earlier ops whose letters
/// commute with it on every shared qubit. If `new_id_of_old` is given it receives the outcome id relabeling.
Circuit reschedule_asap(const Circuit &c, std::vector<size_t> *new_id_of_old = nullptr);

/// Text format:
///   qubits N
///   physical i j ...
///   aux i j ...
///   rot pre|post q H|S|SDG ...
///   M <letters> <q> [<q>]
///   ---            (layer separator)
/// `#` starts a comment.
std::string serialize_circuit(const Circuit &c);
Circuit parse_circuit(std::string_view text);

}  // namespace dwr

#endif
