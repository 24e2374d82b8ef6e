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

#ifndef DWR_OUTCOME_EXPR_H
#define DWR_OUTCOME_EXPR_H

#include <cstdint>
#include <string>
#include <vector>

#include "dwr/pauli.h"

namespace dwr {

/// Affine GF(2) expression c ⊕ m_i ⊕ m_j ⊕ ... over measurement outcome bits.
struct OutcomeExpr {
    bool constant = false;
    std::vector<size_t> terms;  // Sorted, duplicate-free.

    static OutcomeExpr symbol(size_t id);
    static OutcomeExpr of_constant(bool value);
    static OutcomeExpr sum_of(std::vector<size_t> ids);

    bool is_constant() const {
        return terms.empty();
    }
    bool evaluate(const std::vector<uint8_t> &outcomes) const;

    OutcomeExpr &operator^=(const OutcomeExpr &other);
    OutcomeExpr &operator^=(bool bit) {
        constant ^= bit;
        return *this;
    }
    OutcomeExpr operator^(const OutcomeExpr &other) const {
        OutcomeExpr result = *this;
        result ^= other;
        return result;
    }
    bool operator==(const OutcomeExpr &other) const {
        return constant == other.constant && terms == other.terms;
    }
    bool operator!=(const OutcomeExpr &other) const {
        return !(*this == other);
    }

    /// "m0+m3+1", or "0" when empty. `first_index` shifts the printed ids.
    std::string str(size_t first_index = 0) const;
};

/// (-1)^sign · pauli.
struct SignedPauli {
    PauliString pauli;
    OutcomeExpr sign;
};

}  // namespace dwr

#endif
