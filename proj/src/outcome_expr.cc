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

#include "dwr/outcome_expr.h"

#include <algorithm>
#include <iterator>
#include <stdexcept>

namespace dwr {

OutcomeExpr OutcomeExpr::symbol(size_t id) {
    OutcomeExpr result;
    result.terms.push_back(id);
    return result;
}

OutcomeExpr OutcomeExpr::of_constant(bool value) {
    OutcomeExpr result;
    result.constant = value;
    return result;
}

OutcomeExpr OutcomeExpr::sum_of(std::vector<size_t> ids) {
    OutcomeExpr result;
    for (size_t id : ids) {
        result ^= symbol(id);
    }
    return result;
}

bool OutcomeExpr::evaluate(const std::vector<uint8_t> &outcomes) const {
    bool value = constant;
    for (size_t id : terms) {
        if (id >= outcomes.size()) {
            throw std::out_of_range("outcome m" + std::to_string(id) + " not assigned");
        }
        value ^= outcomes[id] != 0;
    }
    return value;
}

OutcomeExpr &OutcomeExpr::operator^=(const OutcomeExpr &other) {
    constant ^= other.constant;
    std::vector<size_t> merged;
    std::set_symmetric_difference(
        terms.begin(), terms.end(), other.terms.begin(), other.terms.end(), std::back_inserter(merged));
    terms = std::move(merged);
    return *this;
}

std::string OutcomeExpr::str(size_t first_index) const {
    std::string result;
    for (size_t id : terms) {
        if (!result.empty()) {
            result += "+";
        }
        result += "m" + std::to_string(id + first_index);
    }
    if (constant) {
        result += result.empty() ? "1" : "+1";
    }
    return result.empty() ? "0" : result;
}

}  // namespace dwr
