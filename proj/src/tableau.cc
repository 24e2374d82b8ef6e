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

#include "dwr/tableau.h"

#include <algorithm>
#include <sstream>

namespace dwr {

namespace {

struct Pivoted {
    SignedPauli row;
    size_t qubit;
    bool z_bit;
};

bool has_bit(const PauliString &p, size_t qubit, bool z_bit) {
    return z_bit ? p.zs[qubit] : p.xs[qubit];
}

std::vector<Pivoted> echelon_with_pivots(std::vector<SignedPauli> rows, const std::vector<size_t> &qubit_order) {
    std::vector<Pivoted> result;
    size_t rank = 0;
    for (size_t q : qubit_order) {
        for (bool z_bit : {false, true}) {
            size_t found = rank;
            while (found < rows.size() && !has_bit(rows[found].pauli, q, z_bit)) {
                found++;
            }
            if (found == rows.size()) {
                continue;
            }
            std::swap(rows[rank], rows[found]);
            for (size_t k = 0; k < rows.size(); k++) {
                if (k != rank && has_bit(rows[k].pauli, q, z_bit)) {
                    rows[k] = multiply_rows(rows[k], rows[rank]);
                }
            }
            result.push_back({rows[rank], q, z_bit});
            rank++;
        }
    }
    // Pivot rows keep changing as later columns are cleared; take their final form.
    for (size_t k = 0; k < result.size(); k++) {
        result[k].row = rows[k];
    }
    return result;
}

// Conjugates a single-qubit letter by a gate: returns g† P g, with `negate` toggled on a - sign.
char conjugate_letter(Rotation gate, char letter, bool &negate) {
    switch (gate) {
        case Rotation::H:
            if (letter == 'X') {
                return 'Z';
            }
            if (letter == 'Z') {
                return 'X';
            }
            if (letter == 'Y') {
                negate = !negate;
            }
            return letter;
        case Rotation::S:
            if (letter == 'X') {
                negate = !negate;
                return 'Y';
            }
            if (letter == 'Y') {
                return 'X';
            }
            return letter;
        case Rotation::SDG:
            if (letter == 'X') {
                return 'Y';
            }
            if (letter == 'Y') {
                negate = !negate;
                return 'X';
            }
            return letter;
    }
    return letter;
}

std::vector<std::vector<Rotation>> per_qubit(const std::vector<RotationStep> &steps, size_t n) {
    std::vector<std::vector<Rotation>> result(n);
    for (const auto &s : steps) {
        result[s.qubit].push_back(s.gate);
    }
    return result;
}

// Heisenberg picture of measuring `letter` after applying `gates` in order.
char pull_back(const std::vector<Rotation> &gates, char letter, bool &negate) {
    for (size_t k = gates.size(); k-- > 0;) {
        letter = conjugate_letter(gates[k], letter, negate);
    }
    return letter;
}

char anticommuting_letter(char letter) {
    return letter == 'Z' ? 'X' : 'Z';
}

}  // namespace

SignedPauli multiply_rows(const SignedPauli &a, const SignedPauli &b) {
    SignedPauli result{a.pauli * b.pauli, a.sign ^ b.sign};
    if (result.pauli.phase == 2) {
        result.pauli.phase = 0;
        result.sign ^= true;
    }
    return result;
}

std::vector<SignedPauli> echelon(std::vector<SignedPauli> rows, const std::vector<size_t> &qubit_order) {
    std::vector<SignedPauli> result;
    for (auto &p : echelon_with_pivots(std::move(rows), qubit_order)) {
        result.push_back(std::move(p.row));
    }
    return result;
}

std::vector<SignedPauli> restricted_subgroup(const std::vector<SignedPauli> &rows, const std::vector<size_t> &qubits) {
    size_t n = rows.empty() ? 0 : rows[0].pauli.num_qubits();
    std::vector<uint8_t> inside(n, 0);
    for (size_t q : qubits) {
        inside[q] = 1;
    }
    std::vector<size_t> order;
    for (size_t q = 0; q < n; q++) {
        if (!inside[q]) {
            order.push_back(q);
        }
    }
    for (size_t q = 0; q < n; q++) {
        if (inside[q]) {
            order.push_back(q);
        }
    }
    std::vector<SignedPauli> result;
    for (auto &p : echelon_with_pivots(rows, order)) {
        if (inside[p.qubit]) {
            result.push_back(std::move(p.row));
        }
    }
    return result;
}

const SignedPauli *SymbolicTableau::anticommuting_row(const PauliString &p) const {
    for (const auto &row : rows_) {
        if (!commutes(row.pauli, p)) {
            return &row;
        }
    }
    return nullptr;
}

std::optional<OutcomeExpr> SymbolicTableau::sign_of(const PauliString &p) const {
    if (p.num_qubits() != num_qubits_) {
        throw std::invalid_argument("Pauli size does not match the tableau");
    }
    if (p.phase & 1) {
        return std::nullopt;
    }
    std::vector<size_t> order(num_qubits_);
    for (size_t q = 0; q < num_qubits_; q++) {
        order[q] = q;
    }
    PauliString residual = p;
    residual.phase = 0;
    OutcomeExpr signs;
    for (const auto &piv : echelon_with_pivots(rows_, order)) {
        if (has_bit(residual, piv.qubit, piv.z_bit)) {
            residual *= piv.row.pauli;
            signs ^= piv.row.sign;
        }
    }
    if (residual.weight() != 0 || (residual.phase & 1)) {
        return std::nullopt;
    }
    // p·E1·E2··· = i^phase; the group holds (-1)^signs·E1·E2···.
    signs ^= residual.phase == 2;
    signs ^= p.phase == 2;
    return signs;
}

SymbolicTableau::Outcome SymbolicTableau::measure(const PauliString &p, size_t outcome_id) {
    if (p.num_qubits() != num_qubits_) {
        throw std::invalid_argument("Pauli size does not match the tableau");
    }
    if (!p.is_hermitian()) {
        throw std::invalid_argument("cannot measure non-Hermitian " + p.str());
    }
    bool negated = p.phase == 2;
    PauliString letters = p;
    letters.phase = 0;
    OutcomeExpr fresh = OutcomeExpr::symbol(outcome_id);
    SignedPauli new_row{letters, fresh ^ OutcomeExpr::of_constant(negated)};

    size_t pivot = rows_.size();
    for (size_t k = 0; k < rows_.size(); k++) {
        if (!commutes(rows_[k].pauli, letters)) {
            if (pivot == rows_.size()) {
                pivot = k;
            } else {
                rows_[k] = multiply_rows(rows_[k], rows_[pivot]);
            }
        }
    }
    if (pivot != rows_.size()) {
        rows_[pivot] = new_row;
        return {true, fresh};
    }
    if (auto known = sign_of(p)) {
        return {false, *known};
    }
    rows_.push_back(new_row);
    return {true, fresh};
}

std::vector<PauliString> measurement_sequence(const Circuit &c) {
    c.validate();
    auto pre = per_qubit(c.prologue, c.qubit_count);
    auto post = per_qubit(c.epilogue, c.qubit_count);
    for (size_t q = 0; q < c.qubit_count; q++) {
        std::vector<Rotation> both = pre[q];
        both.insert(both.end(), post[q].begin(), post[q].end());
        for (char letter : {'X', 'Z'}) {
            bool negate = false;
            if (pull_back(both, letter, negate) != letter || negate) {
                throw std::invalid_argument("epilogue does not undo the prologue on qubit " + std::to_string(q));
            }
        }
    }
    std::vector<PauliString> result;
    for (const auto &op : c.ops()) {
        PauliString p(c.qubit_count);
        bool negate = false;
        for (size_t k = 0; k < op.support.size(); k++) {
            size_t q = op.support[k];
            p.set_letter(q, pull_back(pre[q], op.basis.letter(k), negate));
        }
        p.phase = negate ? 2 : 0;
        result.push_back(p);
    }
    return result;
}

PauliString embed_target(const Circuit &c, const PauliString &target) {
    if (target.num_qubits() == c.qubit_count) {
        return target;
    }
    if (target.num_qubits() != c.physical.size()) {
        throw std::invalid_argument(
            "target " + target.str() + " has " + std::to_string(target.num_qubits()) + " qubits but the circuit has " +
            std::to_string(c.physical.size()) + " physical qubits");
    }
    PauliString full(c.qubit_count);
    for (size_t k = 0; k < c.physical.size(); k++) {
        full.set_letter(c.physical[k], target.letter(k));
    }
    full.phase = target.phase;
    return full;
}

PauliString VerificationReport::byproduct(const std::vector<uint8_t> &outcomes) const {
    PauliString result(byproduct_x.size());
    for (size_t q = 0; q < byproduct_x.size(); q++) {
        result.xs[q] = byproduct_x[q].evaluate(outcomes);
        result.zs[q] = byproduct_z[q].evaluate(outcomes);
    }
    return result;
}

namespace {

std::string byproduct_text(const VerificationReport &r) {
    std::string result;
    for (size_t q = 0; q < r.byproduct_x.size(); q++) {
        for (auto [letter, expr] : {std::pair{'X', &r.byproduct_x[q]}, std::pair{'Z', &r.byproduct_z[q]}}) {
            if (*expr != OutcomeExpr()) {
                result += (result.empty() ? "" : " ") + std::string(1, letter) + std::to_string(q) + "^(" +
                          expr->str() + ")";
            }
        }
    }
    return result.empty() ? "none" : result;
}

std::string sparse_text(const PauliString &p) {
    std::string result;
    for (size_t q : p.support()) {
        result += (result.empty() ? "" : " ") + std::string(1, p.letter(q)) + std::to_string(q);
    }
    return result.empty() ? "I" : result;
}

}  // namespace

std::string VerificationReport::str() const {
    std::ostringstream out;
    out << "verification: " << (ok ? "ok" : "FAILED") << "\n";
    if (!ok) {
        out << "diagnosis: " << diagnosis << "\n";
    } else {
        out << "sign mask: " << sign_mask.str() << "\n";
        out << "correction: apply " << sparse_text(correction) << " when " << correction_condition.str() << " = 1\n";
        out << "frame byproduct: " << byproduct_text(*this) << "\n";
    }
    out << "A=" << auxiliary_count << " D=" << depth << " V=" << volume << "\n";
    return out.str();
}

std::string VerificationReport::kv() const {
    std::ostringstream out;
    out << "ok=" << (ok ? 1 : 0) << "\n";
    if (!ok) {
        out << "diagnosis=" << diagnosis << "\n";
    } else {
        out << "sign_mask=" << sign_mask.str() << "\n";
        out << "correction=" << sparse_text(correction) << " if " << correction_condition.str() << "\n";
        out << "byproduct=" << byproduct_text(*this) << "\n";
    }
    out << "A=" << auxiliary_count << "\nD=" << depth << "\nV=" << volume << "\n";
    return out.str();
}

VerificationReport verify_dwr(const Circuit &c, const PauliString &target_in) {
    c.validate();
    VerificationReport report;
    Metrics m = metrics(c);
    report.auxiliary_count = m.auxiliary_count;
    report.depth = m.depth;
    report.volume = m.volume;

    PauliString target = embed_target(c, target_in);
    if (!target.is_hermitian()) {
        throw std::invalid_argument("target " + target_in.str() + " is not Hermitian");
    }
    {
        std::vector<size_t> phys = c.physical;
        std::sort(phys.begin(), phys.end());
        if (target.support() != phys) {
            throw std::invalid_argument("target " + target_in.str() + " must act on exactly the physical qubits");
        }
    }
    bool target_negated = target.phase == 2;
    PauliString target_letters = target;
    target_letters.phase = 0;

    auto fail = [&](const std::string &why) {
        report.ok = false;
        report.diagnosis = why;
        return report;
    };

    size_t n = c.qubit_count;
    std::vector<MeasureOp> ops = c.ops();
    std::vector<size_t> touches(n, 0);
    std::vector<const MeasureOp *> first_op(n, nullptr), last_op(n, nullptr);
    for (const auto &op : ops) {
        for (size_t q : op.support) {
            touches[q]++;
            if (!first_op[q]) {
                first_op[q] = &op;
            }
            last_op[q] = &op;
        }
    }
    for (size_t q : c.physical) {
        if (touches[q] != 1) {
            return fail(
                "physical qubit " + std::to_string(q) + " takes part in " + std::to_string(touches[q]) +
                " measurements instead of exactly one");
        }
    }
    std::vector<size_t> used_aux;
    for (size_t q : c.auxiliary) {
        if (!touches[q]) {
            continue;
        }
        used_aux.push_back(q);
        if (first_op[q]->support.size() != 1) {
            return fail("auxiliary qubit " + std::to_string(q) + " does not start with a single-qubit measurement");
        }
        if (last_op[q]->support.size() != 1) {
            return fail("auxiliary qubit " + std::to_string(q) + " does not end with a single-qubit measurement");
        }
    }

    std::vector<PauliString> sequence = measurement_sequence(c);
    SymbolicTableau tableau(n);

    // Commutant of the target on the physical qubits: T_i and C_i·C_{i+1}, with C_i anticommuting with T_i.
    std::vector<PauliString> generators;
    std::vector<char> target_letter, partner_letter;
    for (size_t k = 0; k < c.physical.size(); k++) {
        char t = target_letters.letter(c.physical[k]);
        target_letter.push_back(t);
        partner_letter.push_back(anticommuting_letter(t));
        generators.push_back(PauliString::from_sparse(n, {c.physical[k]}, std::string(1, t)));
    }
    for (size_t k = 0; k + 1 < c.physical.size(); k++) {
        generators.push_back(PauliString::from_sparse(
            n, {c.physical[k], c.physical[k + 1]}, std::string{partner_letter[k], partner_letter[k + 1]}));
    }
    std::vector<SignedPauli> flow;
    for (const auto &g : generators) {
        flow.push_back({g, OutcomeExpr()});
    }

    for (size_t j = 0; j < sequence.size(); j++) {
        const PauliString &p = sequence[j];
        for (size_t k = 0; k < flow.size(); k++) {
            if (commutes(flow[k].pauli, p)) {
                continue;
            }
            const SignedPauli *s = tableau.anticommuting_row(p);
            if (!s) {
                return fail(
                    "measurement m" + std::to_string(j) + " (" + ops[j].letters() + ") destroys the physical operator " +
                    generators[k].str());
            }
            flow[k].pauli *= s->pauli;
            flow[k].sign ^= s->sign;
        }
        auto outcome = tableau.measure(p, j);
        report.random.push_back(outcome.random);
        report.outcomes.push_back(outcome.value);
    }

    const auto &rows = tableau.rows();
    auto physical_group = restricted_subgroup(rows, c.physical);
    if (physical_group.empty()) {
        return fail("the target is not measured: no stabilizer is learned on the physical qubits");
    }
    if (physical_group.size() > 1 || !physical_group[0].pauli.same_letters(target_letters)) {
        return fail("extra learned physical stabilizer " + physical_group[0].pauli.str());
    }
    auto aux_group = restricted_subgroup(rows, used_aux);
    if (aux_group.size() != used_aux.size()) {
        return fail(
            "auxiliary qubits are not left in a determined state (" + std::to_string(aux_group.size()) + " of " +
            std::to_string(used_aux.size()) + " fixed)");
    }
    if (echelon(rows, [&] {
            std::vector<size_t> all(n);
            for (size_t q = 0; q < n; q++) {
                all[q] = q;
            }
            return all;
        }())
            .size() != 1 + used_aux.size()) {
        return fail("auxiliary qubits are left entangled with the physical qubits");
    }
    report.sign_mask = *tableau.sign_of(target_letters);
    report.sign_mask ^= target_negated;

    std::vector<OutcomeExpr> flip(generators.size());
    for (size_t k = 0; k < generators.size(); k++) {
        PauliString rest = generators[k] * flow[k].pauli;
        auto e = tableau.sign_of(rest);
        if (!e) {
            return fail("the physical operator " + generators[k].str() + " is not carried through the circuit");
        }
        flip[k] = flow[k].sign ^ *e;
    }

    size_t w = c.physical.size();
    report.byproduct_x.assign(n, OutcomeExpr());
    report.byproduct_z.assign(n, OutcomeExpr());
    OutcomeExpr target_power;
    auto add_letter = [&](size_t q, char letter, const OutcomeExpr &power) {
        if (letter == 'X' || letter == 'Y') {
            report.byproduct_x[q] ^= power;
        }
        if (letter == 'Z' || letter == 'Y') {
            report.byproduct_z[q] ^= power;
        }
    };
    for (size_t k = 0; k < w; k++) {
        if (k > 0) {
            target_power ^= flip[w + k - 1];
        }
        add_letter(c.physical[k], partner_letter[k], flip[k]);
        add_letter(c.physical[k], target_letter[k], target_power);
    }

    ConditionalPauli fix = correction_for(target, report.sign_mask, false);
    report.correction = fix.pauli;
    report.correction_condition = fix.condition;
    report.ok = true;
    return report;
}

std::vector<SignedPauli> pauli_map(const Circuit &c, const std::vector<PauliString> &inputs) {
    std::vector<PauliString> sequence = measurement_sequence(c);
    size_t n = c.qubit_count;
    std::vector<SignedPauli> flow;
    for (const auto &p : inputs) {
        if (p.num_qubits() != n) {
            throw std::invalid_argument("input " + p.str() + " does not match the circuit size");
        }
        flow.push_back({p, OutcomeExpr()});
    }
    SymbolicTableau tableau(n);
    for (size_t j = 0; j < sequence.size(); j++) {
        for (size_t k = 0; k < flow.size(); k++) {
            if (commutes(flow[k].pauli, sequence[j])) {
                continue;
            }
            const SignedPauli *s = tableau.anticommuting_row(sequence[j]);
            if (!s) {
                throw PropagationError(
                    inputs[k].str() + " does not survive measurement m" + std::to_string(j) + " (" +
                    sequence[j].str() + ")");
            }
            flow[k].pauli *= s->pauli;
            flow[k].sign ^= s->sign;
        }
        tableau.measure(sequence[j], j);
    }

    // Qubits left in a fixed single-qubit state are stripped from the images.
    std::vector<uint8_t> dead(n, 0);
    std::vector<size_t> order;
    for (size_t q = 0; q < n; q++) {
        if (!restricted_subgroup(tableau.rows(), {q}).empty()) {
            dead[q] = 1;
            order.push_back(q);
        }
    }
    for (size_t q = 0; q < n; q++) {
        if (!dead[q]) {
            order.push_back(q);
        }
    }
    auto pivots = echelon_with_pivots(tableau.rows(), order);
    for (size_t k = 0; k < flow.size(); k++) {
        for (const auto &piv : pivots) {
            if (dead[piv.qubit] && has_bit(flow[k].pauli, piv.qubit, piv.z_bit)) {
                flow[k].pauli *= piv.row.pauli;
                flow[k].sign ^= piv.row.sign;
            }
        }
        for (size_t q = 0; q < n; q++) {
            if (dead[q] && (flow[k].pauli.xs[q] | flow[k].pauli.zs[q])) {
                throw PropagationError(inputs[k].str() + " stays entangled with measured-out qubit " + std::to_string(q));
            }
        }
        if (flow[k].pauli.phase & 1) {
            throw PropagationError(inputs[k].str() + " maps to a non-Hermitian operator");
        }
        if (flow[k].pauli.phase == 2) {
            flow[k].pauli.phase = 0;
            flow[k].sign ^= true;
        }
    }
    return flow;
}

ConditionalPauli correction_for(const PauliString &target, const OutcomeExpr &sign_mask, bool desired) {
    if (!target.is_hermitian()) {
        throw std::invalid_argument("target " + target.str() + " is not Hermitian");
    }
    return {destabilizer(target), sign_mask ^ OutcomeExpr::of_constant(desired)};
}

std::pair<std::vector<OutcomeExpr>, std::vector<OutcomeExpr>> frame_correction(const std::vector<SignedPauli> &map) {
    if (map.empty()) {
        return {};
    }
    size_t n = map[0].pauli.num_qubits();
    // Unknowns: x_0..x_{n-1}, z_0..z_{n-1}. Correction X^x Z^z anticommutes with O iff x·O_z + z·O_x = 1.
    std::vector<std::vector<uint8_t>> lhs;
    std::vector<OutcomeExpr> rhs;
    for (const auto &entry : map) {
        std::vector<uint8_t> row(2 * n);
        for (size_t q = 0; q < n; q++) {
            row[q] = entry.pauli.zs[q];
            row[n + q] = entry.pauli.xs[q];
        }
        lhs.push_back(row);
        rhs.push_back(entry.sign);
    }
    std::vector<size_t> pivot_col;
    size_t rank = 0;
    for (size_t col = 0; col < 2 * n && rank < lhs.size(); col++) {
        size_t found = rank;
        while (found < lhs.size() && !lhs[found][col]) {
            found++;
        }
        if (found == lhs.size()) {
            continue;
        }
        std::swap(lhs[rank], lhs[found]);
        std::swap(rhs[rank], rhs[found]);
        for (size_t k = 0; k < lhs.size(); k++) {
            if (k != rank && lhs[k][col]) {
                for (size_t j = 0; j < 2 * n; j++) {
                    lhs[k][j] ^= lhs[rank][j];
                }
                rhs[k] ^= rhs[rank];
            }
        }
        pivot_col.push_back(col);
        rank++;
    }
    for (size_t k = rank; k < lhs.size(); k++) {
        if (rhs[k] != OutcomeExpr()) {
            throw std::invalid_argument("the map's signs cannot be removed by a single Pauli correction");
        }
    }
    std::vector<OutcomeExpr> xs(n), zs(n);
    for (size_t k = 0; k < rank; k++) {
        size_t col = pivot_col[k];
        (col < n ? xs[col] : zs[col - n]) = rhs[k];
    }
    return {xs, zs};
}

}  // namespace dwr
