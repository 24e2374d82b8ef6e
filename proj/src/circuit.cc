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

#include "dwr/circuit.h"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

#include "text_util.h"

namespace dwr {

namespace {

bool letters_anticommute(char a, char b) {
    return a != 'I' && b != 'I' && a != b;
}

// True if the two ops fail to commute on some shared qubit.
bool ordered_pair(const MeasureOp &a, const MeasureOp &b) {
    for (size_t q : a.support) {
        if (letters_anticommute(a.letter_on(q), b.letter_on(q))) {
            return true;
        }
    }
    return false;
}

}  // namespace

MeasureOp MeasureOp::make(const std::vector<size_t> &support, std::string_view letters, size_t outcome_id) {
    MeasureOp op;
    op.support = support;
    op.basis = PauliString::from_text(letters);
    op.outcome_id = outcome_id;
    return op;
}

std::string MeasureOp::letters() const {
    std::string result;
    for (size_t k = 0; k < basis.num_qubits(); k++) {
        result.push_back(basis.letter(k));
    }
    return result;
}

char MeasureOp::letter_on(size_t qubit) const {
    for (size_t k = 0; k < support.size(); k++) {
        if (support[k] == qubit) {
            return basis.letter(k);
        }
    }
    return 'I';
}

PauliString MeasureOp::full_basis(size_t num_qubits) const {
    PauliString result = PauliString::from_sparse(num_qubits, support, letters());
    result.phase = basis.phase;
    return result;
}

const char *rotation_name(Rotation gate) {
    switch (gate) {
        case Rotation::H:
            return "H";
        case Rotation::S:
            return "S";
        case Rotation::SDG:
            return "SDG";
    }
    return "?";
}

size_t Circuit::op_count() const {
    size_t total = 0;
    for (const auto &layer : layers) {
        total += layer.size();
    }
    return total;
}

std::vector<MeasureOp> Circuit::ops() const {
    std::vector<MeasureOp> result;
    for (const auto &layer : layers) {
        result.insert(result.end(), layer.begin(), layer.end());
    }
    return result;
}

void Circuit::renumber() {
    size_t next = 0;
    for (auto &layer : layers) {
        for (auto &op : layer) {
            op.outcome_id = next++;
        }
    }
}

void Circuit::validate() const {
    auto fail = [](const std::string &message) {
        throw std::invalid_argument("invalid circuit: " + message);
    };
    std::vector<int> role(qubit_count, 0);
    for (size_t q : physical) {
        if (q >= qubit_count) {
            fail("physical qubit " + std::to_string(q) + " out of range");
        }
        if (role[q]) {
            fail("qubit " + std::to_string(q) + " listed twice");
        }
        role[q] = 1;
    }
    for (size_t q : auxiliary) {
        if (q >= qubit_count) {
            fail("auxiliary qubit " + std::to_string(q) + " out of range");
        }
        if (role[q]) {
            fail("qubit " + std::to_string(q) + " listed twice");
        }
        role[q] = 2;
    }
    size_t expected_id = 0;
    for (size_t layer_index = 0; layer_index < layers.size(); layer_index++) {
        const auto &layer = layers[layer_index];
        if (layer.empty()) {
            fail("layer " + std::to_string(layer_index) + " is empty");
        }
        std::set<size_t> used;
        for (const auto &op : layer) {
            if (op.support.empty() || op.support.size() > 2) {
                fail("op on " + std::to_string(op.support.size()) + " qubits");
            }
            if (op.basis.num_qubits() != op.support.size() || op.basis.weight() != op.support.size()) {
                fail("op basis " + op.basis.str() + " does not match its support");
            }
            if (op.basis.phase != 0) {
                fail("op basis " + op.basis.str() + " must have a + sign");
            }
            for (size_t q : op.support) {
                if (q >= qubit_count) {
                    fail("op qubit " + std::to_string(q) + " out of range");
                }
                if (!role[q]) {
                    fail("op touches qubit " + std::to_string(q) + " which is neither physical nor auxiliary");
                }
                if (!used.insert(q).second) {
                    fail("qubit " + std::to_string(q) + " used twice in layer " + std::to_string(layer_index));
                }
            }
            if (op.outcome_id != expected_id) {
                fail("outcome ids must follow reading order");
            }
            expected_id++;
        }
    }
    for (const auto *list : {&prologue, &epilogue}) {
        for (const auto &step : *list) {
            if (step.qubit >= qubit_count) {
                fail("rotation on qubit " + std::to_string(step.qubit) + " out of range");
            }
        }
    }
}

bool Circuit::operator==(const Circuit &other) const {
    return qubit_count == other.qubit_count && physical == other.physical && auxiliary == other.auxiliary &&
           layers == other.layers && prologue == other.prologue && epilogue == other.epilogue;
}

size_t depth(const Circuit &c) {
    return c.layers.size();
}

Metrics metrics(const Circuit &c) {
    Metrics m;
    m.auxiliary_count = c.auxiliary.size();
    m.depth = c.layers.size();
    m.volume = m.auxiliary_count * m.depth;
    m.idle.assign(c.qubit_count, 0);
    std::vector<size_t> first(c.qubit_count, SIZE_MAX), last(c.qubit_count, 0), busy(c.qubit_count, 0);
    for (size_t k = 0; k < c.layers.size(); k++) {
        for (const auto &op : c.layers[k]) {
            for (size_t q : op.support) {
                first[q] = std::min(first[q], k);
                last[q] = k;
                busy[q]++;
            }
        }
    }
    for (size_t q = 0; q < c.qubit_count; q++) {
        if (first[q] != SIZE_MAX) {
            m.idle[q] = last[q] - first[q] + 1 - busy[q];
        }
    }
    return m;
}

Circuit reschedule_asap(const Circuit &c, std::vector<size_t> *new_id_of_old) {
    std::vector<MeasureOp> ops = c.ops();
    std::vector<size_t> placed(ops.size());
    std::vector<std::vector<size_t>> layer_members;
    std::vector<std::set<size_t>> layer_qubits;
    for (size_t j = 0; j < ops.size(); j++) {
        size_t earliest = 0;
        for (size_t i = 0; i < j; i++) {
            if (ordered_pair(ops[i], ops[j])) {
                earliest = std::max(earliest, placed[i] + 1);
            }
        }
        size_t layer = earliest;
        while (true) {
            if (layer == layer_members.size()) {
                layer_members.emplace_back();
                layer_qubits.emplace_back();
            }
            bool free = true;
            for (size_t q : ops[j].support) {
                free &= !layer_qubits[layer].count(q);
            }
            if (free) {
                break;
            }
            layer++;
        }
        placed[j] = layer;
        layer_members[layer].push_back(j);
        for (size_t q : ops[j].support) {
            layer_qubits[layer].insert(q);
        }
    }

    Circuit result = c;
    result.layers.clear();
    if (new_id_of_old) {
        new_id_of_old->assign(ops.size(), 0);
    }
    size_t next = 0;
    for (const auto &members : layer_members) {
        std::vector<MeasureOp> layer;
        for (size_t j : members) {
            if (new_id_of_old) {
                (*new_id_of_old)[ops[j].outcome_id] = next;
            }
            layer.push_back(ops[j]);
            layer.back().outcome_id = next++;
        }
        result.layers.push_back(std::move(layer));
    }
    return result;
}

std::string serialize_circuit(const Circuit &c) {
    std::ostringstream out;
    auto list = [&](const char *head, const std::vector<size_t> &values) {
        out << head;
        for (size_t v : values) {
            out << " " << v;
        }
        out << "\n";
    };
    auto rotations = [&](const char *where, const std::vector<RotationStep> &steps) {
        for (size_t k = 0; k < steps.size();) {
            out << "rot " << where << " " << steps[k].qubit;
            size_t q = steps[k].qubit;
            for (; k < steps.size() && steps[k].qubit == q; k++) {
                out << " " << rotation_name(steps[k].gate);
            }
            out << "\n";
        }
    };
    out << "qubits " << c.qubit_count << "\n";
    list("physical", c.physical);
    list("aux", c.auxiliary);
    rotations("pre", c.prologue);
    rotations("post", c.epilogue);
    for (size_t k = 0; k < c.layers.size(); k++) {
        if (k) {
            out << "---\n";
        }
        for (const auto &op : c.layers[k]) {
            out << "M " << op.letters();
            for (size_t q : op.support) {
                out << " " << q;
            }
            out << "\n";
        }
    }
    return out.str();
}

Circuit parse_circuit(std::string_view input) {
    using text::ParseError;
    Circuit c;
    bool have_header = false;
    bool in_body = false;
    bool pending_separator = false;
    size_t separator_line = 0;
    std::vector<MeasureOp> current;
    std::set<size_t> current_qubits;
    size_t next_id = 0;

    text::for_each_line(input, [&](size_t line, const std::vector<std::string> &tokens) {
        const std::string &head = tokens[0];
        if (head == "qubits") {
            if (have_header || tokens.size() != 2) {
                throw ParseError(line, "expected a single 'qubits N' line");
            }
            c.qubit_count = text::parse_index(tokens[1], line);
            have_header = true;
            return;
        }
        if (!have_header) {
            throw ParseError(line, "'qubits N' must come first");
        }
        auto index = [&](const std::string &tok) {
            size_t q = text::parse_index(tok, line);
            if (q >= c.qubit_count) {
                throw ParseError(line, "qubit " + tok + " out of range");
            }
            return q;
        };
        if (head == "physical" || head == "aux") {
            if (in_body) {
                throw ParseError(line, "'" + head + "' must precede the measurement layers");
            }
            auto &dest = head == "physical" ? c.physical : c.auxiliary;
            for (size_t k = 1; k < tokens.size(); k++) {
                dest.push_back(index(tokens[k]));
            }
        } else if (head == "rot") {
            if (in_body) {
                throw ParseError(line, "'rot' must precede the measurement layers");
            }
            if (tokens.size() < 4 || (tokens[1] != "pre" && tokens[1] != "post")) {
                throw ParseError(line, "expected 'rot pre|post q GATE...'");
            }
            size_t q = index(tokens[2]);
            auto &dest = tokens[1] == "pre" ? c.prologue : c.epilogue;
            for (size_t k = 3; k < tokens.size(); k++) {
                Rotation gate;
                if (tokens[k] == "H") {
                    gate = Rotation::H;
                } else if (tokens[k] == "S") {
                    gate = Rotation::S;
                } else if (tokens[k] == "SDG") {
                    gate = Rotation::SDG;
                } else {
                    throw ParseError(line, "unknown rotation '" + tokens[k] + "'");
                }
                dest.push_back({q, gate});
            }
        } else if (head == "---") {
            if (tokens.size() != 1) {
                throw ParseError(line, "unexpected text after '---'");
            }
            if (current.empty()) {
                throw ParseError(line, "empty layer");
            }
            c.layers.push_back(std::move(current));
            current.clear();
            current_qubits.clear();
            in_body = true;
            pending_separator = true;
            separator_line = line;
        } else if (head == "M") {
            in_body = true;
            pending_separator = false;
            if (tokens.size() < 3) {
                throw ParseError(line, "expected 'M <letters> <qubits>'");
            }
            const std::string &letters = tokens[1];
            size_t arity = tokens.size() - 2;
            if (arity > 2) {
                throw ParseError(line, "measurement on " + std::to_string(arity) + " qubits; at most 2 allowed");
            }
            if (letters.size() != arity) {
                throw ParseError(line, "letters '" + letters + "' do not match " + std::to_string(arity) + " qubits");
            }
            std::vector<size_t> support;
            for (size_t k = 2; k < tokens.size(); k++) {
                size_t q = index(tokens[k]);
                if (!current_qubits.insert(q).second) {
                    throw ParseError(line, "qubit " + tokens[k] + " already measured in this layer");
                }
                support.push_back(q);
            }
            for (char ch : letters) {
                if (ch != 'X' && ch != 'Y' && ch != 'Z') {
                    throw ParseError(line, "bad basis letter '" + std::string(1, ch) + "'");
                }
            }
            current.push_back(MeasureOp::make(support, letters, next_id++));
        } else {
            throw ParseError(line, "unknown directive '" + head + "'");
        }
    });
    if (!have_header) {
        throw ParseError(0, "missing 'qubits N' line");
    }
    if (pending_separator) {
        throw ParseError(separator_line, "empty layer after separator");
    }
    if (!current.empty()) {
        c.layers.push_back(std::move(current));
    }
    c.validate();
    return c;
}

}  // namespace dwr
