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

#include <random>
#include <stdexcept>

#include "dwr/compile.h"
#include "dwr/oracle.h"
#include "dwr/tableau.h"
#include "gtest/gtest.h"

using namespace dwr;

namespace {

PauliString all_z(size_t w) {
    return PauliString::from_text(std::string(w, 'Z'));
}

std::string parse_error(const std::string &text) {
    try {
        parse_circuit(text);
    } catch (const std::invalid_argument &e) {
        return e.what();
    }
    return "";
}

OutcomeExpr relabel(const OutcomeExpr &e, const std::vector<size_t> &new_id_of_old) {
    std::vector<size_t> ids;
    for (size_t t : e.terms) {
        ids.push_back(new_id_of_old[t]);
    }
    OutcomeExpr r = OutcomeExpr::sum_of(ids);
    r ^= e.constant;
    return r;
}

struct Named {
    std::string name;
    Circuit circuit;
};

std::vector<Named> small_instances() {
    std::vector<Named> out;
    for (size_t w = 3; w <= 4; w++) {
        out.push_back({"cs" + std::to_string(w), compile_constant_space(w)});
        out.push_back({"d5_" + std::to_string(w), compile_depth5(w)});
        out.push_back({"d6_" + std::to_string(w), compile_depth6(w)});
        for (size_t a = 2; a <= w; a++) {
            out.push_back({"int" + std::to_string(w) + "_" + std::to_string(a), compile_interpolating(w, a)});
        }
    }
    return out;
}

}  // namespace

TEST(circuit, depth_examples) {
    EXPECT_EQ(depth(Circuit{}), 0u);
    EXPECT_EQ(depth(compile_depth5(4)), 5u);
    EXPECT_EQ(depth(compile_constant_space(6)), 9u);
}

TEST(circuit, metrics_examples) {
    Metrics m5 = metrics(compile_depth5(5));
    EXPECT_EQ(m5.auxiliary_count, 5u);
    EXPECT_EQ(m5.depth, 5u);
    EXPECT_EQ(m5.volume, 25u);
    Metrics m6 = metrics(compile_depth6(6));
    EXPECT_EQ(m6.auxiliary_count, 3u);
    EXPECT_EQ(m6.depth, 6u);
    EXPECT_EQ(m6.volume, 18u);
    Metrics cs = metrics(compile_constant_space(8));
    EXPECT_EQ(cs.auxiliary_count, 2u);
    EXPECT_EQ(cs.depth, 13u);
    EXPECT_EQ(cs.volume, 26u);
}

TEST(circuit, idle_counts) {
    Circuit c = parse_circuit(
        "qubits 3\nphysical 0\naux 1 2\n"
        "M X 1\n---\nM ZZ 0 1\n---\nM X 2\n---\nM XX 1 2\n");
    Metrics m = metrics(c);
    // Qubit 1 is alive in layers 0..3 and skips layer 2; qubit 2 only appears in layers 2 and 3.
    EXPECT_EQ(m.idle, (std::vector<size_t>{0, 1, 0}));
}

TEST(circuit, round_trip) {
    Circuit c = compile_depth5(3);
    std::string text = serialize_circuit(c);
    Circuit back = parse_circuit(text);
    EXPECT_EQ(back, c);
    EXPECT_EQ(serialize_circuit(back), text);

    Circuit r = rebase(compile_depth6(5), PauliString::from_text("XYZYX"), RebaseMode::Rotations);
    EXPECT_EQ(parse_circuit(serialize_circuit(r)), r);
}

TEST(circuit, parse_errors) {
    EXPECT_NE(parse_error("qubits 3\naux 0 1 2\nM ZZZ 0 1 2\n").find("at most 2"), std::string::npos);
    EXPECT_NE(parse_error("qubits 3\naux 0 1 2\nM ZZ 0 1\nM X 1\n").find("already measured"), std::string::npos);
    EXPECT_NE(parse_error("qubits 3\naux 0 1 2\nM ZZ 0 1\nM X 1\n").find("line 4"), std::string::npos);
    EXPECT_NE(parse_error("M Z 0\n").find("must come first"), std::string::npos);
    EXPECT_NE(parse_error("qubits 2\naux 0 1\nM Z 2\n").find("out of range"), std::string::npos);
    EXPECT_NE(parse_error("qubits 2\naux 0 1\nM W 1\n").find("bad basis"), std::string::npos);
    EXPECT_NE(parse_error("qubits 2\naux 0 1\nM Z 1\n---\n").find("empty layer"), std::string::npos);
    EXPECT_NE(parse_error("qubits 2\naux 0 1\nM Z 1\n---\n---\nM Z 0\n").find("empty layer"), std::string::npos);
    EXPECT_NE(parse_error("qubits 2\naux 0\nM Z 1\n").find("neither physical"), std::string::npos);
    EXPECT_NE(parse_error("qubits 2\naux 0 1\nM Z 1\nphysical 0\n").find("must precede"), std::string::npos);
    EXPECT_NE(parse_error("qubits 2\naux 0 1\nrot pre 0 T\n").find("unknown rotation"), std::string::npos);
}

TEST(circuit, validate_rejects_overlap) {
    Circuit c = compile_depth5(3);
    c.layers[0].push_back(MeasureOp::make({c.layers[0][0].support[0]}, "Z", 99));
    EXPECT_THROW(c.validate(), std::invalid_argument);
}

TEST(reschedule_asap, depth5_stays_depth5) {
    for (size_t w = 3; w <= 8; w++) {
        Circuit c = compile_depth5(w);
        Circuit r = reschedule_asap(c);
        EXPECT_EQ(depth(r), 5u) << w;
        EXPECT_EQ(r.op_count(), c.op_count());
        // The first two layers cannot move.
        EXPECT_EQ(r.layers[0], c.layers[0]);
        EXPECT_EQ(r.layers[1].size(), c.layers[1].size());
    }
    // Z on the first auxiliary only waits for its XX.
    Circuit r3 = reschedule_asap(compile_depth5(3));
    EXPECT_EQ(r3.layers[3].size(), 2u);
}

TEST(reschedule_asap, merges_disjoint_ops) {
    Circuit c = parse_circuit("qubits 4\naux 0 1 2 3\nM ZZ 0 1\n---\nM XX 2 3\n");
    Circuit r = reschedule_asap(c);
    EXPECT_EQ(depth(r), 1u);
    EXPECT_EQ(r.op_count(), 2u);
}

TEST(reschedule_asap, keeps_anticommuting_order) {
    Circuit c = parse_circuit("qubits 3\naux 0 1 2\nM Z 0\n---\nM X 1\n---\nM XX 0 2\n---\nM ZZ 1 2\n");
    std::vector<size_t> relabel_ids;
    Circuit r = reschedule_asap(c, &relabel_ids);
    // Z0 and X1 share the first layer. XX02 waits for Z0, and ZZ12 waits for XX02.
    EXPECT_EQ(depth(r), 3u);
    EXPECT_EQ(relabel_ids, (std::vector<size_t>{0, 1, 2, 3}));
}

TEST(reschedule_asap, never_increases_depth) {
    for (size_t w = 3; w <= 12; w++) {
        std::vector<Circuit> cs = {compile_constant_space(w), compile_depth5(w), compile_depth6(w)};
        for (size_t a = 2; a <= w; a++) {
            cs.push_back(compile_interpolating(w, a));
        }
        for (const Circuit &c : cs) {
            Circuit r = reschedule_asap(c);
            EXPECT_LE(depth(r), depth(c));
            EXPECT_EQ(r.op_count(), c.op_count());
            r.validate();
        }
        EXPECT_EQ(depth(reschedule_asap(compile_constant_space(w))), depth(compile_constant_space(w))) << w;
    }
}

TEST(reschedule_asap, preserves_semantics_small) {
    std::mt19937_64 rng(5);
    for (const auto &[name, c] : small_instances()) {
        std::vector<size_t> new_id_of_old;
        Circuit r = reschedule_asap(c, &new_id_of_old);
        PauliString t = all_z(c.physical.size());
        VerificationReport before = verify_dwr(c, t);
        VerificationReport after = verify_dwr(r, t);
        ASSERT_TRUE(before.ok) << name;
        ASSERT_TRUE(after.ok) << name << ": " << after.diagnosis;
        EXPECT_EQ(after.sign_mask, relabel(before.sign_mask, new_id_of_old)) << name;

        OracleReport dense = oracle_verify(r, t);
        EXPECT_TRUE(dense.ok) << name << ": " << dense.str();

        // Same projector product for the same outcomes, relabeled.
        for (int trial = 0; trial < 8; trial++) {
            std::vector<uint8_t> old_bits(c.op_count()), new_bits(c.op_count());
            for (size_t k = 0; k < old_bits.size(); k++) {
                old_bits[k] = rng() & 1;
                new_bits[new_id_of_old[k]] = old_bits[k];
            }
            DenseMatrix a = sequence_operator(c, old_bits);
            DenseMatrix b = sequence_operator(r, new_bits);
            double diff = 0;
            for (size_t k = 0; k < a.data.size(); k++) {
                diff = std::max(diff, std::abs(a.data[k] - b.data[k]));
            }
            EXPECT_LT(diff, 1e-12) << name;
        }
    }
}
