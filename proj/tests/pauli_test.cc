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

#include <complex>
#include <random>
#include <stdexcept>
#include <vector>

#include "gtest/gtest.h"

using namespace dwr;

namespace {

using cd = std::complex<double>;
using Mat = std::vector<cd>;

// Independent Kronecker-product reference. Qubit 0 is the leftmost factor.
Mat letter_matrix(char c) {
    const cd i(0, 1);
    switch (c) {
        case 'X':
            return {0, 1, 1, 0};
        case 'Y':
            return {0, -i, i, 0};
        case 'Z':
            return {1, 0, 0, -1};
        default:
            return {1, 0, 0, 1};
    }
}

Mat kron(const Mat &a, size_t da, const Mat &b, size_t db) {
    Mat r(da * db * da * db);
    for (size_t i = 0; i < da; i++)
        for (size_t j = 0; j < da; j++)
            for (size_t k = 0; k < db; k++)
                for (size_t l = 0; l < db; l++)
                    r[(i * db + k) * (da * db) + j * db + l] = a[i * da + j] * b[k * db + l];
    return r;
}

Mat dense(const PauliString &p) {
    Mat m = {1};
    size_t d = 1;
    for (size_t q = 0; q < p.num_qubits(); q++) {
        m = kron(m, d, letter_matrix(p.letter(q)), 2);
        d *= 2;
    }
    cd scale[] = {cd(1, 0), cd(0, 1), cd(-1, 0), cd(0, -1)};
    for (auto &v : m) {
        v *= scale[p.phase & 3];
    }
    return m;
}

Mat matmul(const Mat &a, const Mat &b, size_t d) {
    Mat r(d * d);
    for (size_t i = 0; i < d; i++)
        for (size_t k = 0; k < d; k++)
            for (size_t j = 0; j < d; j++)
                r[i * d + j] += a[i * d + k] * b[k * d + j];
    return r;
}

bool same(const Mat &a, const Mat &b) {
    for (size_t k = 0; k < a.size(); k++) {
        if (std::abs(a[k] - b[k]) > 1e-12) {
            return false;
        }
    }
    return true;
}

PauliString random_pauli(size_t n, std::mt19937_64 &rng) {
    PauliString p(n);
    for (size_t q = 0; q < n; q++) {
        p.set_letter(q, "IXYZ"[rng() % 4]);
    }
    p.phase = rng() % 4;
    return p;
}

}  // namespace

TEST(pauli_string, text_round_trip) {
    for (const char *text : {"+ZZXI", "-XY", "+iZ", "-iXZ", "+I", "+YYYY"}) {
        EXPECT_EQ(PauliString::from_text(text).str(), text);
    }
    EXPECT_EQ(PauliString::from_text("ZZ").str(), "+ZZ");
    EXPECT_EQ(PauliString::from_text("-ZZXI").phase, 2);
    EXPECT_THROW(PauliString::from_text("ZQ"), std::invalid_argument);
    EXPECT_THROW(PauliString::from_text("*Z"), std::invalid_argument);
}

TEST(pauli_string, sparse_and_weight) {
    PauliString p = PauliString::from_sparse(6, {0, 4}, "ZY");
    EXPECT_EQ(p.str(), "+ZIIIYI");
    EXPECT_EQ(p.weight(), 2u);
    EXPECT_EQ(p.support(), (std::vector<size_t>{0, 4}));
    EXPECT_THROW(PauliString::from_sparse(3, {3}, "X"), std::invalid_argument);
}

TEST(pauli_string, hermiticity) {
    EXPECT_TRUE(PauliString::from_text("-XYZ").is_hermitian());
    EXPECT_FALSE(PauliString::from_text("iXYZ").is_hermitian());
}

TEST(pauli_string, multiply_examples) {
    PauliString xz = PauliString::from_text("XI") * PauliString::from_text("ZI");
    EXPECT_EQ(xz.str(), "-iYI");
    EXPECT_EQ(xz.phase, 3);
    PauliString zz = PauliString::from_text("ZZ") * PauliString::from_text("ZZ");
    EXPECT_TRUE(zz.is_identity_up_to_phase());
    EXPECT_EQ(zz.phase, 0);
    PauliString yy = PauliString::from_text("XX") * PauliString::from_text("ZZ");
    EXPECT_TRUE(yy.same_letters(PauliString::from_text("YY")));
    EXPECT_TRUE(same(dense(yy), matmul(dense(PauliString::from_text("XX")), dense(PauliString::from_text("ZZ")), 4)));
    EXPECT_THROW(PauliString::from_text("X") * PauliString::from_text("XX"), std::invalid_argument);
}

TEST(pauli_string, commutes_examples) {
    EXPECT_TRUE(commutes(PauliString::from_text("ZZ"), PauliString::from_text("XX")));
    EXPECT_FALSE(commutes(PauliString::from_text("XI"), PauliString::from_text("ZI")));
    EXPECT_FALSE(commutes(PauliString::from_text("XXI"), PauliString::from_text("IZZ")));
}

TEST(pauli_string, destabilizer_examples) {
    EXPECT_EQ(destabilizer(PauliString::from_text("ZZZ")), PauliString::from_text("XII"));
    EXPECT_EQ(destabilizer(PauliString::from_text("XX")), PauliString::from_text("ZI"));
    EXPECT_EQ(destabilizer(PauliString::from_text("YZ")), PauliString::from_text("ZI"));
    EXPECT_EQ(destabilizer(PauliString::from_text("IIY")), PauliString::from_text("IIZ"));
    EXPECT_THROW(destabilizer(PauliString::from_text("III")), std::invalid_argument);
}

TEST(pauli_string, matches_dense_products) {
    std::mt19937_64 rng(7);
    for (size_t n = 1; n <= 5; n++) {
        size_t d = size_t{1} << n;
        for (int trial = 0; trial < 40; trial++) {
            PauliString a = random_pauli(n, rng);
            PauliString b = random_pauli(n, rng);
            PauliString c = random_pauli(n, rng);
            Mat da = dense(a), db = dense(b);
            Mat ab = matmul(da, db, d), ba = matmul(db, da, d);
            EXPECT_TRUE(same(dense(a * b), ab)) << a << " " << b;
            EXPECT_EQ(commutes(a, b), same(ab, ba)) << a << " " << b;
            EXPECT_EQ((a * b) * c, a * (b * c));
            if (a.is_hermitian()) {
                PauliString sq = a * a;
                EXPECT_TRUE(sq.is_identity_up_to_phase());
                EXPECT_EQ(sq.phase, 0);
            }
        }
    }
}

TEST(pauli_string, destabilizer_anticommutes) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; trial++) {
        PauliString p = random_pauli(1 + trial % 6, rng);
        p.phase = 0;
        if (p.weight() == 0) {
            continue;
        }
        PauliString q = destabilizer(p);
        EXPECT_EQ(q.weight(), 1u);
        EXPECT_FALSE(commutes(p, q)) << p;
        size_t d = size_t{1} << p.num_qubits();
        Mat pq = matmul(dense(p), dense(q), d), qp = matmul(dense(q), dense(p), d);
        for (auto &v : qp) {
            v = -v;
        }
        EXPECT_TRUE(same(pq, qp));
    }
}
