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

#include "dwr/compile.h"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>
#include <tuple>

#include "dwr/tableau.h"

namespace dwr {

namespace {

// Ops are emitted in blocks; a block starts after every layer of the previous one and is packed first-fit.
class BlockLayering {
   public:
    explicit BlockLayering(Circuit &c) : circuit_(c) {
    }

    void next_block() {
        base_ = circuit_.layers.size();
    }

    void measure(const std::vector<size_t> &support, std::string_view letters) {
        size_t layer = base_;
        while (true) {
            if (layer == circuit_.layers.size()) {
                circuit_.layers.emplace_back();
            }
            bool free = true;
            for (const auto &op : circuit_.layers[layer]) {
                for (size_t q : op.support) {
                    free &= std::find(support.begin(), support.end(), q) == support.end();
                }
            }
            if (free) {
                break;
            }
            layer++;
        }
        circuit_.layers[layer].push_back(MeasureOp::make(support, letters));
    }

   private:
    Circuit &circuit_;
    size_t base_ = 0;
};

size_t gf2_rank(std::vector<std::vector<uint8_t>> m) {
    size_t rank = 0;
    size_t cols = m.empty() ? 0 : m[0].size();
    for (size_t col = 0; col < cols && rank < m.size(); col++) {
        size_t pivot = rank;
        while (pivot < m.size() && !m[pivot][col]) {
            pivot++;
        }
        if (pivot == m.size()) {
            continue;
        }
        std::swap(m[pivot], m[rank]);
        for (size_t r = 0; r < m.size(); r++) {
            if (r != rank && m[r][col]) {
                for (size_t k = col; k < cols; k++) {
                    m[r][k] ^= m[rank][k];
                }
            }
        }
        rank++;
    }
    return rank;
}

// Learned group of the sequence emitted so far, plus the commutant of Z^w on the leaves pushed through it.
// An op is safe when it keeps that commutant intact and keeps the parity of the touched leaves readable.
class Guard {
   public:
    Guard(size_t n, const std::vector<size_t> &leaves) : learned_(n), leaves_(leaves), touched_(n, 0) {
        for (size_t k = 0; k < leaves.size(); k++) {
            commutant_.push_back(PauliString::from_sparse(n, {leaves[k]}, "Z"));
            if (k + 1 < leaves.size()) {
                commutant_.push_back(PauliString::from_sparse(n, {leaves[k], leaves[k + 1]}, "XX"));
            }
        }
    }

    bool is_safe(const PauliString &p) const {
        Guard after = *this;
        return after.apply(p);
    }

    // Returns false if the op was unsafe; the state is updated either way.
    bool apply(const PauliString &p) {
        bool ok = true;
        if (const SignedPauli *row = learned_.anticommuting_row(p)) {
            PauliString absorb = row->pauli;
            for (auto &o : commutant_) {
                if (!commutes(o, p)) {
                    o *= absorb;
                }
            }
        } else {
            for (const auto &o : commutant_) {
                ok &= commutes(o, p);
            }
        }
        learned_.measure(p, 0);
        for (size_t v : leaves_) {
            touched_[v] |= p.letter(v) != 'I';
        }
        return ok && keeps_parity();
    }

    bool fixed_in_x(size_t q) const {
        return learned_.sign_of(PauliString::from_sparse(learned_.num_qubits(), {q}, "X")).has_value();
    }

   private:
    bool keeps_parity() const {
        std::vector<std::vector<uint8_t>> m;
        std::vector<uint8_t> parity;
        for (size_t v : leaves_) {
            parity.push_back(0);
            parity.push_back(touched_[v]);
        }
        for (const auto &row : learned_.rows()) {
            std::vector<uint8_t> bits;
            for (size_t v : leaves_) {
                bits.push_back(row.pauli.xs[v]);
                bits.push_back(row.pauli.zs[v]);
            }
            m.push_back(std::move(bits));
        }
        size_t rank = gf2_rank(m);
        m.push_back(parity);
        return gf2_rank(std::move(m)) == rank;
    }

    SymbolicTableau learned_;
    std::vector<size_t> leaves_;
    std::vector<uint8_t> touched_;
    std::vector<PauliString> commutant_;
};

std::vector<size_t> range(size_t n) {
    std::vector<size_t> result(n);
    std::iota(result.begin(), result.end(), 0);
    return result;
}

Circuit compile_on_graph(const ConnectivityGraph &g, size_t w) {
    return compile_general(validate_for_dwr(g, range(w)));
}

}  // namespace

Circuit compile_general(const TreeLayout &layout) {
    if (layout.leaves.size() <= 2) {
        throw std::invalid_argument("need more than 2 leaves");
    }
    const size_t n = layout.vertex_count;
    auto adj = layout.tree_adjacency();
    std::vector<uint8_t> is_leaf(n, 0);
    for (size_t v : layout.leaves) {
        if (v >= n || adj[v].size() != 1) {
            throw std::invalid_argument("vertex " + std::to_string(v) + " is not a leaf of the layout tree");
        }
        is_leaf[v] = 1;
    }
    std::vector<size_t> aux = layout.auxiliary();
    if (aux.size() < 2) {
        throw std::invalid_argument(
            "layout has " + std::to_string(aux.size()) + " auxiliary qubit(s); at least two are needed");
    }
    std::vector<size_t> parent_of(n, SIZE_MAX);
    std::vector<std::vector<size_t>> children(n), aux_neighbors(n);
    for (size_t v : layout.leaves) {
        parent_of[v] = adj[v][0];
        if (is_leaf[parent_of[v]]) {
            throw std::invalid_argument("two leaves are joined directly");
        }
        children[parent_of[v]].push_back(v);
    }
    for (size_t v : aux) {
        for (size_t u : adj[v]) {
            if (!is_leaf[u]) {
                aux_neighbors[v].push_back(u);
            }
        }
    }

    Circuit c;
    c.qubit_count = n;
    c.physical = layout.leaves;
    c.auxiliary = aux;
    BlockLayering out(c);

    // Ops that would read a leaf directly or drop the parity are never emitted; see Guard.
    Guard guard(n, layout.leaves);
    auto is_safe = [&](const PauliString &p) {
        return guard.is_safe(p);
    };
    std::vector<uint8_t> touched(n, 0);
    std::vector<char> last_letter(n, 0);
    std::vector<uint8_t> single_last(n, 0);
    std::set<size_t> after_single_x;
    auto measure = [&](const std::vector<size_t> &support, std::string_view letters) {
        guard.apply(PauliString::from_sparse(n, support, letters));
        out.measure(support, letters);
        for (size_t k = 0; k < support.size(); k++) {
            last_letter[support[k]] = letters[k];
            single_last[support[k]] = support.size() == 1;
            after_single_x.erase(support[k]);
            touched[support[k]] = 1;
        }
    };

    auto unmeasured_leaves = [&]() {
        std::vector<size_t> r;
        for (size_t v : layout.leaves) {
            if (!touched[v]) {
                r.push_back(v);
            }
        }
        std::sort(r.begin(), r.end());
        return r;
    };
    auto parents_of = [&](const std::vector<size_t> &r) {
        std::set<size_t> ps;
        for (size_t v : r) {
            ps.insert(parent_of[v]);
        }
        return std::vector<size_t>(ps.begin(), ps.end());
    };
    auto remaining_children = [&](size_t p) {
        size_t k = 0;
        for (size_t v : children[p]) {
            k += !touched[v];
        }
        return k;
    };
    auto first_unmeasured_child = [&](size_t p) {
        for (size_t v : children[p]) {
            if (!touched[v]) {
                return v;
            }
        }
        throw std::logic_error("parent without unmeasured children");
    };
    // Most children first, so the parent left without a row is the one with the fewest (lowest index on ties).
    auto join_children = [&](std::vector<size_t> ps) {
        std::sort(ps.begin(), ps.end(), [&](size_t a, size_t b) {
            return std::pair(remaining_children(a), a) > std::pair(remaining_children(b), b);
        });
        std::vector<size_t> joined;
        for (size_t p : ps) {
            size_t child = first_unmeasured_child(p);
            if (is_safe(PauliString::from_sparse(n, {p, child}, "ZZ"))) {
                measure({p, child}, "ZZ");
                joined.push_back(p);
            }
        }
        std::sort(joined.begin(), joined.end());
        return joined;
    };
    // An XX onto a neighbour already fixed in X would only measure X_p and drop the parity. Instead the
    // fixed nodes on the way to the nearest unfixed one are reset to Z and relay, like internal nodes.
    auto fixed_in_x = [&](size_t i) {
        return guard.fixed_in_x(i);
    };
    std::set<std::pair<size_t, size_t>> done;
    auto join = [&](size_t p, size_t i) {
        if (done.count({std::min(p, i), std::max(p, i)})) {
            return;
        }
        PauliString xx = PauliString::from_sparse(n, {std::min(p, i), std::max(p, i)}, "XX");
        if (is_safe(xx)) {
            done.insert({std::min(p, i), std::max(p, i)});
            measure({std::min(p, i), std::max(p, i)}, "XX");
            return;
        }
        if (!fixed_in_x(i)) {
            return;
        }
        // Shortest tree path from i through fixed nodes to one that is not fixed.
        std::vector<size_t> came_from(n, SIZE_MAX);
        std::vector<size_t> queue{i};
        came_from[i] = p;
        size_t end = SIZE_MAX;
        for (size_t k = 0; k < queue.size() && end == SIZE_MAX; k++) {
            for (size_t j : aux_neighbors[queue[k]]) {
                if (came_from[j] != SIZE_MAX || j == p) {
                    continue;
                }
                came_from[j] = queue[k];
                if (!fixed_in_x(j)) {
                    end = j;
                    break;
                }
                queue.push_back(j);
            }
        }
        if (end == SIZE_MAX) {
            return;
        }
        std::vector<size_t> path{end};
        while (path.back() != p) {
            path.push_back(came_from[path.back()]);
        }
        for (size_t k = 1; k + 1 < path.size(); k++) {
            measure({path[k]}, "Z");
        }
        for (size_t k = path.size() - 1; k > 0; k--) {
            size_t u = std::min(path[k], path[k - 1]), v = std::max(path[k], path[k - 1]);
            done.insert({u, v});
            measure({u, v}, "XX");
        }
    };
    auto join_neighbors = [&](const std::vector<size_t> &ps) {
        done.clear();
        for (size_t p : ps) {
            for (size_t i : aux_neighbors[p]) {
                join(p, i);
            }
        }
    };

    // Every remaining leaf has its own parent, and their ZZs can all be taken in turn.
    auto can_finish = [&](const std::vector<size_t> &r) {
        if (parents_of(r).size() != r.size()) {
            return false;
        }
        Guard trial = guard;
        for (size_t leaf : r) {
            if (!trial.apply(PauliString::from_sparse(n, {parent_of[leaf], leaf}, "ZZ"))) {
                return false;
            }
        }
        return true;
    };

    // Internal nodes start in Z, parents in X; internal neighbours are then joined by XX.
    for (size_t i : layout.internal) {
        measure({i}, "Z");
    }
    for (size_t p : layout.parents) {
        measure({p}, "X");
    }
    out.next_block();
    for (size_t i : layout.internal) {
        for (size_t j : aux_neighbors[i]) {
            if (i < j && std::binary_search(layout.internal.begin(), layout.internal.end(), j)) {
                measure({i, j}, "XX");
            }
        }
    }

    std::vector<size_t> current = layout.parents;
    std::vector<size_t> r;
    while (true) {
        size_t before = unmeasured_leaves().size();
        out.next_block();
        join_children(current);
        out.next_block();
        join_neighbors(current);
        r = unmeasured_leaves();
        if (can_finish(r)) {
            break;
        }
        out.next_block();
        std::vector<size_t> refreshed = join_children(parents_of(r));
        out.next_block();
        for (size_t p : refreshed) {
            measure({p}, "X");
        }
        after_single_x.insert(refreshed.begin(), refreshed.end());
        r = unmeasured_leaves();
        current = parents_of(r);
        if (can_finish(r)) {
            break;
        }
        if (r.size() == before) {
            throw std::logic_error("measurement round made no progress");
        }
    }

    out.next_block();
    std::vector<size_t> rejoin;
    for (size_t leaf : r) {
        size_t p = parent_of[leaf];
        if (after_single_x.count(p)) {
            rejoin.push_back(p);
        }
        measure({p, leaf}, "ZZ");
    }
    out.next_block();
    join_neighbors(rejoin);
    out.next_block();
    // Auxiliaries whose last op was a single-qubit measurement are already disentangled.
    for (size_t i : aux) {
        if (!single_last[i]) {
            measure({i}, last_letter[i] == 'X' ? "Z" : "X");
        }
    }

    c.renumber();
    c.validate();
    return c;
}

Circuit compile_constant_space(size_t w) {
    return compile_on_graph(constant_space_graph(w), w);
}

Circuit compile_depth5(size_t w) {
    return compile_on_graph(depth5_graph(w), w);
}

Circuit compile_depth6(size_t w) {
    return compile_on_graph(depth6_graph(w), w);
}

Circuit compile_interpolating(size_t w, size_t a) {
    return compile_on_graph(interpolating_graph(w, a), w);
}

OutcomeExpr predicted_sign_mask(const Circuit &c, const PauliString &target) {
    std::vector<uint8_t> is_aux(c.qubit_count, 0);
    for (size_t q : c.auxiliary) {
        is_aux[q] = 1;
    }
    OutcomeExpr result;
    for (const auto &op : c.ops()) {
        bool on_aux = false, all_z = true;
        for (size_t q : op.support) {
            if (is_aux[q]) {
                on_aux = true;
                all_z &= op.letter_on(q) == 'Z';
            }
        }
        if (on_aux && all_z) {
            result ^= OutcomeExpr::symbol(op.outcome_id);
        }
    }
    result ^= target.phase == 2;
    return result;
}

Circuit rebase(const Circuit &c, const PauliString &target_in, RebaseMode mode) {
    PauliString target = embed_target(c, target_in);
    if (!target.is_hermitian()) {
        throw std::invalid_argument("target " + target_in.str() + " is not Hermitian");
    }
    if (target.weight() != c.physical.size()) {
        throw std::invalid_argument("target weight does not match the number of physical qubits");
    }
    for (size_t q : c.physical) {
        if (target.letter(q) == 'I') {
            throw std::invalid_argument("target is the identity on physical qubit " + std::to_string(q));
        }
    }
    Circuit result = c;
    std::vector<uint8_t> is_physical(c.qubit_count, 0);
    for (size_t q : c.physical) {
        is_physical[q] = 1;
    }
    for (auto &layer : result.layers) {
        for (auto &op : layer) {
            for (size_t k = 0; k < op.support.size(); k++) {
                size_t q = op.support[k];
                if (!is_physical[q]) {
                    continue;
                }
                if (op.basis.letter(k) != 'Z') {
                    throw std::invalid_argument("physical qubit " + std::to_string(q) + " is not measured in Z");
                }
                if (mode == RebaseMode::Basis) {
                    op.basis.set_letter(k, target.letter(q));
                }
            }
        }
    }
    if (mode == RebaseMode::Rotations) {
        for (size_t q : c.physical) {
            char letter = target.letter(q);
            if (letter == 'X') {
                result.prologue.push_back({q, Rotation::H});
                result.epilogue.push_back({q, Rotation::H});
            } else if (letter == 'Y') {
                result.prologue.push_back({q, Rotation::SDG});
                result.prologue.push_back({q, Rotation::H});
                result.epilogue.push_back({q, Rotation::H});
                result.epilogue.push_back({q, Rotation::S});
            }
        }
    }
    result.validate();
    return result;
}

CxDemo cx_via_measurements() {
    CxDemo demo;
    Circuit &c = demo.circuit;
    c.qubit_count = 3;
    c.physical = {0, 1};
    c.auxiliary = {2};
    c.layers = {
        {MeasureOp::make({2}, "X")},
        {MeasureOp::make({0, 2}, "ZZ")},
        {MeasureOp::make({2, 1}, "XX")},
        {MeasureOp::make({2}, "Z")},
    };
    c.renumber();
    c.validate();
    auto p = [](const char *text) {
        return PauliString::from_text(text);
    };
    demo.expected_map = {
        {p("ZII"), {p("ZII"), OutcomeExpr()}},
        {p("XII"), {p("XXI"), OutcomeExpr::sum_of({0, 2})}},
        {p("IZI"), {p("ZZI"), OutcomeExpr::sum_of({1, 3})}},
        {p("IXI"), {p("IXI"), OutcomeExpr()}},
    };
    return demo;
}

Circuit teleportation_circuit() {
    Circuit c;
    c.qubit_count = 2;
    c.physical = {0};
    c.auxiliary = {1};
    c.layers = {
        {MeasureOp::make({1}, "X")},
        {MeasureOp::make({0, 1}, "ZZ")},
        {MeasureOp::make({0}, "X")},
    };
    c.renumber();
    c.validate();
    return c;
}

}  // namespace dwr
