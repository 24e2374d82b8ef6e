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

#include "dwr/oracle.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <iomanip>
#include <random>
#include <sstream>
#include <stdexcept>
#include <type_traits>

#include "dwr/tableau.h"

namespace dwr {

namespace {

constexpr Amplitude kI{0, 1};

// Branches whose squared norm falls below this fraction of their parent's are taken to be impossible.
constexpr double kZeroBranch = 1e-18;
constexpr double kTolerance = 1e-9;
constexpr size_t kMaxReportedFailures = 64;

size_t bit_of(size_t qubit, size_t num_qubits) {
    return size_t{1} << (num_qubits - 1 - qubit);
}

// Parity of every index below 2^kDenseQubitCap.
const std::vector<uint8_t> &parity_table() {
    static const std::vector<uint8_t> table = [] {
        std::vector<uint8_t> t(size_t{1} << kDenseQubitCap, 0);
        for (size_t i = 1; i < t.size(); i++) {
            t[i] = t[i >> 1] ^ (i & 1);
        }
        return t;
    }();
    return table;
}

// P|j> = i^k · (-1)^{|j & z|} |j ^ x>.
struct PauliAction {
    size_t x = 0;
    size_t z = 0;
    Amplitude phase = 1;
    // i^k split into a real factor and whether the factor i is present.
    double factor[2] = {1, -1};
    bool imaginary = false;
    const uint8_t *parity = parity_table().data();

    explicit PauliAction(const PauliString &p) {
        size_t n = p.num_qubits();
        unsigned k = p.phase;
        for (size_t q = 0; q < n; q++) {
            if (p.xs[q]) {
                x |= bit_of(q, n);
            }
            if (p.zs[q]) {
                z |= bit_of(q, n);
            }
            if (p.xs[q] && p.zs[q]) {
                k++;
            }
        }
        static const Amplitude powers[4] = {1, kI, -1, -kI};
        phase = powers[k & 3];
        imaginary = k & 1;
        double f = (k & 2) ? -1 : 1;
        factor[0] = f;
        factor[1] = -f;
    }

    // (P·ψ)[i]. Real states are only paired with actions that have no factor i.
    template <typename T>
    T image(const std::vector<T> &state, size_t i) const {
        size_t j = i ^ x;
        double f = factor[parity[j & z]];
        if constexpr (std::is_same_v<T, double>) {
            return f * state[j];
        } else {
            const Amplitude &v = state[j];
            if (imaginary) {
                return {-f * v.imag(), f * v.real()};
            }
            return {f * v.real(), f * v.imag()};
        }
    }
};

double re(double v) {
    return v;
}
double re(const Amplitude &v) {
    return v.real();
}
double conj_of(double v) {
    return v;
}
Amplitude conj_of(const Amplitude &v) {
    return std::conj(v);
}

template <typename T>
double norm2(const std::vector<T> &state) {
    double total = 0;
    for (const auto &a : state) {
        total += std::norm(a);
    }
    return total;
}

template <typename T>
std::vector<T> random_state(size_t dim, std::mt19937_64 &rng) {
    std::normal_distribution<double> gauss;
    std::vector<T> v(dim);
    for (auto &a : v) {
        if constexpr (std::is_same_v<T, double>) {
            a = gauss(rng);
        } else {
            a = {gauss(rng), gauss(rng)};
        }
    }
    double n = std::sqrt(norm2(v));
    for (auto &a : v) {
        a /= n;
    }
    return v;
}

template <typename T>
void project(const PauliAction &action, bool outcome, std::vector<T> &state) {
    std::vector<T> out(state.size());
    for (size_t i = 0; i < state.size(); i++) {
        T image = action.image(state, i);
        out[i] = 0.5 * (outcome ? state[i] - image : state[i] + image);
    }
    state = std::move(out);
}

template <typename T>
void rotate(Rotation gate, size_t qubit, size_t num_qubits, std::vector<T> &state) {
    size_t b = bit_of(qubit, num_qubits);
    static const double r = 1 / std::sqrt(2.0);
    for (size_t i = 0; i < state.size(); i++) {
        if (i & b) {
            continue;
        }
        T &a0 = state[i];
        T &a1 = state[i | b];
        if (gate == Rotation::H) {
            T s = a0 + a1;
            T d = a0 - a1;
            a0 = r * s;
            a1 = r * d;
        } else if constexpr (std::is_same_v<T, double>) {
            throw std::logic_error("phase rotation on a real state");
        } else {
            a1 *= gate == Rotation::S ? kI : -kI;
        }
    }
}

// Index offsets inside an n-qubit register for every assignment of a list of qubits, first qubit most
// significant.
std::vector<size_t> offsets_of(const std::vector<size_t> &qubits, size_t n) {
    std::vector<size_t> result(size_t{1} << qubits.size(), 0);
    for (size_t v = 0; v < result.size(); v++) {
        for (size_t k = 0; k < qubits.size(); k++) {
            if ((v >> (qubits.size() - 1 - k)) & 1) {
                result[v] |= bit_of(qubits[k], n);
            }
        }
    }
    return result;
}

PauliString restrict_letters(const PauliString &p, const std::vector<size_t> &qubits) {
    PauliString result(qubits.size());
    for (size_t k = 0; k < qubits.size(); k++) {
        result.xs[k] = p.xs[qubits[k]];
        result.zs[k] = p.zs[qubits[k]];
    }
    return result;
}

// Solves (j ^ j0)·z = rhs over GF(2) for the collected rows; free variables are zero.
class Gf2System {
   public:
    explicit Gf2System(size_t bits) : rows_(bits, {0, false}), used_(bits, false) {
    }
    void add(size_t mask, bool rhs) {
        for (size_t p = rows_.size(); p-- > 0;) {
            if (!((mask >> p) & 1)) {
                continue;
            }
            if (!used_[p]) {
                rows_[p] = {mask, rhs};
                used_[p] = true;
                return;
            }
            mask ^= rows_[p].first;
            rhs ^= rows_[p].second;
        }
    }
    size_t solve() const {
        size_t z = 0;
        for (size_t p = 0; p < rows_.size(); p++) {
            if (!used_[p]) {
                continue;
            }
            size_t rest = rows_[p].first & ~(size_t{1} << p);
            bool bit = rows_[p].second ^ (std::popcount(rest & z) & 1);
            if (bit) {
                z |= size_t{1} << p;
            }
        }
        return z;
    }

   private:
    std::vector<std::pair<size_t, bool>> rows_;
    std::vector<bool> used_;
};

size_t count_y(const PauliString &p) {
    size_t count = 0;
    for (size_t q = 0; q < p.num_qubits(); q++) {
        count += p.xs[q] & p.zs[q];
    }
    return count;
}

bool is_real_setup(const Circuit &c, const PauliString &target) {
    if (count_y(target) != 0) {
        return false;
    }
    for (const auto *list : {&c.prologue, &c.epilogue}) {
        for (const auto &step : *list) {
            if (step.gate != Rotation::H) {
                return false;
            }
        }
    }
    for (const auto &layer : c.layers) {
        for (const auto &op : layer) {
            if (count_y(op.basis) != 0) {
                return false;
            }
        }
    }
    return true;
}

std::string bits_text(const std::vector<uint8_t> &bits) {
    std::string s;
    for (auto b : bits) {
        s.push_back(b ? '1' : '0');
    }
    return s;
}

// A branch of the outcome tree: one state per input.
template <typename T>
struct Branch {
    std::vector<std::vector<T>> states;
};

// T is double when every operator involved is real (no Y letters, no phase rotations); real inputs are as
// generic as complex ones there and halve the arithmetic.
template <typename T>
class DenseRun {
    using Vec = std::vector<T>;

   public:
    DenseRun(const Circuit &c, const PauliString &target_in, const OracleOptions &options)
        : c_(c), options_(options), rng_(options.seed) {
        n_ = c.qubit_count;
        if (n_ > kDenseQubitCap) {
            throw std::invalid_argument(
                "dense oracle is capped at " + std::to_string(kDenseQubitCap) + " qubits; circuit has " +
                std::to_string(n_));
        }
        if (options.inputs == 0) {
            throw std::invalid_argument("dense oracle needs at least one input vector");
        }
        PauliString full_target = embed_target(c, target_in);
        if (!full_target.is_hermitian()) {
            throw std::invalid_argument("target " + target_in.str() + " is not Hermitian");
        }
        for (size_t q : full_target.support()) {
            if (std::find(c.physical.begin(), c.physical.end(), q) == c.physical.end()) {
                throw std::invalid_argument("target " + target_in.str() + " acts outside the physical qubits");
            }
        }
        target_ = restrict_letters(full_target, c.physical);
        target_.phase = full_target.phase;
        w_ = c.physical.size();
        size_t dim = size_t{1} << w_;

        verifier_ = verify_dwr(c, target_in);
        ops_ = c.ops();
        bits_.assign(ops_.size(), 0);
        split_readouts();
        build_actions();

        // Inputs: random physical vectors and one shared random vector on the other qubits.
        phys_offsets_ = offsets_of(c.physical, n_);
        std::vector<size_t> others;
        for (size_t q = 0; q < n_; q++) {
            if (std::find(c.physical.begin(), c.physical.end(), q) == c.physical.end()) {
                others.push_back(q);
            }
        }
        std::vector<size_t> other_offsets = offsets_of(others, n_);
        Vec aux_in = random_state<T>(other_offsets.size(), rng_);
        Branch<T> root;
        for (size_t k = 0; k < options.inputs; k++) {
            inputs_.push_back(random_state<T>(dim, rng_));
            Vec psi(size_t{1} << n_, 0);
            for (size_t p = 0; p < dim; p++) {
                for (size_t a = 0; a < aux_in.size(); a++) {
                    psi[phys_offsets_[p] | other_offsets[a]] = inputs_.back()[p] * aux_in[a];
                }
            }
            for (const auto &step : c.prologue) {
                rotate(step.gate, step.qubit, n_, psi);
            }
            root.states.push_back(std::move(psi));
        }
        levels_.resize(prefix_len_ + 1);
        levels_[0].push_back(std::move(root));
        for (size_t d = 1; d <= prefix_len_; d++) {
            for (int m = 0; m < 2; m++) {
                Branch<T> b;
                b.states.assign(options.inputs, Vec(size_t{1} << n_, 0));
                levels_[d].push_back(std::move(b));
            }
        }

        // Physical inputs projected onto each target eigenspace, with an anchor (largest entry) and probe
        // entries: well-conditioned entries whose offsets from the anchor span all such offsets.
        target_action_ = PauliAction(target_);
        for (bool negative : {false, true}) {
            for (const auto &r : inputs_) {
                Vec v = r;
                project(target_action_, negative, v);
                projected_[negative].push_back(std::move(v));
            }
            const Vec &v0 = projected_[negative][0];
            size_t j0 = 0;
            for (size_t j = 1; j < dim; j++) {
                if (std::norm(v0[j]) > std::norm(v0[j0])) {
                    j0 = j;
                }
            }
            anchor_[negative] = j0;
            double floor = 1e-6 * std::norm(v0[j0]);
            std::vector<size_t> reduced(w_, 0);
            for (size_t j = 0; j < dim; j++) {
                if (!(std::norm(v0[j]) > floor)) {
                    continue;
                }
                size_t mask = j ^ j0;
                for (size_t b = w_; b-- > 0 && mask;) {
                    if ((mask >> b) & 1) {
                        if (!reduced[b]) {
                            reduced[b] = mask;
                            probes_[negative].push_back(j);
                            break;
                        }
                        mask ^= reduced[b];
                    }
                }
            }
        }

        size_t combos = size_t{1} << readout_qubits_.size();
        if (factored()) {
            us_.assign(combos * options.inputs, Vec(dim));
        } else {
            us_.assign(options.inputs, Vec(dim));
            scratch_.assign(options.inputs, Vec(size_t{1} << n_));
            blocks_.assign(options.inputs, Vec(rest_offsets_.size() << w_));
            aux_out_.assign(rest_offsets_.size(), 0);
        }
        for (size_t q : c.physical) {
            physical_position_.push_back(q);
        }
    }

    OracleReport run() {
        if (options_.samples == 0) {
            descend(0, levels_[0][0], nullptr);
        } else {
            for (size_t s = 0; s < options_.samples && !stop_; s++) {
                descend(0, levels_[0][0], &rng_);
            }
        }
        report_.dense_ok = dense_failures_ == 0;
        report_.ok = dense_failures_ == 0 && agreement_failures_ == 0 && verifier_.ok;
        if (report_.diagnosis.empty() && !verifier_.ok) {
            report_.diagnosis = "verifier rejected the circuit: " + verifier_.diagnosis;
        }
        return report_;
    }

   private:
    // Trailing X or Z read-outs of distinct auxiliary qubits that no rotation touches are not branched on.
    // An X read-out is turned into a Z read-out by conjugating everything before it with H on that qubit;
    // the random auxiliary input absorbs the H in front. Each read-out pattern is then a slice of the state.
    void split_readouts() {
        std::vector<uint8_t> seen(n_, 0);
        for (const auto *list : {&c_.prologue, &c_.epilogue}) {
            for (const auto &step : *list) {
                seen[step.qubit] = 1;
            }
        }
        for (size_t q : c_.physical) {
            seen[q] = 1;
        }
        prefix_len_ = ops_.size();
        while (prefix_len_ > 0) {
            const MeasureOp &op = ops_[prefix_len_ - 1];
            if (op.support.size() != 1 || seen[op.support[0]] || op.basis.letter(0) == 'Y') {
                break;
            }
            seen[op.support[0]] = 1;
            prefix_len_--;
        }
        for (size_t k = prefix_len_; k < ops_.size(); k++) {
            readout_qubits_.push_back(ops_[k].support[0]);
            if (ops_[k].basis.phase == 2) {
                readout_flip_ |= size_t{1} << (ops_.size() - 1 - k);
            }
        }
        for (size_t q = 0; q < n_; q++) {
            bool physical = std::find(c_.physical.begin(), c_.physical.end(), q) != c_.physical.end();
            bool read = std::find(readout_qubits_.begin(), readout_qubits_.end(), q) != readout_qubits_.end();
            if (!physical && !read) {
                rest_aux_.push_back(q);
            }
        }
        rest_offsets_ = offsets_of(rest_aux_, n_);
        readout_offsets_ = offsets_of(readout_qubits_, n_);
    }

    void build_actions() {
        for (size_t k = 0; k < prefix_len_; k++) {
            PauliString p = ops_[k].full_basis(n_);
            for (size_t j = prefix_len_; j < ops_.size(); j++) {
                size_t q = ops_[j].support[0];
                if (ops_[j].basis.letter(0) != 'X') {
                    continue;
                }
                // H X H = Z, H Z H = X, H Y H = -Y.
                if (p.xs[q] && p.zs[q]) {
                    p.phase = (p.phase + 2) & 3;
                }
                std::swap(p.xs[q], p.zs[q]);
            }
            actions_.emplace_back(p);
        }
    }

    bool factored() const {
        return rest_aux_.empty();
    }

    bool predicted_possible(size_t op_index, bool outcome) const {
        size_t id = ops_[op_index].outcome_id;
        if (!verifier_.ok || verifier_.random[id]) {
            return true;
        }
        return verifier_.outcomes[id].evaluate(bits_) == outcome;
    }

    void note_mismatch(size_t &counter, bool dense, const std::string &what) {
        counter++;
        if (dense) {
            dense_failures_++;
        } else {
            agreement_failures_++;
        }
        if (report_.diagnosis.empty()) {
            report_.diagnosis = what;
        }
        if (dense_failures_ + agreement_failures_ >= kMaxReportedFailures) {
            stop_ = true;
        }
    }

    std::string where() const {
        return " at outcomes " + bits_text(bits_);
    }

    void descend(size_t depth, Branch<T> &node, std::mt19937_64 *sampler) {
        if (stop_) {
            return;
        }
        if (depth == prefix_len_) {
            finish(node);
            return;
        }
        const MeasureOp &op = ops_[depth];
        const PauliAction &action = actions_[depth];
        Branch<T> *children[2] = {&levels_[depth + 1][0], &levels_[depth + 1][1]};
        double parent = 0;
        double child_norm[2] = {0, 0};
        size_t size = size_t{1} << n_;
        for (size_t k = 0; k < node.states.size(); k++) {
            const Vec &state = node.states[k];
            T *plus = children[0]->states[k].data();
            T *minus = children[1]->states[k].data();
            for (size_t i = 0; i < size; i++) {
                T a = state[i];
                T image = action.image(state, i);
                T v0 = 0.5 * (a + image);
                T v1 = 0.5 * (a - image);
                plus[i] = v0;
                minus[i] = v1;
                parent += std::norm(a);
                child_norm[0] += std::norm(v0);
                child_norm[1] += std::norm(v1);
            }
        }

        bool possible[2];
        for (int m = 0; m < 2; m++) {
            possible[m] = child_norm[m] > kZeroBranch * parent;
            if (verifier_.ok && possible[m] != predicted_possible(depth, m)) {
                bits_[op.outcome_id] = m;
                note_mismatch(
                    report_.determinism_mismatches, false,
                    "outcome " + std::to_string(m) + " of op " + std::to_string(op.outcome_id) + " is " +
                        (possible[m] ? "possible" : "impossible") + " densely but the verifier disagrees");
            }
        }
        std::vector<int> order;
        for (int m = 0; m < 2; m++) {
            if (possible[m]) {
                order.push_back(m);
            }
        }
        if (sampler != nullptr && order.size() == 2) {
            order = {static_cast<int>((*sampler)() & 1)};
        }
        for (int m : order) {
            bits_[op.outcome_id] = m;
            descend(depth + 1, *children[m], sampler);
        }
        bits_[op.outcome_id] = 0;
    }

    // Expands the trailing read-outs: rotates each read-out qubit so its measured Pauli becomes Z, then every
    // read-out pattern is a slice of the state.
    void finish(Branch<T> &node) {
        size_t r = readout_qubits_.size();
        size_t combos = size_t{1} << r;
        size_t dim = size_t{1} << w_;
        size_t inputs = node.states.size();
        double total = 0;
        std::vector<double> leaf_norm(combos, 0);

        if (factored()) {
            for (size_t k = 0; k < inputs; k++) {
                const Vec &psi = node.states[k];
                for (size_t m = 0; m < combos; m++) {
                    size_t offset = readout_offsets_[m ^ readout_flip_];
                    T *u = us_[m * inputs + k].data();
                    double weight = 0;
                    for (size_t p = 0; p < dim; p++) {
                        T v = psi[phys_offsets_[p] | offset];
                        u[p] = v;
                        weight += std::norm(v);
                    }
                    leaf_norm[m] += weight;
                }
            }
            for (size_t m = 0; m < combos; m++) {
                total += leaf_norm[m];
                for (size_t k = 0; k < inputs && !c_.epilogue.empty(); k++) {
                    for (const auto &step : c_.epilogue) {
                        rotate(step.gate, position_of(step.qubit), w_, us_[m * inputs + k]);
                    }
                }
            }
        } else {
            for (size_t k = 0; k < inputs; k++) {
                Vec &psi = scratch_[k];
                psi = node.states[k];
                for (const auto &step : c_.epilogue) {
                    rotate(step.gate, step.qubit, n_, psi);
                }
                total += norm2(psi);
            }
        }

        for (size_t m = 0; m < combos && !stop_; m++) {
            bool predicted = true;
            for (size_t k = 0; k < r; k++) {
                bool bit = (m >> (r - 1 - k)) & 1;
                bits_[ops_[prefix_len_ + k].outcome_id] = bit;
            }
            for (size_t k = 0; k < r; k++) {
                predicted = predicted && predicted_possible(prefix_len_ + k, (m >> (r - 1 - k)) & 1);
            }
            if (!factored()) {
                size_t offset = readout_offsets_[m ^ readout_flip_];
                for (size_t k = 0; k < inputs; k++) {
                    for (size_t a = 0; a < rest_offsets_.size(); a++) {
                        for (size_t p = 0; p < dim; p++) {
                            T v = scratch_[k][offset | rest_offsets_[a] | phys_offsets_[p]];
                            blocks_[k][a * dim + p] = v;
                            leaf_norm[m] += std::norm(v);
                        }
                    }
                }
            }
            bool possible = leaf_norm[m] > kZeroBranch * total;
            if (verifier_.ok && possible != predicted) {
                note_mismatch(
                    report_.determinism_mismatches, false,
                    "read-out pattern " + bits_text(bits_) + " is " + (possible ? "possible" : "impossible") +
                        " densely but the verifier disagrees");
            }
            if (!possible) {
                continue;
            }
            report_.leaves++;
            if (factored()) {
                check_physical(m * inputs, inputs);
            } else if (factor_auxiliary()) {
                check_physical(0, inputs);
            }
        }
        for (size_t k = prefix_len_; k < ops_.size(); k++) {
            bits_[ops_[k].outcome_id] = 0;
        }
    }

    size_t position_of(size_t qubit) const {
        return std::find(physical_position_.begin(), physical_position_.end(), qubit) - physical_position_.begin();
    }

    // Splits blocks_[k] (auxiliary-major) into us_[k] ⊗ aux_out_, with aux_out_ taken from input 0.
    bool factor_auxiliary() {
        size_t dim = size_t{1} << w_;
        size_t rest = rest_offsets_.size();
        size_t heaviest = 0;
        double best = -1;
        for (size_t p = 0; p < dim; p++) {
            double row = 0;
            for (size_t a = 0; a < rest; a++) {
                row += std::norm(blocks_[0][a * dim + p]);
            }
            if (row > best) {
                best = row;
                heaviest = p;
            }
        }
        double scale = 1 / std::sqrt(best);
        for (size_t a = 0; a < rest; a++) {
            aux_out_[a] = blocks_[0][a * dim + heaviest] * scale;
        }
        double residual = 0;
        double mass = 0;
        for (size_t k = 0; k < blocks_.size(); k++) {
            Vec &u = us_[k];
            std::fill(u.begin(), u.end(), T{0});
            for (size_t a = 0; a < rest; a++) {
                T b = conj_of(aux_out_[a]);
                for (size_t p = 0; p < dim; p++) {
                    u[p] += b * blocks_[k][a * dim + p];
                }
            }
            for (size_t a = 0; a < rest; a++) {
                for (size_t p = 0; p < dim; p++) {
                    T y = blocks_[k][a * dim + p];
                    residual += std::norm(y - u[p] * aux_out_[a]);
                    mass += std::norm(y);
                }
            }
        }
        double dev = std::sqrt(residual / mass);
        report_.max_deviation = std::max(report_.max_deviation, dev);
        if (!(dev < kTolerance)) {
            note_mismatch(
                report_.factor_failures, true,
                "physical and auxiliary outputs are entangled or input-dependent" + where() + " (deviation " +
                    std::to_string(dev) + ")");
            return false;
        }
        return true;
    }

    // us_[base + k] should equal c · B · (projected input k) for one Pauli B commuting with the target and
    // one c across inputs.
    void check_physical(size_t base, size_t inputs) {
        size_t dim = size_t{1} << w_;
        const Vec &u0 = us_[base];
        size_t jm = 0;
        for (size_t j = 1; j < dim; j++) {
            if (std::norm(u0[j]) > std::norm(u0[jm])) {
                jm = j;
            }
        }

        // Eigenvalue and byproduct are read off entries of input 0, then one pass over all inputs measures how
        // far each u is from c·B·v. v is an exact target eigenvector and B commutes with the target, so this
        // also bounds the distance of u from an eigenvector.
        bool negative = re(target_action_.image(u0, jm) / u0[jm]) < 0;
        const auto &vs = projected_[negative];
        const Vec &v0 = vs[0];
        size_t j0 = anchor_[negative];
        size_t x = j0 ^ jm;
        T ref = u0[jm] / v0[j0];
        Gf2System system(w_);
        for (size_t j : probes_[negative]) {
            system.add(j ^ j0, re(u0[j ^ x] / v0[j] / ref) < 0);
        }
        size_t z = system.solve();
        PauliString byproduct(w_);
        for (size_t q = 0; q < w_; q++) {
            byproduct.xs[q] = (x >> (w_ - 1 - q)) & 1;
            byproduct.zs[q] = (z >> (w_ - 1 - q)) & 1;
        }
        if (!commutes(byproduct, target_)) {
            note_mismatch(
                report_.byproduct_mismatches, true,
                "byproduct " + byproduct.str() + where() + " anticommutes with the target");
            return;
        }
        // Act as X^x Z^z, dropping the i of each Y; c absorbs the difference.
        PauliString real_form = byproduct;
        real_form.phase = static_cast<uint8_t>((4 - count_y(byproduct) % 4) % 4);
        PauliAction action(real_form);
        T scale = u0[jm] / action.image(v0, jm);

        double mass = 0;
        double residual = 0;
        for (size_t k = 0; k < inputs; k++) {
            const Vec &u = us_[base + k];
            const Vec &v = vs[k];
            for (size_t p = 0; p < dim; p++) {
                T d = u[p] - scale * action.image(v, p);
                residual += std::norm(d);
                mass += std::norm(u[p]);
            }
        }
        double dev = std::sqrt(residual / mass);
        report_.max_deviation = std::max(report_.max_deviation, dev);
        if (!(dev < kTolerance)) {
            note_mismatch(
                report_.byproduct_mismatches, true,
                "physical output is not a Pauli times the projected input" + where() + " (deviation " +
                    std::to_string(dev) + ")");
            return;
        }
        if (verifier_.ok && verifier_.sign_mask.evaluate(bits_) != negative) {
            note_mismatch(
                report_.sign_mismatches, false,
                "dense eigenvalue " + std::string(negative ? "-1" : "+1") + where() + " disagrees with sign mask " +
                    verifier_.sign_mask.str());
        }
        if (verifier_.ok) {
            PauliString claimed = restrict_letters(verifier_.byproduct(bits_), c_.physical);
            PauliString diff = claimed * byproduct;
            if (!diff.is_identity_up_to_phase() && !diff.same_letters(target_)) {
                note_mismatch(
                    report_.byproduct_mismatches, false,
                    "dense byproduct " + byproduct.str() + where() + " differs from the verifier's " + claimed.str() +
                        " beyond the target");
            }
        }
    }

    const Circuit &c_;
    OracleOptions options_;
    std::mt19937_64 rng_;
    size_t n_ = 0;
    size_t w_ = 0;
    PauliString target_;
    PauliAction target_action_{PauliString()};
    VerificationReport verifier_;
    std::vector<MeasureOp> ops_;
    std::vector<PauliAction> actions_;
    size_t prefix_len_ = 0;
    std::vector<size_t> readout_qubits_;
    std::vector<size_t> readout_offsets_;
    size_t readout_flip_ = 0;
    std::vector<size_t> rest_aux_;
    std::vector<size_t> rest_offsets_;
    std::vector<size_t> phys_offsets_;
    std::vector<size_t> physical_position_;
    std::vector<Vec> inputs_;
    std::vector<Vec> projected_[2];
    size_t anchor_[2] = {0, 0};
    std::vector<size_t> probes_[2];
    std::vector<std::vector<Branch<T>>> levels_;
    std::vector<Vec> us_;
    std::vector<Vec> scratch_;
    std::vector<Vec> blocks_;
    Vec aux_out_;
    std::vector<uint8_t> bits_;
    OracleReport report_;
    size_t dense_failures_ = 0;
    size_t agreement_failures_ = 0;
    bool stop_ = false;
};
}  // namespace

void apply_pauli(const PauliString &p, StateVector &state) {
    PauliAction action(p);
    StateVector out(state.size());
    for (size_t i = 0; i < state.size(); i++) {
        out[i] = action.image(state, i);
    }
    state = std::move(out);
}

void apply_projector(const PauliString &p, bool outcome, StateVector &state) {
    if (!p.is_hermitian()) {
        throw std::invalid_argument("projector onto non-Hermitian " + p.str());
    }
    project(PauliAction(p), outcome, state);
}

void apply_rotation(Rotation gate, size_t qubit, size_t num_qubits, StateVector &state) {
    rotate(gate, qubit, num_qubits, state);
}

double norm(const StateVector &state) {
    return std::sqrt(norm2(state));
}

DenseMatrix DenseMatrix::identity(size_t num_qubits) {
    DenseMatrix m;
    m.num_qubits = num_qubits;
    m.data.assign(m.dim() * m.dim(), 0);
    for (size_t i = 0; i < m.dim(); i++) {
        m.at(i, i) = 1;
    }
    return m;
}

DenseMatrix DenseMatrix::of_pauli(const PauliString &p) {
    DenseMatrix m;
    m.num_qubits = p.num_qubits();
    m.data.assign(m.dim() * m.dim(), 0);
    PauliAction action(p);
    for (size_t col = 0; col < m.dim(); col++) {
        Amplitude v = action.phase;
        m.at(col ^ action.x, col) = std::popcount(col & action.z) & 1 ? -v : v;
    }
    return m;
}

DenseMatrix DenseMatrix::operator*(const DenseMatrix &other) const {
    if (num_qubits != other.num_qubits) {
        throw std::invalid_argument("matrix size mismatch");
    }
    DenseMatrix m;
    m.num_qubits = num_qubits;
    m.data.assign(dim() * dim(), 0);
    for (size_t i = 0; i < dim(); i++) {
        for (size_t k = 0; k < dim(); k++) {
            Amplitude a = at(i, k);
            if (a == Amplitude{0}) {
                continue;
            }
            for (size_t j = 0; j < dim(); j++) {
                m.at(i, j) += a * other.at(k, j);
            }
        }
    }
    return m;
}

DenseMatrix DenseMatrix::adjoint() const {
    DenseMatrix m = *this;
    for (size_t i = 0; i < dim(); i++) {
        for (size_t j = 0; j < dim(); j++) {
            m.at(i, j) = std::conj(at(j, i));
        }
    }
    return m;
}

std::string DenseMatrix::str() const {
    std::ostringstream out;
    out << std::fixed << std::setprecision(3);
    for (size_t i = 0; i < dim(); i++) {
        for (size_t j = 0; j < dim(); j++) {
            Amplitude a = at(i, j);
            out << (j ? " " : "") << std::setw(6) << a.real() << (a.imag() < 0 ? "-" : "+") << std::setw(5)
                << std::abs(a.imag()) << "i";
        }
        out << "\n";
    }
    return out.str();
}

DenseMatrix sequence_operator(const Circuit &c, const std::vector<uint8_t> &outcomes) {
    if (c.qubit_count > kDenseQubitCap) {
        throw std::invalid_argument("dense operator is capped at " + std::to_string(kDenseQubitCap) + " qubits");
    }
    auto ops = c.ops();
    DenseMatrix m;
    m.num_qubits = c.qubit_count;
    m.data.assign(m.dim() * m.dim(), 0);
    for (size_t col = 0; col < m.dim(); col++) {
        StateVector psi(m.dim(), 0);
        psi[col] = 1;
        for (const auto &step : c.prologue) {
            apply_rotation(step.gate, step.qubit, c.qubit_count, psi);
        }
        for (const auto &op : ops) {
            if (op.outcome_id >= outcomes.size()) {
                throw std::invalid_argument("missing outcome for op " + std::to_string(op.outcome_id));
            }
            apply_projector(op.full_basis(c.qubit_count), outcomes[op.outcome_id], psi);
        }
        for (const auto &step : c.epilogue) {
            apply_rotation(step.gate, step.qubit, c.qubit_count, psi);
        }
        for (size_t row = 0; row < m.dim(); row++) {
            m.at(row, col) = psi[row];
        }
    }
    return m;
}

DenseMatrix restrict_to_physical(
    const DenseMatrix &k, const Circuit &c, const StateVector &aux_in, const StateVector &aux_out) {
    size_t n = k.num_qubits;
    auto phys = offsets_of(c.physical, n);
    auto aux = offsets_of(c.auxiliary, n);
    if (aux_in.size() != aux.size() || aux_out.size() != aux.size()) {
        throw std::invalid_argument("auxiliary vectors must have 2^(auxiliary count) entries");
    }
    if (c.physical.size() + c.auxiliary.size() != n) {
        throw std::invalid_argument("restriction needs every qubit to be physical or auxiliary");
    }
    DenseMatrix m;
    m.num_qubits = c.physical.size();
    m.data.assign(m.dim() * m.dim(), 0);
    for (size_t p = 0; p < m.dim(); p++) {
        for (size_t pp = 0; pp < m.dim(); pp++) {
            Amplitude total = 0;
            for (size_t a = 0; a < aux.size(); a++) {
                for (size_t aa = 0; aa < aux.size(); aa++) {
                    total += std::conj(aux_out[a]) * k.at(phys[p] | aux[a], phys[pp] | aux[aa]) * aux_in[aa];
                }
            }
            m.at(p, pp) = total;
        }
    }
    return m;
}

double proportionality_deviation(const DenseMatrix &a, const DenseMatrix &b) {
    if (a.num_qubits != b.num_qubits) {
        throw std::invalid_argument("matrix size mismatch");
    }
    Amplitude num = 0;
    double den = 0;
    double mass = 0;
    for (size_t i = 0; i < a.data.size(); i++) {
        num += std::conj(b.data[i]) * a.data[i];
        den += std::norm(b.data[i]);
        mass += std::norm(a.data[i]);
    }
    if (mass == 0) {
        return den == 0 ? 0 : INFINITY;
    }
    if (den == 0) {
        return INFINITY;
    }
    Amplitude scale = num / den;
    double diff = 0;
    for (size_t i = 0; i < a.data.size(); i++) {
        diff += std::norm(a.data[i] - scale * b.data[i]);
    }
    return std::sqrt(diff / mass);
}

std::string OracleReport::str() const {
    std::ostringstream out;
    out << (ok ? "dense: ok" : "dense: FAILED") << "\n";
    out << "leaves: " << leaves << "\n";
    out << "max deviation: " << std::scientific << std::setprecision(2) << max_deviation << "\n";
    out << "mismatches: determinism " << determinism_mismatches << ", factor " << factor_failures << ", sign "
        << sign_mismatches << ", byproduct " << byproduct_mismatches << "\n";
    if (!diagnosis.empty()) {
        out << "diagnosis: " << diagnosis << "\n";
    }
    return out.str();
}

OracleReport oracle_verify(const Circuit &c, const PauliString &target, const OracleOptions &options) {
    if (is_real_setup(c, target)) {
        return DenseRun<double>(c, target, options).run();
    }
    return DenseRun<Amplitude>(c, target, options).run();
}

}  // namespace dwr
