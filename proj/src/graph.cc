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

#include "dwr/graph.h"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

#include "text_util.h"

namespace dwr {

namespace {

Edge normalized(size_t u, size_t v) {
    return u < v ? Edge{u, v} : Edge{v, u};
}

std::string join(const std::vector<size_t> &values) {
    std::string result;
    for (size_t k = 0; k < values.size(); k++) {
        result += (k ? " " : "") + std::to_string(values[k]);
    }
    return result;
}

struct RollbackUnionFind {
    std::vector<size_t> parent;
    std::vector<size_t> rank;
    std::vector<std::pair<size_t, bool>> history;

    explicit RollbackUnionFind(size_t n) : parent(n), rank(n, 0) {
        for (size_t k = 0; k < n; k++) {
            parent[k] = k;
        }
    }
    size_t find(size_t v) const {
        while (parent[v] != v) {
            v = parent[v];
        }
        return v;
    }
    bool unite(size_t a, size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) {
            return false;
        }
        if (rank[a] < rank[b]) {
            std::swap(a, b);
        }
        bool bumped = rank[a] == rank[b];
        parent[b] = a;
        rank[a] += bumped;
        history.push_back({b, bumped});
        return true;
    }
    void undo() {
        auto [b, bumped] = history.back();
        history.pop_back();
        size_t a = parent[b];
        parent[b] = b;
        rank[a] -= bumped;
    }
};

// Matches each slot (a non-leaf still short of degree 2) to a distinct adjacent leaf.
bool match_slots(
    const std::vector<size_t> &slots,
    const std::vector<size_t> &leaves,
    const std::vector<std::vector<size_t>> &leaf_options,
    std::vector<size_t> &slot_of_leaf) {
    const size_t none = SIZE_MAX;
    slot_of_leaf.assign(leaves.size(), none);
    for (size_t s = 0; s < slots.size(); s++) {
        std::vector<bool> seen(leaves.size(), false);
        std::function<bool(size_t)> augment = [&](size_t slot) -> bool {
            for (size_t k = 0; k < leaves.size(); k++) {
                if (seen[k]) {
                    continue;
                }
                const auto &opts = leaf_options[k];
                if (!std::binary_search(opts.begin(), opts.end(), slots[slot])) {
                    continue;
                }
                seen[k] = true;
                if (slot_of_leaf[k] == none || augment(slot_of_leaf[k])) {
                    slot_of_leaf[k] = slot;
                    return true;
                }
            }
            return false;
        };
        if (!augment(s)) {
            return false;
        }
    }
    return true;
}

}  // namespace

const char *graph_error_name(GraphError::Kind kind) {
    switch (kind) {
        case GraphError::Kind::NotConnected:
            return "NotConnected";
        case GraphError::Kind::TooFewQubits:
            return "TooFewQubits";
        case GraphError::Kind::NoValidTree:
            return "NoValidTree";
    }
    return "?";
}

ConnectivityGraph::ConnectivityGraph(size_t vertex_count, const std::vector<Edge> &edges)
    : vertex_count(vertex_count) {
    for (const auto &[u, v] : edges) {
        add_edge(u, v);
    }
}

void ConnectivityGraph::add_edge(size_t u, size_t v) {
    if (u == v) {
        throw std::invalid_argument("self-loop at vertex " + std::to_string(u));
    }
    if (u >= vertex_count || v >= vertex_count) {
        throw std::invalid_argument(
            "edge (" + std::to_string(u) + "," + std::to_string(v) + ") out of range for " +
            std::to_string(vertex_count) + " vertices");
    }
    Edge e = normalized(u, v);
    auto it = std::lower_bound(edges.begin(), edges.end(), e);
    if (it != edges.end() && *it == e) {
        throw std::invalid_argument("duplicate edge (" + std::to_string(u) + "," + std::to_string(v) + ")");
    }
    edges.insert(it, e);
}

bool ConnectivityGraph::has_edge(size_t u, size_t v) const {
    return std::binary_search(edges.begin(), edges.end(), normalized(u, v));
}

std::vector<std::vector<size_t>> ConnectivityGraph::adjacency() const {
    std::vector<std::vector<size_t>> adj(vertex_count);
    for (const auto &[u, v] : edges) {
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    for (auto &row : adj) {
        std::sort(row.begin(), row.end());
    }
    return adj;
}

size_t ConnectivityGraph::degree(size_t v) const {
    size_t d = 0;
    for (const auto &[a, b] : edges) {
        d += a == v || b == v;
    }
    return d;
}

std::vector<size_t> ConnectivityGraph::component_of(size_t v) const {
    auto adj = adjacency();
    std::vector<bool> seen(vertex_count, false);
    std::vector<size_t> stack{v};
    std::vector<size_t> result;
    seen[v] = true;
    while (!stack.empty()) {
        size_t u = stack.back();
        stack.pop_back();
        result.push_back(u);
        for (size_t x : adj[u]) {
            if (!seen[x]) {
                seen[x] = true;
                stack.push_back(x);
            }
        }
    }
    std::sort(result.begin(), result.end());
    return result;
}

std::vector<std::vector<size_t>> TreeLayout::tree_adjacency() const {
    return ConnectivityGraph(vertex_count, tree_edges).adjacency();
}

std::vector<size_t> TreeLayout::auxiliary() const {
    std::vector<size_t> result = parents;
    result.insert(result.end(), internal.begin(), internal.end());
    std::sort(result.begin(), result.end());
    return result;
}

TreeLayout find_spanning_tree_with_leaves(const ConnectivityGraph &g, const std::vector<size_t> &leaves) {
    using Kind = GraphError::Kind;
    if (leaves.empty()) {
        throw GraphError(Kind::NoValidTree, "no leaves given");
    }
    std::set<size_t> leaf_set(leaves.begin(), leaves.end());
    if (leaf_set.size() != leaves.size()) {
        throw std::invalid_argument("leaves are not distinct");
    }
    for (size_t v : leaves) {
        if (v >= g.vertex_count) {
            throw std::invalid_argument("leaf " + std::to_string(v) + " out of range");
        }
    }
    std::vector<size_t> component = g.component_of(leaves[0]);
    for (size_t v : leaves) {
        if (!std::binary_search(component.begin(), component.end(), v)) {
            throw GraphError(Kind::NotConnected, "vertex " + std::to_string(v) + " is not connected to the others");
        }
    }

    TreeLayout layout;
    layout.vertex_count = g.vertex_count;
    layout.leaves = leaves;

    std::vector<size_t> inner;
    for (size_t v : component) {
        if (!leaf_set.count(v)) {
            inner.push_back(v);
        }
    }
    if (inner.empty()) {
        if (component.size() == 2) {
            layout.tree_edges = {normalized(component[0], component[1])};
            return layout;
        }
        throw GraphError(Kind::NoValidTree, "every vertex of the component is a leaf");
    }

    auto adj = g.adjacency();
    std::vector<std::vector<size_t>> leaf_options(leaves.size());
    for (size_t k = 0; k < leaves.size(); k++) {
        for (size_t x : adj[leaves[k]]) {
            if (!leaf_set.count(x)) {
                leaf_options[k].push_back(x);
            }
        }
        if (leaf_options[k].empty()) {
            throw GraphError(
                Kind::NoValidTree, "leaf " + std::to_string(leaves[k]) + " has no non-leaf neighbor to attach to");
        }
    }

    // Spanning trees of the non-leaf subgraph, explored with edges in lexicographic order, inclusion first.
    std::vector<size_t> local(g.vertex_count, SIZE_MAX);
    for (size_t k = 0; k < inner.size(); k++) {
        local[inner[k]] = k;
    }
    std::vector<Edge> inner_edges;
    for (const auto &[u, v] : g.edges) {
        if (local[u] != SIZE_MAX && local[v] != SIZE_MAX) {
            inner_edges.push_back({u, v});
        }
    }
    size_t needed = inner.size() - 1;
    RollbackUnionFind uf(inner.size());
    std::vector<size_t> chosen;
    std::vector<size_t> degree(inner.size(), 0);
    std::vector<size_t> slot_of_leaf;
    std::vector<size_t> slots;

    auto try_attach = [&]() -> bool {
        slots.clear();
        for (size_t k = 0; k < inner.size(); k++) {
            for (size_t d = degree[k]; d < 2; d++) {
                slots.push_back(inner[k]);
            }
        }
        if (slots.size() > leaves.size()) {
            return false;
        }
        return match_slots(slots, leaves, leaf_options, slot_of_leaf);
    };

    std::function<bool(size_t)> search = [&](size_t next) -> bool {
        if (chosen.size() == needed) {
            return try_attach();
        }
        if (inner_edges.size() - next < needed - chosen.size()) {
            return false;
        }
        const auto &[u, v] = inner_edges[next];
        if (uf.unite(local[u], local[v])) {
            chosen.push_back(next);
            degree[local[u]]++;
            degree[local[v]]++;
            if (search(next + 1)) {
                return true;
            }
            degree[local[u]]--;
            degree[local[v]]--;
            chosen.pop_back();
            uf.undo();
        }
        return search(next + 1);
    };
    if (!search(0)) {
        throw GraphError(Kind::NoValidTree, "no spanning tree has exactly the vertices {" + join(leaves) + "} as leaves");
    }

    for (size_t e : chosen) {
        layout.tree_edges.push_back(inner_edges[e]);
    }
    std::set<size_t> parent_set;
    for (size_t k = 0; k < leaves.size(); k++) {
        size_t anchor = slot_of_leaf[k] != SIZE_MAX ? slots[slot_of_leaf[k]] : leaf_options[k][0];
        layout.tree_edges.push_back(normalized(leaves[k], anchor));
        parent_set.insert(anchor);
    }
    std::sort(layout.tree_edges.begin(), layout.tree_edges.end());
    layout.parents.assign(parent_set.begin(), parent_set.end());
    for (size_t v : inner) {
        if (!parent_set.count(v)) {
            layout.internal.push_back(v);
        }
    }
    return layout;
}

TreeLayout validate_for_dwr(const ConnectivityGraph &g, const std::vector<size_t> &physical) {
    using Kind = GraphError::Kind;
    if (physical.size() <= 2) {
        throw std::invalid_argument("need more than 2 physical qubits, got " + std::to_string(physical.size()));
    }
    std::set<size_t> distinct(physical.begin(), physical.end());
    if (distinct.size() != physical.size()) {
        throw std::invalid_argument("physical qubits are not distinct");
    }
    for (size_t v : physical) {
        if (v >= g.vertex_count) {
            throw std::invalid_argument("physical qubit " + std::to_string(v) + " out of range");
        }
    }
    std::vector<size_t> component = g.component_of(physical[0]);
    for (size_t v : physical) {
        if (!std::binary_search(component.begin(), component.end(), v)) {
            throw GraphError(
                Kind::NotConnected,
                "physical qubits " + std::to_string(physical[0]) + " and " + std::to_string(v) +
                    " lie in different components");
        }
    }
    size_t w = physical.size();
    if (component.size() < w + 2) {
        throw GraphError(
            Kind::TooFewQubits,
            "component has " + std::to_string(component.size()) + " qubits but at least w+2 = " + std::to_string(w + 2) +
                " are needed (two or more auxiliary qubits)");
    }
    return find_spanning_tree_with_leaves(g, physical);
}

ConnectivityGraph constant_space_graph(size_t w) {
    if (w <= 2) {
        throw std::invalid_argument("constant_space_graph needs w > 2");
    }
    size_t a = w, b = w + 1;
    ConnectivityGraph g(w + 2);
    g.add_edge(a, b);
    for (size_t i = 0; i < w; i++) {
        g.add_edge(i, (i == 1 || i == w - 1) ? b : a);
    }
    return g;
}

ConnectivityGraph depth5_graph(size_t w) {
    if (w <= 2) {
        throw std::invalid_argument("depth5_graph needs w > 2");
    }
    ConnectivityGraph g(2 * w);
    for (size_t i = 0; i < w; i++) {
        g.add_edge(i, w + i);
    }
    for (size_t i = 0; i + 1 < w; i++) {
        g.add_edge(w + i, w + i + 1);
    }
    return g;
}

ConnectivityGraph depth6_graph(size_t w) {
    if (w <= 2) {
        throw std::invalid_argument("depth6_graph needs w > 2");
    }
    size_t num_aux = (w + 1) / 2;
    ConnectivityGraph g(w + num_aux);
    for (size_t j = 0; j < num_aux; j++) {
        g.add_edge(2 * j, w + j);
        if (2 * j + 1 < w) {
            g.add_edge(2 * j + 1, w + j);
        }
    }
    for (size_t j = 0; j + 1 < num_aux; j++) {
        g.add_edge(w + j, w + j + 1);
    }
    return g;
}

ConnectivityGraph interpolating_graph(size_t w, size_t a) {
    if (w <= 2 || a < 2 || a > w) {
        throw std::invalid_argument(
            "interpolating_graph needs w > 2 and 2 <= a <= w, got w=" + std::to_string(w) + " a=" + std::to_string(a));
    }
    ConnectivityGraph g(w + a);
    for (size_t j = 0; j + 1 < a; j++) {
        g.add_edge(w + j, w + j + 1);
    }
    for (size_t i = 1; i <= w; i++) {
        g.add_edge(i - 1, w + i % a);
    }
    return g;
}

GraphFile parse_graph(std::string_view text) {
    GraphFile result;
    bool have_header = false;
    text::for_each_line(text, [&](size_t line, const std::vector<std::string> &tokens) {
        const std::string &head = tokens[0];
        if (head == "qubits") {
            if (have_header || tokens.size() != 2) {
                throw text::ParseError(line, "expected a single 'qubits N' line");
            }
            result.graph = ConnectivityGraph(text::parse_index(tokens[1], line));
            have_header = true;
            return;
        }
        if (!have_header) {
            throw text::ParseError(line, "'qubits N' must come first");
        }
        if (head == "edge") {
            if (tokens.size() != 3) {
                throw text::ParseError(line, "expected 'edge u v'");
            }
            try {
                result.graph.add_edge(text::parse_index(tokens[1], line), text::parse_index(tokens[2], line));
            } catch (const text::ParseError &) {
                throw;
            } catch (const std::invalid_argument &ex) {
                throw text::ParseError(line, ex.what());
            }
        } else if (head == "physical") {
            for (size_t k = 1; k < tokens.size(); k++) {
                size_t v = text::parse_index(tokens[k], line);
                if (v >= result.graph.vertex_count) {
                    throw text::ParseError(line, "physical qubit " + tokens[k] + " out of range");
                }
                result.physical.push_back(v);
            }
        } else {
            throw text::ParseError(line, "unknown directive '" + head + "'");
        }
    });
    if (!have_header) {
        throw text::ParseError(0, "missing 'qubits N' line");
    }
    return result;
}

std::string serialize_graph(const ConnectivityGraph &g, const std::vector<size_t> &physical) {
    std::ostringstream out;
    out << "qubits " << g.vertex_count << "\n";
    if (!physical.empty()) {
        out << "physical " << join(physical) << "\n";
    }
    for (const auto &[u, v] : g.edges) {
        out << "edge " << u << " " << v << "\n";
    }
    return out.str();
}

}  // namespace dwr
