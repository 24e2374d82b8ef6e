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
#include <numeric>
#include <random>
#include <set>

#include "gtest/gtest.h"

using namespace dwr;

namespace {

ConnectivityGraph make_graph(size_t n, const std::vector<Edge> &edges) {
    return ConnectivityGraph(n, edges);
}

ConnectivityGraph cycle(size_t n) {
    ConnectivityGraph g(n);
    for (size_t k = 0; k < n; k++) {
        g.add_edge(k, (k + 1) % n);
    }
    return g;
}

ConnectivityGraph path(size_t n) {
    ConnectivityGraph g(n);
    for (size_t k = 0; k + 1 < n; k++) {
        g.add_edge(k, k + 1);
    }
    return g;
}

ConnectivityGraph complete(size_t n) {
    ConnectivityGraph g(n);
    for (size_t u = 0; u < n; u++) {
        for (size_t v = u + 1; v < n; v++) {
            g.add_edge(u, v);
        }
    }
    return g;
}

size_t find_root(std::vector<size_t> &up, size_t v) {
    while (up[v] != v) {
        v = up[v] = up[up[v]];
    }
    return v;
}

// Brute force: does some spanning tree of the component of leaves[0] have exactly `leaves` as its
// degree-1 vertices? Tries every (|C|-1)-subset of the component's edges.
bool enumerated_tree_exists(const ConnectivityGraph &g, const std::vector<size_t> &leaves) {
    std::vector<size_t> comp = g.component_of(leaves[0]);
    std::set<size_t> in_comp(comp.begin(), comp.end());
    std::set<size_t> want(leaves.begin(), leaves.end());
    std::vector<Edge> edges;
    for (auto e : g.edges) {
        if (in_comp.count(e.first)) {
            edges.push_back(e);
        }
    }
    size_t k = comp.size() - 1;
    if (k == 0) {
        return false;
    }
    std::vector<uint8_t> pick(edges.size(), 0);
    std::fill(pick.end() - k, pick.end(), 1);
    do {
        std::vector<size_t> up(g.vertex_count);
        std::iota(up.begin(), up.end(), 0);
        std::vector<size_t> deg(g.vertex_count, 0);
        bool acyclic = true;
        for (size_t j = 0; j < edges.size() && acyclic; j++) {
            if (!pick[j]) {
                continue;
            }
            size_t a = find_root(up, edges[j].first), b = find_root(up, edges[j].second);
            if (a == b) {
                acyclic = false;
            }
            up[a] = b;
            deg[edges[j].first]++;
            deg[edges[j].second]++;
        }
        if (!acyclic) {
            continue;
        }
        std::set<size_t> ones;
        for (size_t v : comp) {
            if (deg[v] == 1) {
                ones.insert(v);
            }
        }
        if (ones == want) {
            return true;
        }
    } while (std::next_permutation(pick.begin(), pick.end()));
    return false;
}

void expect_valid_layout(const ConnectivityGraph &g, const std::vector<size_t> &leaves, const TreeLayout &t) {
    std::vector<size_t> comp = g.component_of(leaves[0]);
    ASSERT_EQ(t.tree_edges.size(), comp.size() - 1);
    std::vector<size_t> up(g.vertex_count);
    std::iota(up.begin(), up.end(), 0);
    for (auto [u, v] : t.tree_edges) {
        EXPECT_TRUE(g.has_edge(u, v));
        size_t a = find_root(up, u), b = find_root(up, v);
        EXPECT_NE(a, b) << "cycle";
        up[a] = b;
    }
    auto adj = t.tree_adjacency();
    std::set<size_t> leaf_set(leaves.begin(), leaves.end());
    std::set<size_t> parents;
    for (size_t v : comp) {
        EXPECT_EQ(adj[v].size() == 1, leaf_set.count(v) == 1) << "vertex " << v;
    }
    for (size_t v : leaves) {
        parents.insert(adj[v][0]);
    }
    EXPECT_EQ(std::vector<size_t>(parents.begin(), parents.end()), t.parents);
    std::vector<size_t> all = t.leaves;
    all.insert(all.end(), t.parents.begin(), t.parents.end());
    all.insert(all.end(), t.internal.begin(), t.internal.end());
    std::sort(all.begin(), all.end());
    EXPECT_EQ(all, comp);
}

bool isomorphic(const ConnectivityGraph &a, const ConnectivityGraph &b) {
    if (a.vertex_count != b.vertex_count || a.edges.size() != b.edges.size()) {
        return false;
    }
    std::vector<size_t> perm(a.vertex_count);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        bool ok = true;
        for (auto [u, v] : a.edges) {
            if (!b.has_edge(perm[u], perm[v])) {
                ok = false;
                break;
            }
        }
        if (ok) {
            return true;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

std::vector<size_t> range(size_t n) {
    std::vector<size_t> r(n);
    std::iota(r.begin(), r.end(), 0);
    return r;
}

GraphError::Kind error_kind(const ConnectivityGraph &g, const std::vector<size_t> &physical) {
    try {
        validate_for_dwr(g, physical);
    } catch (const GraphError &e) {
        return e.kind;
    }
    ADD_FAILURE() << "expected a GraphError";
    return GraphError::Kind::NotConnected;
}

}  // namespace

TEST(connectivity_graph, rejects_bad_edges) {
    ConnectivityGraph g(3);
    EXPECT_THROW(g.add_edge(1, 1), std::invalid_argument);
    EXPECT_THROW(g.add_edge(0, 3), std::invalid_argument);
    g.add_edge(2, 0);
    EXPECT_THROW(g.add_edge(0, 2), std::invalid_argument);
    EXPECT_EQ(g.edges, (std::vector<Edge>{{0, 2}}));
    EXPECT_EQ(g.degree(0), 1u);
    EXPECT_EQ(g.component_of(1), (std::vector<size_t>{1}));
}

TEST(validate_for_dwr, star_has_too_few_qubits) {
    ConnectivityGraph star = make_graph(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
    EXPECT_EQ(error_kind(star, {1, 2, 3, 4}), GraphError::Kind::TooFewQubits);
}

TEST(validate_for_dwr, path_has_no_tree) {
    EXPECT_EQ(error_kind(path(5), {0, 1, 2}), GraphError::Kind::NoValidTree);
}

TEST(validate_for_dwr, split_components) {
    ConnectivityGraph g = make_graph(8, {{0, 3}, {1, 3}, {3, 4}, {2, 5}, {5, 6}, {6, 7}});
    EXPECT_EQ(error_kind(g, {0, 1, 2}), GraphError::Kind::NotConnected);
}

TEST(validate_for_dwr, argument_checks) {
    EXPECT_THROW(validate_for_dwr(complete(5), {0, 1}), std::invalid_argument);
    EXPECT_THROW(validate_for_dwr(complete(5), {0, 1, 1}), std::invalid_argument);
    EXPECT_THROW(validate_for_dwr(complete(5), {0, 1, 7}), std::invalid_argument);
}

TEST(validate_for_dwr, constant_space_six) {
    TreeLayout t = validate_for_dwr(constant_space_graph(6), range(6));
    EXPECT_EQ(t.auxiliary(), (std::vector<size_t>{6, 7}));
    EXPECT_EQ(t.parents, (std::vector<size_t>{6, 7}));
    EXPECT_TRUE(t.internal.empty());
}

TEST(validate_for_dwr, canonical_graphs_are_valid) {
    for (size_t w = 3; w <= 12; w++) {
        std::vector<ConnectivityGraph> graphs = {constant_space_graph(w), depth5_graph(w), depth6_graph(w)};
        for (size_t a = 2; a <= w; a++) {
            graphs.push_back(interpolating_graph(w, a));
        }
        for (const auto &g : graphs) {
            TreeLayout t = validate_for_dwr(g, range(w));
            expect_valid_layout(g, range(w), t);
            // Every canonical graph is already a tree.
            EXPECT_EQ(t.tree_edges, g.edges);
        }
    }
}

TEST(find_spanning_tree_with_leaves, examples) {
    ConnectivityGraph g = interpolating_graph(6, 3);
    EXPECT_EQ(find_spanning_tree_with_leaves(g, range(6)).tree_edges, g.edges);

    TreeLayout k5 = find_spanning_tree_with_leaves(complete(5), {0, 1, 2});
    expect_valid_layout(complete(5), {0, 1, 2}, k5);
    EXPECT_TRUE(enumerated_tree_exists(complete(5), {0, 1, 2}));

    EXPECT_FALSE(enumerated_tree_exists(cycle(4), {0, 1, 2}));
    try {
        find_spanning_tree_with_leaves(cycle(4), {0, 1, 2});
        FAIL();
    } catch (const GraphError &e) {
        EXPECT_EQ(e.kind, GraphError::Kind::NoValidTree);
    }
    EXPECT_FALSE(enumerated_tree_exists(path(5), {0, 1, 2}));
}

TEST(find_spanning_tree_with_leaves, matches_enumeration) {
    std::mt19937_64 rng(2026);
    size_t checked = 0, found = 0;
    while (checked < 400) {
        size_t n = 3 + rng() % 8;
        double p = 0.25 + 0.5 * (rng() % 100) / 100.0;
        ConnectivityGraph g(n);
        for (size_t u = 0; u < n; u++) {
            for (size_t v = u + 1; v < n; v++) {
                if ((rng() % 1000) < p * 1000) {
                    g.add_edge(u, v);
                }
            }
        }
        std::vector<size_t> comp = g.component_of(rng() % n);
        if (comp.size() < 3 || g.edges.size() > 18) {
            continue;
        }
        std::shuffle(comp.begin(), comp.end(), rng);
        size_t count = 1 + rng() % (comp.size() - 1);
        std::vector<size_t> leaves(comp.begin(), comp.begin() + count);
        bool expected = enumerated_tree_exists(g, leaves);
        bool got = true;
        try {
            TreeLayout t = find_spanning_tree_with_leaves(g, leaves);
            expect_valid_layout(g, leaves, t);
        } catch (const GraphError &e) {
            EXPECT_EQ(e.kind, GraphError::Kind::NoValidTree);
            got = false;
        }
        EXPECT_EQ(got, expected) << serialize_graph(g, leaves);
        found += got;
        checked++;
    }
    // Both outcomes must be exercised.
    EXPECT_GT(found, 40u);
    EXPECT_LT(found, 360u);
}

TEST(constant_space_graph, shape) {
    ConnectivityGraph g4 = constant_space_graph(4);
    EXPECT_EQ(g4.vertex_count, 6u);
    EXPECT_EQ(g4.edges.size(), 5u);
    ConnectivityGraph g6 = constant_space_graph(6);
    EXPECT_EQ(g6.degree(6), 5u);
    EXPECT_EQ(g6.degree(7), 3u);
    ConnectivityGraph g3 = constant_space_graph(3);
    EXPECT_EQ(g3.degree(3), 2u);
    EXPECT_EQ(g3.degree(4), 3u);
    EXPECT_TRUE(g3.has_edge(1, 4));
    EXPECT_TRUE(g3.has_edge(2, 4));
    EXPECT_THROW(constant_space_graph(2), std::invalid_argument);
}

TEST(depth5_graph, shape) {
    EXPECT_EQ(depth5_graph(3).vertex_count, 6u);
    EXPECT_EQ(depth5_graph(3).edges.size(), 5u);
    ConnectivityGraph g = depth5_graph(5);
    EXPECT_EQ(g.vertex_count, 10u);
    EXPECT_EQ(g.edges.size(), 9u);
    for (size_t i = 0; i < 5; i++) {
        EXPECT_EQ(g.degree(i), 1u);
    }
}

TEST(depth6_graph, shape) {
    ConnectivityGraph g4 = depth6_graph(4);
    EXPECT_EQ(g4.vertex_count, 6u);
    EXPECT_EQ(g4.degree(4), 3u);
    EXPECT_EQ(g4.degree(5), 3u);
    ConnectivityGraph g5 = depth6_graph(5);
    EXPECT_EQ(g5.vertex_count, 8u);
    EXPECT_TRUE(g5.has_edge(4, 7));
    EXPECT_EQ(g5.degree(7), 2u);
    ConnectivityGraph g6 = depth6_graph(6);
    EXPECT_EQ(g6.vertex_count, 9u);
    EXPECT_EQ(g6.edges.size(), 8u);
}

TEST(interpolating_graph, shape) {
    ConnectivityGraph g63 = interpolating_graph(6, 3);
    for (size_t aux = 6; aux < 9; aux++) {
        size_t leaf_children = 0;
        for (size_t i = 0; i < 6; i++) {
            leaf_children += g63.has_edge(i, aux);
        }
        EXPECT_EQ(leaf_children, 2u);
    }
    // 1-based leaves {2,4,6} on the first auxiliary, {1,3,5} on the second.
    ConnectivityGraph g62 = interpolating_graph(6, 2);
    for (size_t i : {1, 3, 5}) {
        EXPECT_TRUE(g62.has_edge(i, 6));
    }
    for (size_t i : {0, 2, 4}) {
        EXPECT_TRUE(g62.has_edge(i, 7));
    }
    EXPECT_TRUE(isomorphic(interpolating_graph(4, 4), depth5_graph(4)));
    EXPECT_FALSE(isomorphic(interpolating_graph(4, 3), depth5_graph(4)));
    EXPECT_THROW(interpolating_graph(4, 1), std::invalid_argument);
    EXPECT_THROW(interpolating_graph(4, 5), std::invalid_argument);
}

TEST(graph_file, round_trip) {
    ConnectivityGraph g = depth6_graph(5);
    std::string text = serialize_graph(g, {0, 1, 2, 3, 4});
    GraphFile f = parse_graph(text);
    EXPECT_EQ(f.graph.vertex_count, g.vertex_count);
    EXPECT_EQ(f.graph.edges, g.edges);
    EXPECT_EQ(f.physical, (std::vector<size_t>{0, 1, 2, 3, 4}));
    EXPECT_EQ(serialize_graph(f.graph, f.physical), text);

    GraphFile c = parse_graph("# comment\nqubits 3\nedge 0 1  # trailing\nedge 1 2\n");
    EXPECT_EQ(c.graph.edges.size(), 2u);
    EXPECT_TRUE(c.physical.empty());
    EXPECT_THROW(parse_graph("edge 0 1\n"), std::invalid_argument);
    EXPECT_THROW(parse_graph("qubits 2\nedge 0 2\n"), std::invalid_argument);
    EXPECT_THROW(parse_graph("qubits 2\nedge 0 1\nedge 1 0\n"), std::invalid_argument);
    EXPECT_THROW(parse_graph("qubits 2\nvertex 0\n"), std::invalid_argument);
}
