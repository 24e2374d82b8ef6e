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

#ifndef DWR_GRAPH_H
#define DWR_GRAPH_H

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace dwr {

using Edge = std::pair<size_t, size_t>;

/// Undirected simple graph of device qubits. Edges are stored with the smaller endpoint first, sorted.
struct ConnectivityGraph {
    size_t vertex_count = 0;
    std::vector<Edge> edges;

    ConnectivityGraph() = default;
    explicit ConnectivityGraph(size_t vertex_count) : vertex_count(vertex_count) {
    }
    ConnectivityGraph(size_t vertex_count, const std::vector<Edge> &edges);

    /// Throws std::invalid_argument for self-loops, duplicates and out-of-range endpoints.
    void add_edge(size_t u, size_t v);
    bool has_edge(size_t u, size_t v) const;
    std::vector<std::vector<size_t>> adjacency() const;
    size_t degree(size_t v) const;
    /// Vertices reachable from v, sorted.
    std::vector<size_t> component_of(size_t v) const;
};

/// A spanning tree of one component with a prescribed leaf set.
struct TreeLayout {
    size_t vertex_count = 0;
    std::vector<Edge> tree_edges;
    std::vector<size_t> leaves;
    std::vector<size_t> parents;
    std::vector<size_t> internal;

    std::vector<std::vector<size_t>> tree_adjacency() const;
    /// parents ∪ internal, sorted.
    std::vector<size_t> auxiliary() const;
};

class GraphError : public std::runtime_error {
   public:
    enum class Kind { NotConnected, TooFewQubits, NoValidTree };
    GraphError(Kind kind, const std::string &message) : std::runtime_error(message), kind(kind) {
    }
    Kind kind;
};

const char *graph_error_name(GraphError::Kind kind);

/// Deterministic backtracking search for a spanning tree of the component containing `leaves` in which
/// exactly those vertices have degree 1.
TreeLayout find_spanning_tree_with_leaves(const ConnectivityGraph &g, const std::vector<size_t> &leaves);

/// Checks the necessary conditions for a weight-2 decomposition: the physical qubits share a component,
/// that component has at least w+2 vertices, and it has a spanning tree whose leaves are the physical qubits.
TreeLayout validate_for_dwr(const ConnectivityGraph &g, const std::vector<size_t> &physical);

/// w physical vertices 0..w-1 and two auxiliaries a=w, b=w+1. b touches physical 1 and w-1, a touches the rest.
ConnectivityGraph constant_space_graph(size_t w);
/// Auxiliary w+i paired with physical i; auxiliaries joined along a line.
ConnectivityGraph depth5_graph(size_t w);
/// Auxiliary w+j touches physical 2j and 2j+1 (when present); auxiliaries joined along a line.
ConnectivityGraph depth6_graph(size_t w);
/// a auxiliaries on a line. Physical vertex i-1 (i=1..w) touches auxiliary w + (i mod a).
ConnectivityGraph interpolating_graph(size_t w, size_t a);

struct GraphFile {
    ConnectivityGraph graph;
    std::vector<size_t> physical;
};

/// Text format: `qubits N`, `edge u v`, optional `physical i j ...`; `#` starts a comment.
GraphFile parse_graph(std::string_view text);
std::string serialize_graph(const ConnectivityGraph &g, const std::vector<size_t> &physical = {});

}  // namespace dwr

#endif
