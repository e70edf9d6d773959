#pragma once

#include <cstdint>
#include <vector>

#include "simplets/util.hpp"

namespace simplets {

using Node = int32_t;
using Simplex = std::vector<Node>;        // node ids, sorted ascending, no repeats
using SimplexFamily = std::vector<Simplex>;

/// A simplicial complex stored by its maximal simplices; the downward
/// closure is implicit. Immutable after construction.
///
/// Invariants enforced by the constructor:
///   - every node id is in [0, num_nodes)
///   - each simplex is sorted, nonempty, duplicate-free
///   - the family is an antichain (no simplex contained in another) with no
///     duplicates
struct SimplicialComplex {
    Node num_nodes = 0;
    SimplexFamily maximal;

    SimplicialComplex() = default;
    SimplicialComplex(Node num_nodes, SimplexFamily maximal_simplices);

    /// Builds a complex from an arbitrary simplex list: sorts each simplex,
    /// removes duplicates and contained simplices, keeps the antichain of
    /// maximal ones. Used by the loaders and the null model.
    static SimplicialComplex from_simplices(Node num_nodes, SimplexFamily simplices);

    size_t simplex_count() const { return maximal.size(); }
};

/// Pairwise skeleton of a complex: adjacency lists, sorted ascending.
struct PrimalGraph {
    Node num_nodes = 0;
    std::vector<std::vector<Node>> adj;
    int64_t edge_count = 0;

    bool has_edge(Node u, Node v) const;
    int degree(Node v) const { return static_cast<int>(adj[v].size()); }
};

/// Edge {u,v} present iff some maximal simplex contains both u and v.
PrimalGraph primal_graph(const SimplicialComplex& complex);

/// Maximal simplices of the subcomplex induced on `nodes`: the antichain of
/// maximal elements of { sigma & nodes : sigma in M(K) }, nonempty members
/// only. `nodes` need not be sorted; duplicate entries are rejected.
SimplexFamily induced_maximal_simplices(const SimplicialComplex& complex,
                                        const Simplex& nodes);

/// k-coloring of a node universe, values in [0, k).
struct Coloring {
    int k = 0;
    std::vector<uint8_t> colors;

    Coloring() = default;
    Coloring(int k, std::vector<uint8_t> colors);

    static Coloring random(Node num_nodes, int k, uint64_t seed);
};

namespace detail {
// Shared helper: reduce a simplex list to the antichain of maximal elements.
// Sorts members, removes exact duplicates and contained sets.
SimplexFamily maximal_antichain(SimplexFamily simplices);
}  // namespace detail

}  // namespace simplets
