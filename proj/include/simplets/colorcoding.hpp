#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "simplets/catalog.hpp"
#include "simplets/complex.hpp"
#include "simplets/report.hpp"
#include "simplets/util.hpp"

namespace simplets {

/// Rooted tree shape. Shapes of size >= 2 carry their recursive
/// decomposition: `branch` is the subtree of the last root child under the
/// canonical child ordering, `stem` is the rest of the tree, and `mult` is
/// the number of root children whose subtree is shape-isomorphic to
/// `branch`. Gluing one stem occurrence at v with one branch occurrence at a
/// neighbor counts every occurrence of the full shape exactly `mult` times,
/// which is what the DP divides out.
struct Treelet {
    int size = 1;
    std::string shape;  // nested-parentheses canonical encoding
    int stem = -1;      // global treelet id, -1 for size 1
    int branch = -1;
    int mult = 1;
};

/// Complete isomorph-free rooted tree shapes of sizes 1..k.
/// Counts per size: 1, 1, 2, 4, 9, 20.
struct TreeletSet {
    int k = 0;
    std::vector<Treelet> treelets;                  // grouped by size ascending
    std::vector<std::pair<int, int>> by_size;       // [size] -> [begin, end)

    int count(int size) const { return by_size[size].second - by_size[size].first; }
};

TreeletSet enumerate_treelets(int k);

/// Colorful-treelet DP table: C(v, T, S) = number of subtrees of the primal
/// graph rooted at v, shaped like T, whose node colors are exactly the color
/// set S. Size-k entries exist only at color-0 roots, so every unrooted
/// colorful tree occurrence is counted once (at its unique color-0 node).
/// n_ct is the total over all roots and size-k shapes.
struct TreeletTable {
    int k = 0;
    Coloring coloring;
    TreeletSet treelets;
    u128 n_ct = 0;

    std::vector<std::vector<u128>> data;                 // per (treelet, color set)
    std::vector<std::array<int16_t, 64>> slots;          // [treelet][mask] -> data index

    u128 value(Node v, int tid, Mask color_set) const {
        int16_t s = slots[tid][color_set];
        return s < 0 ? 0 : data[s][v];
    }
};

/// Colors every node uniformly at random in [k], then fills the DP
/// bottom-up by treelet size. Every division by `mult` is checked exact.
TreeletTable build_table(const PrimalGraph& graph, int k, uint64_t seed, int threads = 0);

/// Same DP under a caller-supplied coloring (fixed-coloring experiments).
TreeletTable build_table_with_coloring(const PrimalGraph& graph, const Coloring& coloring,
                                       int threads = 0);

/// Multiset of x sampled node sets, each the node set of a colorful size-k
/// tree occurrence drawn uniformly among all n_ct of them. Each sample is
/// stored sorted; duplicates across samples are expected.
struct SampleBatch {
    int k = 0;
    std::vector<Node> nodes;  // size() * k ids

    size_t size() const { return k == 0 ? 0 : nodes.size() / static_cast<size_t>(k); }
    const Node* sample(size_t i) const { return nodes.data() + i * static_cast<size_t>(k); }
};

/// Root (v, T) drawn with probability C(v,T,[k])/n_ct, then subtree splits
/// proportional to C(v,T1,S1)*C(u,T2,S2). A node set V is hit with
/// probability n_st(G[V])/n_ct; per-sample RNG streams are derived from
/// (seed, sample index), so output is identical for any thread count.
SampleBatch sample_batch(const PrimalGraph& graph, const TreeletTable& table, uint64_t x,
                         uint64_t seed, int threads = 0);

/// Induced maximal simplices per sample as masks over the sample's sorted
/// nodes (bit i = i-th smallest node); members of size >= 2 only.
std::vector<MaskFamily> scan_batch(const SampleBatch& batch, const SimplicialComplex& complex,
                                   int threads = 0);

/// Node-id view of scan_batch; equals induced_maximal_simplices restricted
/// to sets of size >= 2 for every sample.
std::vector<SimplexFamily> scan(const SampleBatch& batch, const SimplicialComplex& complex,
                                int threads = 0);

/// Estimator accumulation: every scanned family is looked up in the match
/// table and its simplet's estimate incremented by
/// n_ct / (|batch| * n_st(S)) * k^k / k!.
CountReport match_batch(const SampleBatch& batch, const std::vector<MaskFamily>& scans,
                        u128 n_ct, const MatchTable& table, const SimpletCatalog& catalog);

struct EstimateOptions {
    uint64_t samples = 0;
    uint64_t seed = 0;
    int threads = 0;
    int max_recolor = 20;  // fresh colorings to try when n_ct == 0
};

/// Full sampling estimator: build, sample, scan, match. Unbiased over the
/// joint randomness of coloring and sampling. Deterministic given the seed,
/// independent of thread count.
CountReport estimate_counts(const SimplicialComplex& complex, const SimpletCatalog& catalog,
                            const MatchTable& table, const EstimateOptions& options);

/// k^k / k!, the inverse probability that a fixed k-set is colorful.
double colorful_inverse_probability(int k);

}  // namespace simplets
