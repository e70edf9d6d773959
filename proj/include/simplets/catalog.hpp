#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "simplets/canonical.hpp"
#include "simplets/complex.hpp"

namespace simplets {

/// Connected simple graph on [k] up to isomorphism; edges as 2-bit masks in
/// canonical (lexicographically minimal) form.
struct Graphlet {
    int k = 0;
    MaskFamily edges;
    std::string code;
};

/// One representative per isomorphism class of connected simple graphs on k
/// nodes. Counts for k = 2..6: 1, 2, 6, 21, 112.
std::vector<Graphlet> generate_graphlets(int k);

/// Complete ordered set of size-k simplets with per-simplet spanning-tree
/// counts of their primal graphs. Order: (number of maximal simplices,
/// canonical code) ascending; the code is reported next to every index so
/// counts stay comparable across tools with a different pictorial order.
struct SimpletCatalog {
    int k = 0;
    std::vector<Simplet> simplets;
    std::vector<uint64_t> spanning_tree_counts;
    std::unordered_map<std::string, int32_t> index_by_code;

    size_t size() const { return simplets.size(); }
    int32_t index_of(const std::string& code) const;
    std::vector<std::string> codes_hex() const;
};

/// Expands every graphlet of size k into the simplets sharing its primal
/// graph by deciding each clique (size k down to 3) open or closed, with
/// isomorphism dedup among sibling choices. The union over graphlets is the
/// complete simplet set: s_k = 1, 3, 14, 157, 15942 for k = 2..6.
SimpletCatalog expand_simplets(int k, const std::vector<Graphlet>& graphlets, int threads = 0);

/// generate_graphlets + expand_simplets.
SimpletCatalog build_catalog(int k, int threads = 0);

/// Number of spanning trees via the matrix-tree theorem: integer determinant
/// of a principal minor of the Laplacian (Bareiss elimination, exact).
/// Returns 0 for a disconnected graph. Intended for small graphs (n <= ~12).
uint64_t spanning_tree_count(const PrimalGraph& graph);

/// Permutation-closed lookup table: every relabeling of every simplet's
/// maximal-simplex family maps to the simplet's catalog index.
struct MatchTable {
    int k = 0;
    std::unordered_map<std::string, int32_t> entries;

    static std::string key(const MaskFamily& sorted_masks);
    /// Index for a sorted mask family; throws ComputeError on a miss (cannot
    /// happen for families produced from a valid complex and full catalog).
    int32_t lookup(const MaskFamily& sorted_masks) const;
};

MatchTable build_match_table(const SimpletCatalog& catalog);

}  // namespace simplets
