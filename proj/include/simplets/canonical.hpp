#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "simplets/complex.hpp"

namespace simplets {

/// Subset of [k] as a bit mask; k <= 6 throughout the catalog code.
using Mask = uint32_t;
using MaskFamily = std::vector<Mask>;

constexpr int kMaxSimpletSize = 6;

/// All k! permutations of [k], each with a precomputed mask -> mask table.
struct PermTables {
    int k = 0;
    std::vector<std::array<int8_t, kMaxSimpletSize>> perms;
    std::vector<std::vector<Mask>> mask_map;  // [perm][mask]
};

/// Cached tables for 1 <= k <= 6.
const PermTables& perm_tables(int k);

/// Canonical representative of an isomorphism class of connected simplicial
/// complexes on [k]. `maximal` is the lexicographically minimal sorted mask
/// family over all k! relabelings.
struct Simplet {
    int k = 0;
    MaskFamily maximal;

    /// Deterministic byte string identifying the class: k followed by the
    /// canonical masks.
    std::string code() const;
    std::string code_hex() const;
};

/// True iff the masks' union covers [k] and the induced pairwise skeleton is
/// connected.
bool family_connected(int k, const MaskFamily& family);

/// True iff no mask is a subset of another (duplicates count as violations).
bool family_antichain(const MaskFamily& family);

/// Lexicographically minimal relabeling of `family` over all k! bijections.
/// Throws UsageError when the family is not an antichain or its primal graph
/// is not connected.
Simplet canonicalize(int k, MaskFamily family);

/// Relabels a node-set family onto [k] by ascending node id, then
/// canonicalizes. `nodes` must have exactly k distinct entries covering the
/// family.
Simplet canonicalize_on(const Simplex& nodes, const SimplexFamily& family);

/// Mask family of `family` relabeled onto [k] by ascending position of each
/// node in `nodes` (sorted); no canonicalization. Result sorted.
MaskFamily relabel_to_masks(const Simplex& nodes, const SimplexFamily& family);

std::string code_from_hex(const std::string& hex);
std::string hex_from_code(const std::string& code);

}  // namespace simplets
