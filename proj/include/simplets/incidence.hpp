#pragma once

#include "simplets/canonical.hpp"
#include "simplets/complex.hpp"

namespace simplets {

/// Node -> incident maximal-simplex ids, built once per complex. Candidate
/// simplices for a node subset are the union of its nodes' incidence lists,
/// a strict subset of M(K).
struct IncidenceIndex {
    const SimplicialComplex* complex = nullptr;
    std::vector<std::vector<int32_t>> incident;

    explicit IncidenceIndex(const SimplicialComplex& c);

    /// Maximal simplices of the subcomplex induced on `nodes` (sorted,
    /// distinct), relabeled to masks by position in `nodes`; only members
    /// with >= 2 nodes. Output sorted ascending. `id_buffer` is scratch.
    void induced_masks(const Simplex& nodes, MaskFamily& out,
                       std::vector<int32_t>& id_buffer) const;
};

/// Antichain insert: drop m if contained in a member, else add m and remove
/// the members it strictly contains.
void antichain_insert(MaskFamily& family, Mask m);

}  // namespace simplets
