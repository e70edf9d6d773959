#include "simplets/incidence.hpp"

#include <algorithm>

namespace simplets {

IncidenceIndex::IncidenceIndex(const SimplicialComplex& c) : complex(&c) {
    incident.assign(static_cast<size_t>(c.num_nodes), {});
    for (size_t sid = 0; sid < c.maximal.size(); ++sid)
        for (Node v : c.maximal[sid]) incident[v].push_back(static_cast<int32_t>(sid));
}

void antichain_insert(MaskFamily& family, Mask m) {
    for (Mask f : family)
        if ((m & f) == m) return;
    family.erase(std::remove_if(family.begin(), family.end(),
                                [m](Mask f) { return (f & m) == f; }),
                 family.end());
    family.push_back(m);
}

void IncidenceIndex::induced_masks(const Simplex& nodes, MaskFamily& out,
                                   std::vector<int32_t>& id_buffer) const {
    out.clear();
    id_buffer.clear();
    for (Node v : nodes)
        id_buffer.insert(id_buffer.end(), incident[v].begin(), incident[v].end());
    std::sort(id_buffer.begin(), id_buffer.end());
    id_buffer.erase(std::unique(id_buffer.begin(), id_buffer.end()), id_buffer.end());
    for (int32_t sid : id_buffer) {
        const Simplex& sigma = complex->maximal[sid];
        Mask m = 0;
        size_t i = 0, j = 0;
        while (i < sigma.size() && j < nodes.size()) {
            if (sigma[i] < nodes[j]) {
                ++i;
            } else if (sigma[i] > nodes[j]) {
                ++j;
            } else {
                m |= Mask(1) << j;
                ++i;
                ++j;
            }
        }
        if (__builtin_popcount(m) >= 2) antichain_insert(out, m);
    }
    std::sort(out.begin(), out.end());
}

}  // namespace simplets
