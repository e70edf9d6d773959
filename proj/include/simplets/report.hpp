#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "simplets/catalog.hpp"

namespace simplets {

/// Per-simplet occurrence counts, index-aligned with a SimpletCatalog.
/// Exact counts are integers stored exactly; estimates are real-valued.
struct CountReport {
    int k = 0;
    std::string method;        // "exact" or "color-coding"
    std::string dataset;       // optional provenance
    uint64_t samples = 0;      // 0 for exact counting
    uint64_t seed = 0;
    double elapsed_sec = 0.0;  // diagnostic only; never serialized
    std::vector<double> counts;
    std::vector<std::string> codes_hex;  // canonical code per index

    double total() const;
};

inline double CountReport::total() const {
    double t = 0;
    for (double c : counts) t += c;
    return t;
}

}  // namespace simplets
