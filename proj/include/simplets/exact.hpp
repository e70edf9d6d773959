#pragma once

#include "simplets/catalog.hpp"
#include "simplets/complex.hpp"
#include "simplets/report.hpp"

namespace simplets {

struct ExactOptions {
    int threads = 0;                  // <= 0: hardware concurrency
    uint64_t subset_cap = 1000000000; // abort past this many connected k-subsets
};

/// Exact per-simplet occurrence counts: every connected k-subset of the
/// primal graph is enumerated once (ESU reverse search rooted at its minimum
/// node), its induced maximal simplices relabeled to [k] by sorted node
/// order and resolved through the match table. Deterministic for any thread
/// count. Throws ComputeError when the subset cap is exceeded.
CountReport count_exact(const SimplicialComplex& complex, const SimpletCatalog& catalog,
                        const MatchTable& table, const ExactOptions& options = {});

/// Number of connected k-node subsets of a graph, same enumeration and cap.
uint64_t connected_subset_count(const PrimalGraph& graph, int k, const ExactOptions& options = {});

}  // namespace simplets
