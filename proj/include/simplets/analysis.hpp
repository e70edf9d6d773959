#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "simplets/complex.hpp"
#include "simplets/report.hpp"

namespace simplets {

struct NullModelConfig {
    int64_t c_shuffle = 1000;
    uint64_t seed = 0;
};

struct NullModelResult {
    SimplicialComplex complex;
    std::vector<int32_t> sizes_before;  // simplex-size multiset after shuffling, before re-maximalization
    bool degenerate = false;            // no size class had two simplices; input returned unchanged
    int64_t removed_by_remax = 0;       // duplicates/contained simplices dropped at the end
};

/// Degree-preserving shuffle over the maximal simplices: c_shuffle * |M(K)|
/// rounds, each drawing a size t proportional to the number of size-t
/// maximal simplices, a uniform pair of distinct size-t simplices, and
/// floor(t/2) independent single-node switches between them. A switch that
/// would duplicate a node inside a simplex is resampled (10 attempts, then
/// skipped). The size multiset is preserved up to the final
/// re-maximalization.
NullModelResult null_model(const SimplicialComplex& complex, const NullModelConfig& config);

/// Unit-normalized significance vector comparing a complex against a null
/// counterpart. Zero when the two ratio vectors coincide.
struct CharacteristicProfile {
    int k = 0;
    std::vector<double> values;
    std::vector<std::string> codes_hex;
    // provenance
    std::string dataset;
    std::string method;
    uint64_t samples = 0;
    double epsilon = 1e-3;
    int64_t c_shuffle = 1000;
    int null_replicas = 1;
    uint64_t seed = 0;

    double norm() const;
};

/// mu_i = (r_i - r'_i) / (r_i + r'_i + epsilon) over the count ratios of the
/// two reports, normalized to unit length (all-zero stays all-zero).
CharacteristicProfile characteristic_profile(const CountReport& counts,
                                             const CountReport& null_counts, double epsilon);

/// L1 deviation of the estimate from the exact counts over the exact total.
double normalized_error(const CountReport& exact, const CountReport& estimate);

/// Pairwise inner products of unit profiles; rejects zero profiles.
std::vector<std::vector<double>> cosine_similarity_matrix(
    const std::vector<CharacteristicProfile>& profiles);

struct KmeansResult {
    std::vector<std::vector<int>> assignments;  // one vector per trial
    std::vector<double> objectives;             // final within-cluster sum of squares
};

/// k-means++ seeding (D^2 weighting) plus Lloyd iterations to an assignment
/// fixpoint (at most 300 rounds), Euclidean distance, one run per trial.
KmeansResult kmeans_pp(const std::vector<std::vector<double>>& vectors, int n_clusters,
                       int trials, uint64_t seed);

}  // namespace simplets
