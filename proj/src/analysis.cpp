#include "simplets/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "simplets/util.hpp"

namespace simplets {

NullModelResult null_model(const SimplicialComplex& complex, const NullModelConfig& config) {
    if (config.c_shuffle < 1) throw UsageError("c_shuffle must be >= 1");
    NullModelResult result;

    std::map<size_t, std::vector<size_t>> by_size;
    for (size_t i = 0; i < complex.maximal.size(); ++i)
        by_size[complex.maximal[i].size()].push_back(i);
    bool pair_exists = false;
    for (const auto& [size, ids] : by_size)
        if (ids.size() >= 2) pair_exists = true;
    if (!pair_exists) {
        result.complex = complex;
        result.degenerate = true;
        for (const auto& s : complex.maximal)
            result.sizes_before.push_back(static_cast<int32_t>(s.size()));
        std::sort(result.sizes_before.begin(), result.sizes_before.end());
        return result;
    }

    SimplexFamily simplices = complex.maximal;
    // size classes with a fixed deterministic order for the size draw
    std::vector<std::pair<size_t, std::vector<size_t>>> classes(by_size.begin(), by_size.end());
    std::mt19937_64 rng = make_rng(config.seed, /*stream=*/0x9011u);
    std::uniform_int_distribution<size_t> pick_simplex(0, simplices.size() - 1);

    int64_t rounds = config.c_shuffle * static_cast<int64_t>(simplices.size());
    for (int64_t round = 0; round < rounds; ++round) {
        // size t with probability (#size-t simplices) / |M(K)|
        size_t dart = pick_simplex(rng);
        size_t cls = 0;
        for (; cls < classes.size(); ++cls) {
            if (dart < classes[cls].second.size()) break;
            dart -= classes[cls].second.size();
        }
        const auto& ids = classes[cls].second;
        size_t t = classes[cls].first;
        if (ids.size() < 2) continue;  // no pair of this size; round is a no-op

        std::uniform_int_distribution<size_t> pick(0, ids.size() - 1);
        size_t a = pick(rng);
        std::uniform_int_distribution<size_t> pick_other(0, ids.size() - 2);
        size_t b = pick_other(rng);
        if (b >= a) ++b;
        Simplex& s1 = simplices[ids[a]];
        Simplex& s2 = simplices[ids[b]];

        std::uniform_int_distribution<size_t> pick_pos(0, t - 1);
        for (size_t sw = 0; sw < t / 2; ++sw) {
            for (int attempt = 0; attempt < 10; ++attempt) {
                size_t p1 = pick_pos(rng), p2 = pick_pos(rng);
                Node x = s1[p1], y = s2[p2];
                if (x == y) break;  // no-op switch, still valid
                bool dup = std::find(s1.begin(), s1.end(), y) != s1.end() ||
                           std::find(s2.begin(), s2.end(), x) != s2.end();
                if (dup) continue;  // resample the positions
                s1[p1] = y;
                s2[p2] = x;
                break;
            }
        }
        std::sort(s1.begin(), s1.end());
        std::sort(s2.begin(), s2.end());
    }

    for (const auto& s : simplices) result.sizes_before.push_back(static_cast<int32_t>(s.size()));
    std::sort(result.sizes_before.begin(), result.sizes_before.end());
    result.complex = SimplicialComplex::from_simplices(complex.num_nodes, std::move(simplices));
    result.removed_by_remax =
        static_cast<int64_t>(result.sizes_before.size()) -
        static_cast<int64_t>(result.complex.maximal.size());
    return result;
}

double CharacteristicProfile::norm() const {
    double s = 0;
    for (double v : values) s += v * v;
    return std::sqrt(s);
}

CharacteristicProfile characteristic_profile(const CountReport& counts,
                                             const CountReport& null_counts, double epsilon) {
    if (counts.k != null_counts.k || counts.counts.size() != null_counts.counts.size())
        throw UsageError("profile inputs disagree on k or catalog size");
    if (epsilon <= 0) throw UsageError("epsilon must be positive");
    double total = counts.total(), null_total = null_counts.total();
    if (total <= 0 || null_total <= 0)
        throw UsageError("profile inputs must have positive totals");

    CharacteristicProfile profile;
    profile.k = counts.k;
    profile.codes_hex = counts.codes_hex;
    profile.epsilon = epsilon;
    profile.values.resize(counts.counts.size());
    for (size_t i = 0; i < counts.counts.size(); ++i) {
        double r = counts.counts[i] / total;
        double rn = null_counts.counts[i] / null_total;
        profile.values[i] = (r - rn) / (r + rn + epsilon);
    }
    double norm = profile.norm();
    if (norm > 0)
        for (double& v : profile.values) v /= norm;
    return profile;
}

double normalized_error(const CountReport& exact, const CountReport& estimate) {
    if (exact.k != estimate.k || exact.counts.size() != estimate.counts.size())
        throw UsageError("error inputs disagree on k or catalog size");
    double total = exact.total();
    if (total <= 0) throw UsageError("exact report has zero total");
    double dev = 0;
    for (size_t i = 0; i < exact.counts.size(); ++i)
        dev += std::abs(exact.counts[i] - estimate.counts[i]);
    return dev / total;
}

std::vector<std::vector<double>> cosine_similarity_matrix(
    const std::vector<CharacteristicProfile>& profiles) {
    for (const auto& p : profiles) {
        if (p.k != profiles.front().k || p.values.size() != profiles.front().values.size())
            throw UsageError("profiles disagree on k or length");
        if (p.norm() == 0) throw UsageError("zero profile has no direction to compare");
    }
    size_t n = profiles.size();
    std::vector<std::vector<double>> m(n, std::vector<double>(n, 0.0));
    for (size_t i = 0; i < n; ++i) {
        m[i][i] = 1.0;
        for (size_t j = i + 1; j < n; ++j) {
            double dot = 0;
            for (size_t d = 0; d < profiles[i].values.size(); ++d)
                dot += profiles[i].values[d] * profiles[j].values[d];
            m[i][j] = m[j][i] = dot;
        }
    }
    return m;
}

namespace {

double sq_dist(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0;
    for (size_t i = 0; i < a.size(); ++i) {
        double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

}  // namespace

KmeansResult kmeans_pp(const std::vector<std::vector<double>>& vectors, int n_clusters,
                       int trials, uint64_t seed) {
    if (vectors.empty()) throw UsageError("no vectors to cluster");
    size_t dim = vectors.front().size();
    for (const auto& v : vectors)
        if (v.size() != dim) throw UsageError("vector dimension mismatch");
    if (n_clusters < 1 || static_cast<size_t>(n_clusters) > vectors.size())
        throw UsageError("cluster count must be in [1, #vectors]");
    if (trials < 1) throw UsageError("trials must be >= 1");

    size_t n = vectors.size();
    KmeansResult result;
    for (int trial = 0; trial < trials; ++trial) {
        std::mt19937_64 rng = make_rng(seed, /*stream=*/0x3A9Du, static_cast<uint64_t>(trial));
        // D^2-weighted seeding
        std::vector<std::vector<double>> centers;
        std::uniform_int_distribution<size_t> uniform_point(0, n - 1);
        centers.push_back(vectors[uniform_point(rng)]);
        std::vector<double> d2(n);
        while (static_cast<int>(centers.size()) < n_clusters) {
            double sum = 0;
            for (size_t i = 0; i < n; ++i) {
                double best = std::numeric_limits<double>::max();
                for (const auto& c : centers) best = std::min(best, sq_dist(vectors[i], c));
                d2[i] = best;
                sum += best;
            }
            size_t chosen;
            if (sum <= 0) {
                chosen = uniform_point(rng);  // all points coincide with centers
            } else {
                std::uniform_real_distribution<double> u(0.0, sum);
                double r = u(rng);
                chosen = n - 1;
                for (size_t i = 0; i < n; ++i) {
                    if (r < d2[i]) {
                        chosen = i;
                        break;
                    }
                    r -= d2[i];
                }
            }
            centers.push_back(vectors[chosen]);
        }

        std::vector<int> assign(n, -1);
        double prev_objective = std::numeric_limits<double>::max();
        for (int iter = 0; iter < 300; ++iter) {
            bool changed = false;
            double objective = 0;
            for (size_t i = 0; i < n; ++i) {
                int best = 0;
                double best_d = sq_dist(vectors[i], centers[0]);
                for (int c = 1; c < n_clusters; ++c) {
                    double d = sq_dist(vectors[i], centers[c]);
                    if (d < best_d) {
                        best_d = d;
                        best = c;
                    }
                }
                objective += best_d;
                if (assign[i] != best) {
                    assign[i] = best;
                    changed = true;
                }
            }
            if (objective > prev_objective * (1 + 1e-9))
                throw ComputeError("internal error: k-means objective increased");
            prev_objective = objective;
            if (!changed) break;
            // recompute centers; empty clusters re-seed at the farthest point
            std::vector<std::vector<double>> sums(n_clusters, std::vector<double>(dim, 0.0));
            std::vector<size_t> sizes(n_clusters, 0);
            for (size_t i = 0; i < n; ++i) {
                for (size_t d = 0; d < dim; ++d) sums[assign[i]][d] += vectors[i][d];
                ++sizes[assign[i]];
            }
            for (int c = 0; c < n_clusters; ++c) {
                if (sizes[c] == 0) {
                    size_t far = 0;
                    double far_d = -1;
                    for (size_t i = 0; i < n; ++i) {
                        double d = sq_dist(vectors[i], centers[assign[i]]);
                        if (d > far_d) {
                            far_d = d;
                            far = i;
                        }
                    }
                    centers[c] = vectors[far];
                    prev_objective = std::numeric_limits<double>::max();
                } else {
                    for (size_t d = 0; d < dim; ++d) centers[c][d] = sums[c][d] / sizes[c];
                }
            }
        }
        result.assignments.push_back(std::move(assign));
        result.objectives.push_back(prev_objective);
    }
    return result;
}

}  // namespace simplets
