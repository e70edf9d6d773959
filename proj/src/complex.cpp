#include "simplets/complex.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

namespace simplets {

namespace {

void normalize_simplex(Simplex& s) {
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end())
        throw UsageError("simplex contains a duplicate node id");
}

void check_range(const Simplex& s, Node num_nodes) {
    if (s.empty()) throw UsageError("empty simplex");
    if (s.front() < 0 || s.back() >= num_nodes)
        throw UsageError("node id out of range");
}

// a subset of b? both sorted
bool subset_of(const Simplex& a, const Simplex& b) {
    if (a.size() > b.size()) return false;
    size_t j = 0;
    for (Node x : a) {
        while (j < b.size() && b[j] < x) ++j;
        if (j == b.size() || b[j] != x) return false;
        ++j;
    }
    return true;
}

struct SimplexHash {
    size_t operator()(const Simplex& s) const {
        uint64_t h = 1469598103934665603ULL;
        for (Node v : s) {
            h ^= static_cast<uint64_t>(v) + 0x9e3779b9;
            h *= 1099511628211ULL;
        }
        return static_cast<size_t>(h);
    }
};

}  // namespace

namespace detail {

SimplexFamily maximal_antichain(SimplexFamily simplices) {
    for (auto& s : simplices) normalize_simplex(s);
    // exact dedup first
    std::sort(simplices.begin(), simplices.end());
    simplices.erase(std::unique(simplices.begin(), simplices.end()), simplices.end());
    // large-to-small scan with a node->kept incidence index, so each simplex
    // is checked only against kept simplices sharing its least-covered node
    std::stable_sort(simplices.begin(), simplices.end(),
                     [](const Simplex& a, const Simplex& b) { return a.size() > b.size(); });
    SimplexFamily kept;
    std::unordered_map<Node, std::vector<size_t>> incident;
    for (auto& s : simplices) {
        const std::vector<size_t>* shortest = nullptr;
        bool orphan = false;
        for (Node v : s) {
            auto it = incident.find(v);
            if (it == incident.end()) {
                orphan = true;  // no kept simplex contains v, so no superset exists
                break;
            }
            if (!shortest || it->second.size() < shortest->size()) shortest = &it->second;
        }
        bool contained = false;
        if (!orphan && shortest) {
            for (size_t idx : *shortest) {
                if (subset_of(s, kept[idx])) {
                    contained = true;
                    break;
                }
            }
        }
        if (contained) continue;
        size_t idx = kept.size();
        for (Node v : s) incident[v].push_back(idx);
        kept.push_back(std::move(s));
    }
    std::sort(kept.begin(), kept.end());
    return kept;
}

}  // namespace detail

SimplicialComplex::SimplicialComplex(Node n, SimplexFamily maximal_simplices)
    : num_nodes(n) {
    if (n < 0) throw UsageError("negative node count");
    for (auto& s : maximal_simplices) {
        normalize_simplex(s);
        check_range(s, n);
    }
    std::sort(maximal_simplices.begin(), maximal_simplices.end());
    for (size_t i = 0; i + 1 < maximal_simplices.size(); ++i)
        if (maximal_simplices[i] == maximal_simplices[i + 1])
            throw UsageError("duplicate maximal simplex");
    // antichain check; reuse the reduction and compare cardinality
    SimplexFamily reduced = detail::maximal_antichain(maximal_simplices);
    if (reduced.size() != maximal_simplices.size())
        throw UsageError("maximal simplices must form an antichain (one is contained in another)");
    maximal = std::move(maximal_simplices);
}

SimplicialComplex SimplicialComplex::from_simplices(Node n, SimplexFamily simplices) {
    if (n < 0) throw UsageError("negative node count");
    for (auto& s : simplices) {
        normalize_simplex(s);
        check_range(s, n);
    }
    SimplicialComplex out;
    out.num_nodes = n;
    out.maximal = detail::maximal_antichain(std::move(simplices));
    return out;
}

bool PrimalGraph::has_edge(Node u, Node v) const {
    const auto& nb = adj[u];
    return std::binary_search(nb.begin(), nb.end(), v);
}

PrimalGraph primal_graph(const SimplicialComplex& complex) {
    PrimalGraph g;
    g.num_nodes = complex.num_nodes;
    g.adj.assign(static_cast<size_t>(complex.num_nodes), {});
    for (const auto& s : complex.maximal) {
        for (size_t i = 0; i < s.size(); ++i)
            for (size_t j = i + 1; j < s.size(); ++j) {
                g.adj[s[i]].push_back(s[j]);
                g.adj[s[j]].push_back(s[i]);
            }
    }
    for (auto& nb : g.adj) {
        std::sort(nb.begin(), nb.end());
        nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
        g.edge_count += static_cast<int64_t>(nb.size());
    }
    g.edge_count /= 2;
    return g;
}

SimplexFamily induced_maximal_simplices(const SimplicialComplex& complex,
                                        const Simplex& nodes) {
    Simplex sel = nodes;
    normalize_simplex(sel);
    check_range(sel, complex.num_nodes);
    SimplexFamily intersections;
    for (const auto& sigma : complex.maximal) {
        Simplex cut;
        std::set_intersection(sigma.begin(), sigma.end(), sel.begin(), sel.end(),
                              std::back_inserter(cut));
        if (!cut.empty()) intersections.push_back(std::move(cut));
    }
    return detail::maximal_antichain(std::move(intersections));
}

Coloring::Coloring(int k_, std::vector<uint8_t> colors_) : k(k_), colors(std::move(colors_)) {
    if (k <= 0) throw UsageError("coloring needs k >= 1");
    for (uint8_t c : colors)
        if (c >= k) throw UsageError("color value out of range");
}

Coloring Coloring::random(Node num_nodes, int k, uint64_t seed) {
    if (k <= 0) throw UsageError("coloring needs k >= 1");
    std::mt19937_64 rng = make_rng(seed, /*stream=*/0xC01u);
    std::uniform_int_distribution<int> dist(0, k - 1);
    std::vector<uint8_t> colors(static_cast<size_t>(num_nodes));
    for (auto& c : colors) c = static_cast<uint8_t>(dist(rng));
    return Coloring(k, std::move(colors));
}

}  // namespace simplets
