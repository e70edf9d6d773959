#pragma once

// Shared test helpers: random instance generators and the independent
// oracles the library is checked against. Everything here deliberately
// avoids the library's fast paths: counting goes through all-subset
// enumeration + canonicalize, spanning trees through literal edge-subset
// enumeration, so the two routes share as little code as possible.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "simplets/canonical.hpp"
#include "simplets/catalog.hpp"
#include "simplets/colorcoding.hpp"
#include "simplets/complex.hpp"
#include "simplets/util.hpp"

namespace testutil {

using namespace simplets;

/// Seeded random complex: up to max_simplices random simplices with sizes in
/// [2, max_size] (plus a sprinkle of singletons), reduced to an antichain.
inline SimplicialComplex random_complex(uint64_t seed, int num_nodes, int max_simplices,
                                        int max_size = 5) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> size_dist(2, max_size);
    std::uniform_int_distribution<int> node_dist(0, num_nodes - 1);
    SimplexFamily family;
    for (int i = 0; i < max_simplices; ++i) {
        int size = size_dist(rng);
        std::vector<Node> s;
        while (static_cast<int>(s.size()) < size) {
            Node v = node_dist(rng);
            if (std::find(s.begin(), s.end(), v) == s.end()) s.push_back(v);
        }
        family.push_back(std::move(s));
    }
    return SimplicialComplex::from_simplices(num_nodes, std::move(family));
}

/// Random connected graph (as a pure-edge complex) on n nodes: a random
/// spanning tree plus extra random edges.
inline SimplicialComplex random_connected_graph(uint64_t seed, int n, int extra_edges) {
    std::mt19937_64 rng(seed);
    SimplexFamily edges;
    std::vector<Node> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    for (int i = 1; i < n; ++i) {
        std::uniform_int_distribution<int> prev(0, i - 1);
        edges.push_back({order[i], order[prev(rng)]});
    }
    std::uniform_int_distribution<int> node_dist(0, n - 1);
    for (int i = 0; i < extra_edges; ++i) {
        Node u = node_dist(rng), v = node_dist(rng);
        if (u != v) edges.push_back({u, v});
    }
    return SimplicialComplex::from_simplices(n, std::move(edges));
}

/// All k-subsets of [n] via revolving-door enumeration.
template <typename Fn>
void for_each_subset(int n, int k, Fn&& fn) {
    if (k > n) return;
    std::vector<Node> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    for (;;) {
        fn(idx);
        int i = k - 1;
        while (i >= 0 && idx[i] == n - k + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

inline bool subset_connected_in(const PrimalGraph& g, const std::vector<Node>& nodes) {
    size_t k = nodes.size();
    uint32_t seen = 1, frontier = 1;
    while (frontier) {
        uint32_t next = 0;
        for (size_t i = 0; i < k; ++i)
            if (frontier & (1u << i))
                for (size_t j = 0; j < k; ++j)
                    if (!(seen & (1u << j)) && g.has_edge(nodes[i], nodes[j])) next |= 1u << j;
        seen |= next;
        frontier = next;
    }
    return seen == (1u << k) - 1;
}

/// Oracle counter: all C(n,k) subsets, connectivity filter on the primal
/// graph, induced family via the core set-based oracle, classification via
/// canonicalize + index_by_code. Independent of ESU and the match table.
inline std::vector<double> brute_force_counts(const SimplicialComplex& complex,
                                              const SimpletCatalog& catalog) {
    PrimalGraph g = primal_graph(complex);
    std::vector<double> counts(catalog.size(), 0.0);
    for_each_subset(complex.num_nodes, catalog.k, [&](const std::vector<Node>& nodes) {
        if (!subset_connected_in(g, nodes)) return;
        SimplexFamily family = induced_maximal_simplices(complex, nodes);
        SimplexFamily big;
        for (auto& s : family)
            if (s.size() >= 2) big.push_back(s);
        Simplet canon = canonicalize_on(nodes, big);
        counts[catalog.index_of(canon.code())] += 1.0;
    });
    return counts;
}

/// Literal spanning-tree count: enumerate (n-1)-edge subsets and test
/// acyclicity/connectivity by union-find. Independent of the matrix-tree
/// determinant.
inline uint64_t spanning_trees_brute(int n, const std::vector<std::pair<int, int>>& edges) {
    if (n <= 1) return 1;
    size_t m = edges.size();
    if (m < static_cast<size_t>(n - 1)) return 0;
    uint64_t count = 0;
    std::vector<int> pick(n - 1);
    std::iota(pick.begin(), pick.end(), 0);
    auto test = [&](const std::vector<int>& chosen) {
        std::vector<int> parent(n);
        std::iota(parent.begin(), parent.end(), 0);
        auto find = [&](int x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        for (int e : chosen) {
            int a = find(edges[e].first), b = find(edges[e].second);
            if (a == b) return;
            parent[a] = b;
        }
        ++count;
    };
    for (;;) {
        test(pick);
        int i = n - 2;
        while (i >= 0 && pick[i] == static_cast<int>(m) - (n - 1) + i) --i;
        if (i < 0) break;
        ++pick[i];
        for (int j = i + 1; j < n - 1; ++j) pick[j] = pick[j - 1] + 1;
    }
    return count;
}

/// Colorful connected k-sets of a colored graph with their spanning-tree
/// counts (computed by the literal enumerator).
inline std::vector<std::pair<std::vector<Node>, uint64_t>> colorful_connected_sets(
    const PrimalGraph& g, const Coloring& coloring) {
    std::vector<std::pair<std::vector<Node>, uint64_t>> out;
    int k = coloring.k;
    for_each_subset(g.num_nodes, k, [&](const std::vector<Node>& nodes) {
        uint32_t colors = 0;
        for (Node v : nodes) colors |= 1u << coloring.colors[v];
        if (colors != (1u << k) - 1) return;
        if (!subset_connected_in(g, nodes)) return;
        std::vector<std::pair<int, int>> edges;
        for (int i = 0; i < k; ++i)
            for (int j = i + 1; j < k; ++j)
                if (g.has_edge(nodes[i], nodes[j])) edges.emplace_back(i, j);
        out.emplace_back(nodes, spanning_trees_brute(k, edges));
    });
    return out;
}

// --- chi-square upper tail --------------------------------------------------

inline double gamma_q(double a, double x) {
    // regularized upper incomplete gamma Q(a, x); series / continued fraction
    if (x < 0 || a <= 0) return 1.0;
    if (x == 0) return 1.0;
    double gln = std::lgamma(a);
    if (x < a + 1.0) {
        double ap = a, sum = 1.0 / a, del = sum;
        for (int i = 0; i < 500; ++i) {
            ap += 1.0;
            del *= x / ap;
            sum += del;
            if (std::fabs(del) < std::fabs(sum) * 1e-14) break;
        }
        double p = sum * std::exp(-x + a * std::log(x) - gln);
        return 1.0 - p;
    }
    double b = x + 1.0 - a, c = 1e300, d = 1.0 / b, h = d;
    for (int i = 1; i <= 500; ++i) {
        double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < 1e-300) d = 1e-300;
        c = b + an / c;
        if (std::fabs(c) < 1e-300) c = 1e-300;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-14) break;
    }
    return std::exp(-x + a * std::log(x) - gln) * h;
}

inline double chi_square_pvalue(double statistic, int dof) {
    return gamma_q(dof / 2.0, statistic / 2.0);
}

}  // namespace testutil
