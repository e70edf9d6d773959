#include <doctest.h>

#include <numeric>
#include <set>

#include "simplets/catalog.hpp"
#include "testutil.hpp"

using namespace simplets;

TEST_CASE("connected graph census") {
    CHECK(generate_graphlets(2).size() == 1);
    CHECK(generate_graphlets(3).size() == 2);
    CHECK(generate_graphlets(4).size() == 6);
    CHECK(generate_graphlets(5).size() == 21);
    CHECK_THROWS_AS(generate_graphlets(1), UsageError);
    CHECK_THROWS_AS(generate_graphlets(7), UsageError);
}

TEST_CASE("simplet expansion census and maximal-simplex totals") {
    SimpletCatalog c3 = build_catalog(3);
    CHECK(c3.size() == 3);
    SimpletCatalog c4 = build_catalog(4);
    CHECK(c4.size() == 14);
    SimpletCatalog c5 = build_catalog(5);
    CHECK(c5.size() == 157);

    auto family_total = [](const SimpletCatalog& c) {
        size_t total = 0;
        for (const auto& s : c.simplets) total += s.maximal.size();
        return total;
    };
    CHECK(family_total(c4) == 47);
    CHECK(family_total(c5) == 807);

    SUBCASE("every graphlet appears as the all-open simplet") {
        for (const auto& g : generate_graphlets(4)) {
            Simplet as_simplet = canonicalize(4, g.edges);
            CHECK(c4.index_by_code.count(as_simplet.code()) == 1);
        }
    }

    SUBCASE("spanning tree counts within Cayley bound") {
        for (size_t i = 0; i < c5.size(); ++i) {
            CHECK(c5.spanning_tree_counts[i] >= 1);
            CHECK(c5.spanning_tree_counts[i] <= 125);  // 5^(5-2)
        }
    }

    SUBCASE("incomplete graphlet input rejected") {
        auto graphlets = generate_graphlets(4);
        graphlets.pop_back();
        CHECK_THROWS_AS(expand_simplets(4, graphlets), UsageError);
    }
}

// Exhaustive cross-check: every antichain of >=2-masks over [k] with a
// connected primal graph, deduplicated by canonical code, must reproduce the
// catalog exactly.
static std::set<std::string> all_connected_antichain_codes(int k) {
    Mask full = (Mask(1) << k) - 1;
    std::vector<Mask> members;
    for (Mask m = 0; m <= full; ++m)
        if (__builtin_popcount(m) >= 2) members.push_back(m);
    std::set<std::string> codes;
    for (uint64_t chosen = 1; chosen < (uint64_t(1) << members.size()); ++chosen) {
        MaskFamily family;
        for (size_t i = 0; i < members.size(); ++i)
            if (chosen & (uint64_t(1) << i)) family.push_back(members[i]);
        if (!family_antichain(family)) continue;
        if (!family_connected(k, family)) continue;
        codes.insert(canonicalize(k, family).code());
    }
    return codes;
}

TEST_CASE("expansion is exhaustive for k <= 4") {
    for (int k : {2, 3, 4}) {
        SimpletCatalog catalog = build_catalog(k);
        std::set<std::string> brute = all_connected_antichain_codes(k);
        CHECK(brute.size() == catalog.size());
        for (const auto& s : catalog.simplets) CHECK(brute.count(s.code()) == 1);
    }
}

TEST_CASE("spanning tree counts") {
    SimplicialComplex triangle(3, {{0, 1}, {0, 2}, {1, 2}});
    CHECK(spanning_tree_count(primal_graph(triangle)) == 3);

    SimplicialComplex k4(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
    CHECK(spanning_tree_count(primal_graph(k4)) == 16);

    SimplicialComplex path(4, {{0, 1}, {1, 2}, {2, 3}});
    CHECK(spanning_tree_count(primal_graph(path)) == 1);

    SimplicialComplex split(4, {{0, 1}, {2, 3}});
    CHECK(spanning_tree_count(primal_graph(split)) == 0);

    SUBCASE("agrees with literal enumeration on random graphs") {
        for (uint64_t seed = 0; seed < 30; ++seed) {
            SimplicialComplex g = testutil::random_connected_graph(seed, 7, 6);
            PrimalGraph pg = primal_graph(g);
            std::vector<std::pair<int, int>> edges;
            for (Node v = 0; v < pg.num_nodes; ++v)
                for (Node u : pg.adj[v])
                    if (u > v) edges.emplace_back(v, u);
            CHECK(spanning_tree_count(pg) == testutil::spanning_trees_brute(pg.num_nodes, edges));
        }
    }
}

TEST_CASE("match table") {
    SimpletCatalog c3 = build_catalog(3);
    MatchTable t3 = build_match_table(c3);
    int32_t path_idx = c3.index_of(canonicalize(3, {0b011, 0b110}).code());
    CHECK(t3.lookup({0b011, 0b110}) == path_idx);
    CHECK(t3.lookup({0b101, 0b110}) == path_idx);  // permuted family, same simplet

    SimpletCatalog c4 = build_catalog(4);
    MatchTable t4 = build_match_table(c4);
    CHECK(t4.entries.size() <= 14 * 24);

    SUBCASE("exhaustive permutation coverage for k <= 5") {
        for (int k : {3, 4, 5}) {
            SimpletCatalog catalog = build_catalog(k);
            MatchTable table = build_match_table(catalog);
            const PermTables& tables = perm_tables(k);
            for (size_t i = 0; i < catalog.size(); ++i) {
                for (const auto& map : tables.mask_map) {
                    MaskFamily mapped;
                    for (Mask m : catalog.simplets[i].maximal) mapped.push_back(map[m]);
                    std::sort(mapped.begin(), mapped.end());
                    CHECK(table.lookup(mapped) == static_cast<int32_t>(i));
                }
            }
        }
    }

    SUBCASE("lookup agrees with canonicalize on random families") {
        SimpletCatalog c5 = build_catalog(5);
        MatchTable t5 = build_match_table(c5);
        std::mt19937_64 rng(777);
        int done = 0;
        while (done < 10000) {
            std::uniform_int_distribution<int> k_dist(3, 5);
            int k = k_dist(rng);
            const SimpletCatalog& catalog = k == 3 ? c3 : (k == 4 ? c4 : c5);
            const MatchTable& table = k == 3 ? t3 : (k == 4 ? t4 : t5);
            Mask full = (Mask(1) << k) - 1;
            std::uniform_int_distribution<Mask> mask_dist(0, full);
            MaskFamily family;
            for (int t = 0; t < 4; ++t) {
                Mask m = mask_dist(rng);
                if (__builtin_popcount(m) >= 2) antichain_insert(family, m);
            }
            if (!family_connected(k, family)) continue;
            std::sort(family.begin(), family.end());
            CHECK(table.lookup(family) == catalog.index_of(canonicalize(k, family).code()));
            ++done;
        }
    }
}
