#include <doctest.h>

#include "simplets/exact.hpp"
#include "testutil.hpp"

using namespace simplets;

namespace {
const SimpletCatalog& catalog3() {
    static SimpletCatalog c = build_catalog(3);
    return c;
}
const MatchTable& table3() {
    static MatchTable t = build_match_table(catalog3());
    return t;
}
}  // namespace

TEST_CASE("exact counting on known small complexes") {
    auto count = [&](const SimplicialComplex& k) {
        return count_exact(k, catalog3(), table3()).counts;
    };
    int filled = catalog3().index_of(canonicalize(3, {0b111}).code());
    int path = catalog3().index_of(canonicalize(3, {0b011, 0b110}).code());
    int hollow = catalog3().index_of(canonicalize(3, {0b011, 0b101, 0b110}).code());

    SUBCASE("single filled triangle") {
        auto c = count(SimplicialComplex(3, {{0, 1, 2}}));
        CHECK(c[filled] == 1);
        CHECK(c[path] == 0);
        CHECK(c[hollow] == 0);
    }
    SUBCASE("single hollow triangle") {
        auto c = count(SimplicialComplex(3, {{0, 1}, {1, 2}, {0, 2}}));
        CHECK(c[hollow] == 1);
        CHECK(c[filled] == 0);
    }
    SUBCASE("triangle with a pendant edge") {
        auto c = count(SimplicialComplex(4, {{0, 1, 2}, {2, 3}}));
        CHECK(c[filled] == 1);  // {0,1,2}
        CHECK(c[path] == 2);    // {0,2,3} and {1,2,3}
        CHECK(c[hollow] == 0);
    }
}

TEST_CASE("exact counting equals the all-subsets oracle") {
    SimpletCatalog c4 = build_catalog(4);
    MatchTable t4 = build_match_table(c4);
    for (uint64_t seed = 0; seed < 25; ++seed) {
        SimplicialComplex k = testutil::random_complex(seed, 14, 25, 5);
        CountReport fast = count_exact(k, c4, t4);
        std::vector<double> oracle = testutil::brute_force_counts(k, c4);
        CHECK(fast.counts == oracle);
    }
}

TEST_CASE("count total equals number of connected k-subsets") {
    SimpletCatalog c4 = build_catalog(4);
    MatchTable t4 = build_match_table(c4);
    for (uint64_t seed = 50; seed < 60; ++seed) {
        SimplicialComplex k = testutil::random_complex(seed, 15, 20, 4);
        PrimalGraph g = primal_graph(k);
        CountReport report = count_exact(k, c4, t4);
        uint64_t connected = 0;
        testutil::for_each_subset(k.num_nodes, 4, [&](const std::vector<Node>& nodes) {
            if (testutil::subset_connected_in(g, nodes)) ++connected;
        });
        CHECK(report.total() == static_cast<double>(connected));
        CHECK(connected_subset_count(g, 4) == connected);
    }
}

TEST_CASE("exact counting is invariant under node relabeling") {
    SimpletCatalog c4 = build_catalog(4);
    MatchTable t4 = build_match_table(c4);
    for (uint64_t seed = 0; seed < 10; ++seed) {
        SimplicialComplex k = testutil::random_complex(seed, 12, 18, 5);
        std::vector<Node> perm(k.num_nodes);
        std::iota(perm.begin(), perm.end(), 0);
        std::mt19937_64 rng(seed + 99);
        std::shuffle(perm.begin(), perm.end(), rng);
        SimplexFamily relabeled;
        for (const auto& s : k.maximal) {
            Simplex t;
            for (Node v : s) t.push_back(perm[v]);
            relabeled.push_back(std::move(t));
        }
        SimplicialComplex km = SimplicialComplex::from_simplices(k.num_nodes, relabeled);
        CHECK(count_exact(k, c4, t4).counts == count_exact(km, c4, t4).counts);
    }
}

TEST_CASE("exact counting is thread-count independent") {
    SimpletCatalog c4 = build_catalog(4);
    MatchTable t4 = build_match_table(c4);
    SimplicialComplex k = testutil::random_complex(3, 20, 40, 5);
    ExactOptions one;
    one.threads = 1;
    ExactOptions many;
    many.threads = 7;
    CHECK(count_exact(k, c4, t4, one).counts == count_exact(k, c4, t4, many).counts);
}

TEST_CASE("subset budget guard") {
    SimpletCatalog c4 = build_catalog(4);
    MatchTable t4 = build_match_table(c4);
    SimplicialComplex k = testutil::random_complex(11, 20, 40, 5);
    ExactOptions opt;
    opt.subset_cap = 5;
    CHECK_THROWS_AS(count_exact(k, c4, t4, opt), ComputeError);
}
