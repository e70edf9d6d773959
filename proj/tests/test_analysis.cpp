#include <doctest.h>

#include <map>
#include <set>

#include "simplets/analysis.hpp"
#include "testutil.hpp"

using namespace simplets;

namespace {

CountReport fake_report(int k, std::vector<double> counts) {
    CountReport r;
    r.k = k;
    r.method = "exact";
    r.counts = std::move(counts);
    r.codes_hex.assign(r.counts.size(), "00");
    return r;
}

}  // namespace

TEST_CASE("null model preserves the simplex-size multiset before remax") {
    for (uint64_t seed = 0; seed < 40; ++seed) {
        SimplicialComplex k = testutil::random_complex(seed, 15, 25, 5);
        std::vector<int32_t> want;
        for (const auto& s : k.maximal) want.push_back(static_cast<int32_t>(s.size()));
        std::sort(want.begin(), want.end());

        NullModelConfig config{20, seed};
        NullModelResult result = null_model(k, config);
        CHECK_FALSE(result.degenerate);
        CHECK(result.sizes_before == want);
        CHECK(result.removed_by_remax ==
              static_cast<int64_t>(want.size() - result.complex.maximal.size()));
        // output is a valid complex over the same universe
        CHECK(result.complex.num_nodes == k.num_nodes);
    }
}

TEST_CASE("null model degenerate input returns unchanged") {
    SimplicialComplex single(3, {{0, 1, 2}});
    NullModelResult result = null_model(single, {1000, 5});
    CHECK(result.degenerate);
    CHECK(result.complex.maximal == single.maximal);

    // sizes all distinct: no pair of equal size exists either
    SimplicialComplex mixed(6, {{0, 1}, {0, 1, 2}, {0, 1, 2, 3, 4}});
    CHECK(null_model(mixed, {1000, 5}).degenerate);
}

TEST_CASE("null model shuffles edges of equal size") {
    // all simplices size 2: every round performs exactly one switch
    SimplicialComplex k(6, {{0, 1}, {2, 3}, {4, 5}});
    NullModelResult result = null_model(k, {50, 3});
    CHECK_FALSE(result.degenerate);
    for (int32_t s : result.sizes_before) CHECK(s == 2);
    // degree sequence of node participation is preserved by switches
    std::map<Node, int> degree;
    for (const auto& s : result.complex.maximal)
        for (Node v : s) degree[v] += 1;
    int total = 0;
    for (auto& [v, d] : degree) total += d;
    CHECK(total == 6);
}

TEST_CASE("characteristic profile formula") {
    SUBCASE("identical ratios give the zero profile") {
        CharacteristicProfile p =
            characteristic_profile(fake_report(3, {3, 1, 0}), fake_report(3, {6, 2, 0}), 1e-3);
        for (double v : p.values) CHECK(v == 0.0);
        CHECK(p.norm() == 0.0);
    }
    SUBCASE("orthogonal supports give the antisymmetric profile") {
        CharacteristicProfile p =
            characteristic_profile(fake_report(2, {1, 0}), fake_report(2, {0, 1}), 1e-3);
        CHECK(p.values[0] == doctest::Approx(0.7071).epsilon(1e-3));
        CHECK(p.values[1] == doctest::Approx(-0.7071).epsilon(1e-3));
        CHECK(p.norm() == doctest::Approx(1.0).epsilon(1e-9));
    }
    SUBCASE("sign follows the ratio comparison and values stay inside (-1,1)") {
        for (uint64_t seed = 0; seed < 30; ++seed) {
            std::mt19937_64 rng(seed);
            std::uniform_real_distribution<double> u(0.0, 10.0);
            std::vector<double> a(5), b(5);
            for (int i = 0; i < 5; ++i) {
                a[i] = u(rng);
                b[i] = u(rng);
            }
            CountReport ra = fake_report(4, a), rb = fake_report(4, b);
            CharacteristicProfile p = characteristic_profile(ra, rb, 1e-3);
            double ta = ra.total(), tb = rb.total();
            double norm = 0;
            for (int i = 0; i < 5; ++i) {
                double mu = (a[i] / ta - b[i] / tb) / (a[i] / ta + b[i] / tb + 1e-3);
                CHECK(std::abs(mu) < 1.0);
                norm += mu * mu;
            }
            if (norm > 0) CHECK(p.norm() == doctest::Approx(1.0).epsilon(1e-9));
        }
    }
    SUBCASE("errors") {
        CHECK_THROWS_AS(characteristic_profile(fake_report(3, {1, 0}), fake_report(4, {1, 0}), 1e-3),
                        UsageError);
        CHECK_THROWS_AS(characteristic_profile(fake_report(3, {0, 0}), fake_report(3, {1, 0}), 1e-3),
                        UsageError);
        CHECK_THROWS_AS(characteristic_profile(fake_report(3, {1, 0}), fake_report(3, {1, 0}), 0.0),
                        UsageError);
    }
}

TEST_CASE("normalized error") {
    CHECK(normalized_error(fake_report(3, {10, 0}), fake_report(3, {10, 0})) == 0.0);
    CHECK(normalized_error(fake_report(3, {10, 0}), fake_report(3, {9, 1})) ==
          doctest::Approx(0.2));
    // scale invariance
    CHECK(normalized_error(fake_report(3, {30, 0}), fake_report(3, {27, 3})) ==
          doctest::Approx(0.2));
    CHECK_THROWS_AS(normalized_error(fake_report(3, {0, 0}), fake_report(3, {1, 0})), UsageError);
}

TEST_CASE("cosine similarity matrix") {
    auto profile = [](std::vector<double> v) {
        CharacteristicProfile p;
        p.k = 2;
        p.values = std::move(v);
        return p;
    };
    auto m = cosine_similarity_matrix({profile({1, 0}), profile({0, 1}), profile({-1, 0})});
    CHECK(m[0][0] == doctest::Approx(1.0));
    CHECK(m[0][1] == doctest::Approx(0.0));
    CHECK(m[0][2] == doctest::Approx(-1.0));
    CHECK(m[1][2] == doctest::Approx(0.0));
    CHECK_THROWS_AS(cosine_similarity_matrix({profile({1, 0}), profile({0, 0})}), UsageError);
}

TEST_CASE("k-means++ clustering") {
    SUBCASE("separable clouds recovered in every trial") {
        std::vector<std::vector<double>> points;
        std::mt19937_64 rng(4);
        std::normal_distribution<double> noise(0.0, 0.05);
        for (int i = 0; i < 12; ++i) points.push_back({(i < 6 ? 0.0 : 5.0) + noise(rng), noise(rng)});
        KmeansResult km = kmeans_pp(points, 2, 10, 17);
        CHECK(km.assignments.size() == 10);
        for (const auto& assign : km.assignments) {
            for (int i = 1; i < 6; ++i) CHECK(assign[i] == assign[0]);
            for (int i = 7; i < 12; ++i) CHECK(assign[i] == assign[6]);
            CHECK(assign[0] != assign[6]);
        }
    }
    SUBCASE("one cluster per point when n_clusters equals the input size") {
        std::vector<std::vector<double>> points = {{0.0}, {1.0}, {2.0}};
        KmeansResult km = kmeans_pp(points, 3, 3, 9);
        for (const auto& assign : km.assignments) {
            std::set<int> distinct(assign.begin(), assign.end());
            CHECK(distinct.size() == 3);
        }
    }
    SUBCASE("seeded runs are reproducible") {
        std::vector<std::vector<double>> points;
        std::mt19937_64 rng(8);
        std::uniform_real_distribution<double> u(0, 1);
        for (int i = 0; i < 20; ++i) points.push_back({u(rng), u(rng)});
        KmeansResult a = kmeans_pp(points, 4, 10, 123);
        KmeansResult b = kmeans_pp(points, 4, 10, 123);
        CHECK(a.assignments == b.assignments);
    }
    SUBCASE("errors") {
        CHECK_THROWS_AS(kmeans_pp({{1.0}, {1.0, 2.0}}, 1, 1, 0), UsageError);
        CHECK_THROWS_AS(kmeans_pp({{1.0}}, 2, 1, 0), UsageError);
    }
}
