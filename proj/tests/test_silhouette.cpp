#include "medsil/silhouette.hpp"

#include "support/instances.hpp"
#include "support/oracle.hpp"

#include <doctest.h>

#include <numeric>
#include <random>

using namespace medsil;
using Medoids = std::vector<std::size_t>;

TEST_CASE("safe_ratio") {
    CHECK(safe_ratio(0.0, 0.0) == 0.0);
    CHECK(1.0 - safe_ratio(0.0, 0.0) == 1.0);
    CHECK(safe_ratio(1.0, 2.0) == 0.5);
    CHECK(safe_ratio(0.0, 5.0) == 0.0);
    CHECK(safe_ratio(1.0, kInfinity) == 0.0);
}

TEST_CASE("eval_medoid_silhouette on the line fixture") {
    const auto d = fixtures::line();
    const auto r = eval_medoid_silhouette(d, Medoids{0, 2});
    REQUIRE(r.per_point.size() == 4);
    CHECK(r.per_point[0] == 1.0);
    CHECK(r.per_point[1] == doctest::Approx(8.0 / 9.0).epsilon(1e-15));
    CHECK(r.per_point[2] == 1.0);
    CHECK(r.per_point[3] == doctest::Approx(10.0 / 11.0).epsilon(1e-15));
    CHECK(r.average == doctest::Approx(0.9494949494949495).epsilon(1e-14));
    CHECK(eval_medoid_silhouette(d, Medoids{0, 3}).average == doctest::Approx(0.95).epsilon(1e-15));

    // {0,3} and {1,2} tie for the global optimum over all pairs
    double best = -1.0;
    oracle::for_each_subset(4, 2, [&](const Medoids& m) { best = std::max(best, eval_medoid_silhouette(d, m).average); });
    CHECK(best == doctest::Approx(0.95).epsilon(1e-15));
}

TEST_CASE("eval_medoid_silhouette caches and d3 sentinel") {
    const auto d = fixtures::line();
    const auto r = eval_medoid_silhouette(d, Medoids{0, 2});
    CHECK(r.caches[1].d1 == 1.0);
    CHECK(r.caches[1].d2 == 9.0);
    CHECK(r.caches[1].d3 == kInfinity);
    CHECK(r.caches[2].d1 == 0.0);
    CHECK(r.caches[2].n1 == 1);
}

TEST_CASE("eval_medoid_silhouette with every point a medoid") {
    const auto d = fixtures::uniform_points(9, 3);
    Medoids all(9);
    std::iota(all.begin(), all.end(), std::size_t{0});
    CHECK(eval_medoid_silhouette(d, all).average == 1.0);
}

TEST_CASE("eval_medoid_silhouette rejects bad medoid sets") {
    const auto d = fixtures::line();
    CHECK_THROWS_AS(eval_medoid_silhouette(d, Medoids{1}), std::invalid_argument);
    CHECK_THROWS_AS(eval_medoid_silhouette(d, Medoids{1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(eval_medoid_silhouette(d, Medoids{1, 4}), std::invalid_argument);
}

TEST_CASE("eval_medoid_silhouette matches the brute-force oracle") {
    std::mt19937_64 gen(3);
    for (int t = 0; t < 50; ++t) {
        const std::size_t n = 5 + gen() % 30;
        const std::size_t k = 2 + gen() % 4;
        const auto d = t % 2 ? fixtures::random_matrix(n, gen()) : fixtures::uniform_points(n, gen());
        const auto m = fixtures::random_medoids(n, k, gen);
        const auto r = eval_medoid_silhouette(d, m);
        double mean = 0.0;
        for (std::size_t o = 0; o < n; ++o) {
            REQUIRE(r.per_point[o] == doctest::Approx(oracle::medoid_silhouette(d, m, o)).epsilon(1e-14));
            REQUIRE(r.per_point[o] >= 0.0);
            REQUIRE(r.per_point[o] <= 1.0);
            mean += r.per_point[o];
        }
        mean /= static_cast<double>(n);
        CHECK(std::abs(r.average - mean) <= 1e-15 * static_cast<double>(n));
    }
}

TEST_CASE("eval_full_silhouette on the line fixture") {
    const auto d = fixtures::line();
    const auto r = eval_full_silhouette(d, std::vector<int>{0, 0, 1, 1});
    CHECK(r.per_point[0] == doctest::Approx(0.9047619047619048).epsilon(1e-14));
    CHECK(r.per_point[1] == doctest::Approx(0.8947368421052632).epsilon(1e-14));
    CHECK(r.per_point[2] == doctest::Approx(0.8947368421052632).epsilon(1e-14));
    CHECK(r.per_point[3] == doctest::Approx(0.9047619047619048).epsilon(1e-14));
    CHECK(r.average == doctest::Approx(0.899749373433584).epsilon(1e-14));
    CHECK(r.a[0] == 1.0);
    CHECK(r.b[0] == 10.5);
}

TEST_CASE("eval_full_silhouette conventions") {
    SUBCASE("coincident pairs give 1") {
        const auto d = Dissimilarity::from_points({{0.0}, {0.0}, {5.0}, {5.0}}, MetricId::euclidean);
        CHECK(eval_full_silhouette(d, std::vector<int>{3, 3, 8, 8}).average == 1.0);
    }
    SUBCASE("singleton cluster gets 0") {
        const auto d = fixtures::line();
        const auto r = eval_full_silhouette(d, std::vector<int>{0, 1, 1, 1});
        CHECK(r.per_point[0] == 0.0);
    }
    SUBCASE("one cluster is rejected") {
        CHECK_THROWS_AS(eval_full_silhouette(fixtures::line(), std::vector<int>{2, 2, 2, 2}), std::invalid_argument);
    }
    SUBCASE("label count must match") {
        CHECK_THROWS_AS(eval_full_silhouette(fixtures::line(), std::vector<int>{0, 1}), std::invalid_argument);
    }
}

TEST_CASE("eval_full_silhouette matches the definition") {
    std::mt19937_64 gen(5);
    for (int t = 0; t < 30; ++t) {
        const std::size_t n = 4 + gen() % 25;
        const auto d = fixtures::random_matrix(n, gen());
        std::vector<int> labels(n);
        for (auto& l : labels) {
            l = static_cast<int>(gen() % 4);
        }
        labels[0] = 0;
        labels[1] = 1;
        CHECK(eval_full_silhouette(d, labels).average == doctest::Approx(oracle::asw(d, labels)).epsilon(1e-12));
    }
}

TEST_CASE("ASW and AMS both equal 1 when every cluster is a coincident pair") {
    const auto d = Dissimilarity::from_points({{0.0, 0.0}, {0.0, 0.0}, {4.0, 1.0}, {4.0, 1.0}, {9.0, 9.0}, {9.0, 9.0}},
                                              MetricId::euclidean);
    const Medoids m{0, 2, 4};
    CHECK(eval_medoid_silhouette(d, m).average == 1.0);
    CHECK(eval_full_silhouette(d, labels_from_medoids(d, m)).average == 1.0);
}

TEST_CASE("labels_from_medoids") {
    const auto d = fixtures::line();
    CHECK(labels_from_medoids(d, Medoids{0, 2}) == Labels{0, 0, 1, 1});
    CHECK(labels_from_medoids(d, Medoids{3, 1}) == Labels{1, 1, 0, 0});

    const auto eq = Dissimilarity::from_points({{0.0}, {1.0}, {2.0}}, MetricId::euclidean);
    CHECK(labels_from_medoids(eq, Medoids{0, 2})[1] == 0);
    CHECK(labels_from_medoids(eq, Medoids{2, 0})[1] == 0);
}

TEST_CASE("richness_witness construction") {
    const auto w = richness_witness(4, Medoids{0, 1});
    CHECK(w.dist(0, 2) == 0.0);
    CHECK(w.dist(0, 3) == 0.0);
    CHECK(w.dist(1, 2) == 1.0);
    CHECK(w.dist(2, 3) == 1.0);
    CHECK(w.dist(0, 1) == 1.0);
    CHECK(eval_medoid_silhouette(w, Medoids{0, 1}).average == 1.0);
    CHECK_THROWS(richness_witness(2, Medoids{0, 1}));
}

TEST_CASE("richness: the encoded medoid set is the unique maximizer") {
    std::mt19937_64 gen(17);
    for (std::size_t k = 2; k <= 3; ++k) {
        for (std::size_t n = k + 2; n <= 10; ++n) {
            const auto m = fixtures::random_medoids(n, k, gen);
            const auto w = richness_witness(n, m);
            Medoids sorted_m = m;
            std::sort(sorted_m.begin(), sorted_m.end());
            int maximizers = 0;
            oracle::for_each_subset(n, k, [&](const Medoids& cand) {
                const double v = eval_medoid_silhouette(w, cand).average;
                if (cand == sorted_m) {
                    CHECK(v == 1.0);
                } else {
                    CHECK(v < 1.0);
                }
                maximizers += v == 1.0;
            });
            CHECK(maximizers == 1);
        }
    }
}

TEST_CASE("richness: with n = k + 1 the maximizer is not unique") {
    // swapping the first medoid for the single non-medoid also reaches 1
    const Medoids m{0, 1};
    const auto w = richness_witness(3, m);
    CHECK(eval_medoid_silhouette(w, m).average == 1.0);
    CHECK(eval_medoid_silhouette(w, Medoids{2, 1}).average == 1.0);
}

TEST_CASE("scale invariance is bit-exact for powers of two") {
    std::mt19937_64 gen(23);
    for (int t = 0; t < 20; ++t) {
        const std::size_t n = 10 + gen() % 30;
        const auto d = fixtures::uniform_points(n, gen());
        const auto m = fixtures::random_medoids(n, 2 + gen() % 4, gen);
        const auto base = eval_medoid_silhouette(d, m);
        for (const double lambda : {0.5, 2.0, 1024.0}) {
            const auto s = eval_medoid_silhouette(d.scaled(lambda), m);
            CHECK(s.average == base.average);
            CHECK(s.per_point == base.per_point);
        }
    }
}

TEST_CASE("consistency: M-consistent variants never lower AMS") {
    std::mt19937_64 gen(29);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int t = 0; t < 100; ++t) {
        const std::size_t n = 4 + gen() % 37;
        const auto d = t % 2 ? fixtures::uniform_points(n, gen()) : fixtures::random_matrix(n, gen());
        const auto m = fixtures::random_medoids(n, 2 + gen() % std::min<std::size_t>(4, n - 2), gen);
        const auto labels = labels_from_medoids(d, m);
        auto values = d.to_matrix();
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                if (u(gen) < 0.5) {
                    continue;
                }
                const double f = labels[i] == labels[j] ? u(gen) : 1.0 + 3.0 * u(gen);
                values[i * n + j] *= f;
                values[j * n + i] = values[i * n + j];
            }
        }
        const auto variant = Dissimilarity::from_matrix(n, std::move(values));
        CHECK(eval_medoid_silhouette(variant, m).average >= eval_medoid_silhouette(d, m).average);
    }
}

TEST_CASE("isomorphism invariance under point permutations") {
    std::mt19937_64 gen(31);
    for (int t = 0; t < 50; ++t) {
        const std::size_t n = 5 + gen() % 36;
        const auto d = fixtures::random_matrix(n, gen());
        const auto m = fixtures::random_medoids(n, 2 + gen() % 4, gen);
        std::vector<std::size_t> perm(n);
        std::iota(perm.begin(), perm.end(), std::size_t{0});
        std::shuffle(perm.begin(), perm.end(), gen);
        std::vector<double> values(n * n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                values[perm[i] * n + perm[j]] = d(i, j);
            }
        }
        const auto pd = Dissimilarity::from_matrix(n, std::move(values));
        Medoids pm;
        for (const auto x : m) {
            pm.push_back(perm[x]);
        }
        CHECK(eval_medoid_silhouette(pd, pm).average == eval_medoid_silhouette(d, m).average);
    }
}
