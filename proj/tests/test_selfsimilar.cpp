#include <doctest.h>

#include <cmath>

#include "fracdim/errors.hpp"
#include "fracdim/rng.hpp"
#include "fracdim/selfsimilar.hpp"

using namespace fracdim;

namespace {

// The {lambda x, lambda x + 1, lambda x + 3} family.
SimilarIFS digit_family(double lambda) {
    return SimilarIFS::line({lambda, lambda, lambda}, {0.0, 1.0, 3.0});
}

SimilarIFS four_corner() {
    std::vector<SimilarityMap> maps;
    for (Vec t : {Vec{0.0, 0.0}, Vec{0.75, 0.0}, Vec{0.75, 0.75}, Vec{0.0, 0.75}}) {
        SimilarityMap m;
        m.ratio = 0.25;
        m.rotation = Mat::identity(2);
        m.translation = t;
        maps.push_back(m);
    }
    return SimilarIFS(std::move(maps));
}

}  // namespace

TEST_CASE("similarity dimension closed forms") {
    CHECK(similarity_dimension({0.5, 0.5, 0.5}) ==
          doctest::Approx(std::log(3.0) / std::log(2.0)).epsilon(1e-12));
    CHECK(similarity_dimension({0.25, 0.25, 0.25, 0.25}) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(similarity_dimension({1.0 / 3, 1.0 / 3, 1.0 / 3}) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(similarity_dimension({0.5}) == doctest::Approx(0.0));
    CHECK_THROWS_AS(similarity_dimension({}), ValidationError);
}

TEST_CASE("similarity dimension strictly decreases when a ratio shrinks") {
    Rng rng(321);
    for (int trial = 0; trial < 30; ++trial) {
        std::size_t m = 2 + rng.index(3);
        std::vector<double> r(m);
        for (double& x : r) x = 0.1 + 0.5 * rng.uniform();
        double s = similarity_dimension(r);
        std::size_t which = rng.index(m);
        r[which] *= 0.5 + 0.4 * rng.uniform();
        CHECK(similarity_dimension(r) < s);
    }
}

TEST_CASE("natural projection hits fixed points and composes front-to-back") {
    // single map x/2 + 1 has fixed point 2
    SimilarIFS one = SimilarIFS::line({0.5}, {1.0});
    std::vector<int> word(40, 0);
    Vec p = natural_projection(one, word, {0.0});
    CHECK(p[0] == doctest::Approx(2.0).epsilon(1e-10));

    // four-corner: word (2) in 1-based labels is index 1 with translation (3/4, 0)
    Vec q = natural_projection(four_corner(), std::vector<int>{1}, {0.0, 0.0});
    CHECK(q[0] == doctest::Approx(0.75));
    CHECK(q[1] == doctest::Approx(0.0));

    // composition order: S_{312}(x) = S_3(S_1(S_2(x))) on scalar test maps
    SimilarIFS line = SimilarIFS::line({0.5, 0.4, 0.3}, {1.0, 2.0, 3.0});
    auto s = [&](int i, double x) { return line.maps[i].apply({x})[0]; };
    Vec composed = natural_projection(line, std::vector<int>{2, 0, 1}, {0.0});
    CHECK(composed[0] == doctest::Approx(s(2, s(0, s(1, 0.0)))).epsilon(1e-14));

    CHECK_THROWS_AS(natural_projection(line, std::vector<int>{3}, {0.0}), ValidationError);
}

TEST_CASE("chaos game stays in the invariant ball and is reproducible") {
    auto fc = four_corner();
    auto cloud = attractor_points(fc, 2000, 9);
    auto cloud2 = attractor_points(fc, 2000, 9);
    REQUIRE(cloud.size() == 2000);
    for (std::size_t i = 0; i < cloud.size(); ++i) {
        CHECK(cloud[i] == cloud2[i]);
        CHECK(cloud[i][0] >= -1e-9);
        CHECK(cloud[i][0] <= 1.0 + 1e-9);
        CHECK(cloud[i][1] >= -1e-9);
        CHECK(cloud[i][1] <= 1.0 + 1e-9);
    }

    // every point lies in one of the 4^3 level-3 cylinder squares (side 4^-3)
    double side = std::pow(0.25, 3);
    for (const Vec& p : cloud) {
        bool inside = false;
        for (int w0 = 0; w0 < 4 && !inside; ++w0)
            for (int w1 = 0; w1 < 4 && !inside; ++w1)
                for (int w2 = 0; w2 < 4 && !inside; ++w2) {
                    Vec corner = natural_projection(fc, std::vector<int>{w0, w1, w2}, {0.0, 0.0});
                    if (p[0] >= corner[0] - side && p[0] <= corner[0] + 2 * side &&
                        p[1] >= corner[1] - side && p[1] <= corner[1] + 2 * side)
                        inside = true;
                }
        CHECK(inside);
    }

    // single map: everything collapses to the fixed point
    SimilarIFS one = SimilarIFS::line({0.5}, {1.0});
    for (const Vec& p : attractor_points(one, 50, 3))
        CHECK(p[0] == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("measure similarity dimension") {
    SimilarIFS ifs = SimilarIFS::line({0.5, 0.25, 0.25}, {0.0, 0.5, 0.75});
    CHECK(simdim_measure({ifs, {0.5, 0.25, 0.25}}) == doctest::Approx(1.0).epsilon(1e-12));

    SimilarIFS equal = SimilarIFS::line({0.3, 0.3, 0.3}, {0.0, 0.35, 0.7});
    double unif = simdim_measure({equal, Vec(3, 1.0 / 3)});
    CHECK(unif == doctest::Approx(std::log(3.0) / -std::log(0.3)).epsilon(1e-12));
    CHECK(unif == doctest::Approx(similarity_dimension(equal.ratios())).epsilon(1e-10));

    SimilarIFS two = SimilarIFS::line({0.5, 0.5}, {0.0, 0.5});
    CHECK(simdim_measure({two, {1.0, 0.0}}) == doctest::Approx(0.0));
}

TEST_CASE("separation delta of the digit family") {
    // lambda = 1/3: exact overlap at level 2 (maps 0+3*(1/3) and 1+0 coincide)
    auto rep = separation_delta(digit_family(1.0 / 3.0), 2);
    CHECK(rep.exact_overlap);
    CHECK(rep.delta_n == doctest::Approx(0.0));

    // lambda = 0.35: enumerate the 9 level-2 values by hand; min gap |3l - 1|
    auto rep35 = separation_delta(digit_family(0.35), 2);
    CHECK_FALSE(rep35.exact_overlap);
    CHECK(rep35.delta_n == doctest::Approx(0.05).epsilon(1e-12));

    // strongly separated pair {x/3, x/3 + 2/3}: level-3 endpoints are
    // (2/27) {0,1,3,4,9,10,12,13}; the minimal gap is 2/27
    auto ssp = separation_delta(SimilarIFS::line({1.0 / 3, 1.0 / 3}, {0.0, 2.0 / 3}), 3);
    CHECK_FALSE(ssp.exact_overlap);
    CHECK(ssp.delta_n == doctest::Approx(2.0 / 27.0).epsilon(1e-12));
    CHECK(ssp.rates.back() ==
          doctest::Approx(-std::log(2.0 / 27.0) / 3.0).epsilon(1e-12));
}

TEST_CASE("exact overlap propagates to deeper levels") {
    auto rep = separation_delta(digit_family(1.0 / 3.0), 4);
    CHECK(rep.exact_overlap);
    for (std::size_t k = 1; k < rep.deltas.size(); ++k)
        CHECK(rep.deltas[k] == doctest::Approx(0.0));  // composing with a common word
}

TEST_CASE("exact overlap witness search") {
    auto witness = exact_overlap_search(digit_family(1.0 / 3.0), 2);
    REQUIRE(witness.has_value());
    CHECK(witness->word_a == std::vector<int>{0, 2});  // translations (0, 3)
    CHECK(witness->word_b == std::vector<int>{1, 0});  // translations (1, 0)

    CHECK_FALSE(exact_overlap_search(SimilarIFS::line({1.0 / 3, 1.0 / 3}, {0.0, 2.0 / 3}), 4)
                    .has_value());
    CHECK_FALSE(exact_overlap_search(SimilarIFS::line({0.5}, {1.0}), 3).has_value());
}

TEST_CASE("product-set dimension formula stays below the similarity bound") {
    // 1 + log2/(-log l) < min{2, log6/(-log l)} strictly inside (1/3, 1/sqrt(6))
    for (double lambda = 0.3356; lambda < 0.4082; lambda += 0.002) {
        double formula = 1.0 + std::log(2.0) / (-std::log(lambda));
        double bound = std::min(2.0, std::log(6.0) / (-std::log(lambda)));
        CHECK(formula < bound);
    }
}

TEST_CASE("interval overlap check on the line") {
    CHECK(interval_overlap_free(SimilarIFS::line({1.0 / 3, 1.0 / 3}, {0.0, 2.0 / 3})));
    CHECK_FALSE(interval_overlap_free(digit_family(0.4)));
}

TEST_CASE("separation analysis rejects higher dimensions") {
    CHECK_THROWS_AS(separation_delta(four_corner(), 2), ValidationError);
    CHECK_THROWS_AS(exact_overlap_search(four_corner(), 2), ValidationError);
}
