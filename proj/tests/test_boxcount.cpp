#include <doctest.h>

#include <cmath>

#include "fracdim/boxcount.hpp"
#include "fracdim/errors.hpp"
#include "fracdim/rng.hpp"
#include "fracdim/selfsimilar.hpp"

using namespace fracdim;

namespace {

SimilarIFS gasket() {
    std::vector<SimilarityMap> maps;
    for (Vec t : {Vec{0.0, 0.0}, Vec{0.5, 0.0}, Vec{0.0, 0.5}}) {
        SimilarityMap m;
        m.ratio = 0.5;
        m.rotation = Mat::identity(2);
        m.translation = t;
        maps.push_back(m);
    }
    return SimilarIFS(std::move(maps));
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

PointCloud uniform_square(std::size_t count, std::uint64_t seed) {
    Rng rng(seed);
    PointCloud cloud;
    cloud.reserve(count);
    for (std::size_t i = 0; i < count; ++i) cloud.push_back({rng.uniform(), rng.uniform()});
    return cloud;
}

}  // namespace

TEST_CASE("uniform segment has slope 1") {
    Rng rng(1);
    PointCloud cloud;
    for (int i = 0; i < 100000; ++i) cloud.push_back({rng.uniform()});
    auto prof = box_count(cloud, dyadic_scales(3, 8));
    CHECK(std::abs(prof.slope - 1.0) < 0.02);
    CHECK_FALSE(prof.fit_warning);
}

TEST_CASE("sierpinski gasket chaos game reproduces log3/log2") {
    auto cloud = attractor_points(gasket(), 1000000, 2);
    auto prof = box_count(cloud, dyadic_scales(4, 9));
    double target = std::log(3.0) / std::log(2.0);
    CHECK(std::abs(prof.slope - target) < 0.05);
    CHECK(dimension_crosscheck(similarity_dimension(gasket().ratios()), prof, 0.05).pass);
}

TEST_CASE("four-corner cloud has slope near 1") {
    auto cloud = attractor_points(four_corner(), 1000000, 3);
    // The set is 4-adic: quarter scales align with the cylinder squares.
    std::vector<double> scales;
    for (int k = 2; k <= 5; ++k) scales.push_back(std::pow(4.0, -k));
    auto prof = box_count(cloud, scales);
    CHECK(std::abs(prof.slope - 1.0) < 0.05);
    // On dyadic scales the count oscillates between grid levels by a bounded
    // factor; the fitted slope sits near 1.086 over the 2^-4..2^-9 window.
    auto dyadic = box_count(cloud, dyadic_scales(4, 9));
    CHECK(std::abs(dyadic.slope - 1.0) < 0.15);
}

TEST_CASE("counts are monotone in the scale and bounded") {
    auto cloud = uniform_square(50000, 4);
    auto prof = box_count(cloud, dyadic_scales(2, 7));
    for (std::size_t i = 0; i + 1 < prof.counts.size(); ++i)
        CHECK(prof.counts[i + 1] >= prof.counts[i]);  // N grows as delta shrinks
    for (std::size_t i = 0; i < prof.counts.size(); ++i) {
        double delta = prof.scales[i];
        CHECK(prof.counts[i] >= 1);
        CHECK(static_cast<double>(prof.counts[i]) <= std::pow(1.0 / delta, 2.0) + 2.0);
    }
}

TEST_CASE("chaos-game cloud is stationary under one more random map") {
    auto ifs = gasket();
    auto cloud = attractor_points(ifs, 400000, 12);
    Rng rng(13);
    PointCloud pushed;
    pushed.reserve(cloud.size());
    for (const Vec& p : cloud) pushed.push_back(ifs.maps[rng.index(ifs.size())].apply(p));
    auto prof = box_count(cloud, dyadic_scales(4, 8));
    auto prof_pushed = box_count(pushed, dyadic_scales(4, 8));
    CHECK(std::abs(prof.slope - prof_pushed.slope) < 0.02);
    for (std::size_t i = 0; i < prof.counts.size(); ++i) {
        double ratio = static_cast<double>(prof_pushed.counts[i]) /
                       static_cast<double>(prof.counts[i]);
        CHECK(ratio > 0.95);
        CHECK(ratio < 1.05);
    }
}

TEST_CASE("slope is stable under cloud doubling and rescaling") {
    auto a = attractor_points(gasket(), 300000, 5);
    auto b = attractor_points(gasket(), 300000, 6);
    auto prof_a = box_count(a, dyadic_scales(4, 8));
    PointCloud doubled = a;
    doubled.insert(doubled.end(), b.begin(), b.end());
    auto prof_d = box_count(doubled, dyadic_scales(4, 8));
    CHECK(std::abs(prof_a.slope - prof_d.slope) < 0.02);

    PointCloud scaled;
    for (const Vec& p : a) scaled.push_back({2.0 * p[0], 2.0 * p[1]});
    auto prof_s = box_count(scaled, dyadic_scales(4, 8));
    CHECK(std::abs(prof_a.slope - prof_s.slope) < 0.02);
}

TEST_CASE("box count input validation") {
    CHECK_THROWS_AS(box_count({}, dyadic_scales(3, 5)), ValidationError);
    CHECK_THROWS_AS(box_count({{0.5}}, {0.25}), ValidationError);  // need >= 2 scales
    CHECK_THROWS_AS(box_count({{0.5}}, {2.0, 0.5}), ValidationError);
}

TEST_CASE("local dimension: plane, atom, cantor set") {
    auto cloud = uniform_square(200000, 7);
    auto est = local_dimension(cloud, {0.5, 0.5}, {0.2, 0.1, 0.05, 0.025});
    // mu(B(x,r)) = pi r^2, so the raw ratio is 2 + log(pi)/log(r) at each
    // radius; the window extremes follow from the largest/smallest radius
    CHECK(est.lower == doctest::Approx(2.0 + std::log(M_PI) / std::log(0.2)).epsilon(0.03));
    CHECK(est.upper == doctest::Approx(2.0 + std::log(M_PI) / std::log(0.025)).epsilon(0.03));
    CHECK(est.upper < 2.0);  // the constant bias vanishes only as r -> 0

    PointCloud atom(1000, Vec{0.3, 0.3});
    auto at = local_dimension(atom, {0.3, 0.3}, {0.1, 0.01});
    CHECK(at.lower == doctest::Approx(0.0));
    CHECK(at.upper == doctest::Approx(0.0));

    // middle-third Cantor measure at a typical point
    SimilarIFS cantor = SimilarIFS::line({1.0 / 3, 1.0 / 3}, {0.0, 2.0 / 3});
    auto samples = attractor_points(cantor, 200000, 8);
    Vec x = samples[12345];
    std::vector<double> radii;
    for (int k = 2; k <= 7; ++k) radii.push_back(std::pow(3.0, -k));
    auto ce = local_dimension(samples, x, radii);
    double target = std::log(2.0) / std::log(3.0);
    CHECK(ce.lower > target - 0.1);
    CHECK(ce.upper < target + 0.1);

    CHECK_THROWS_AS(local_dimension(cloud, {50.0, 50.0}, {0.001}), ValidationError);
}

TEST_CASE("crosscheck verdicts") {
    BoxCountProfile prof;
    prof.dim = 2;
    prof.slope = 1.57;
    prof.r_squared = 0.999;
    CHECK(dimension_crosscheck(1.585, prof, 0.05).pass);
    prof.slope = 1.2;
    CHECK_FALSE(dimension_crosscheck(1.43, prof, 0.05).pass);
    prof.slope = 1.97;
    auto clamped = dimension_crosscheck(2.4, prof, 0.05);
    CHECK(clamped.pass);  // min{d, analytic} clamps to 2
    CHECK(clamped.expected == doctest::Approx(2.0));
}
