#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "relmet/quasihyperbolic.hpp"
#include "support.hpp"

using namespace relmet;

namespace {
const double pi = 3.14159265358979323846;
}

TEST_CASE("closed-form values of the weighted distance") {
    // alpha = 0 is the Euclidean chord
    CHECK(k_alpha_polar(0.0, 2.0, 1.0, pi / 2) == Catch::Approx(std::sqrt(5.0)).epsilon(1e-14));
    CHECK(k_alpha(0.5, Vec{2, 0}, Vec{0, 1}) == Catch::Approx(2.0).epsilon(1e-12));
    // antipodal unit pair, beta = 1/2: 2 * 2 sin(pi/4)
    CHECK(k_alpha(0.5, Vec{1, 0}, Vec{-1, 0}) ==
          Catch::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-13));
    CHECK(k_alpha_polar(0.5, 0.0, 4.0, 0.0) == Catch::Approx(4.0).epsilon(1e-14));
    CHECK(k_alpha_polar(0.5, 0.0, 0.0, 1.0) == 0.0);
    CHECK(k_one(Vec{1, 0}, Vec{0, 1}) == Catch::Approx(pi / 2).epsilon(1e-14));
    double e = std::exp(1.0);
    CHECK(k_one(Vec{e, 0}, Vec{1, 0}) == Catch::Approx(1.0).epsilon(1e-14));
    CHECK_THROWS_AS(k_alpha(1.0, Vec{1, 0}, Vec{0, 1}), std::domain_error);
    CHECK_THROWS_AS(k_alpha(0.5, Vec{0, 0}, Vec{0, 1}), std::domain_error);
    CHECK_THROWS_AS(k_one(Vec{0, 0}, Vec{0, 1}), std::domain_error);
}

TEST_CASE("near-one weights collapse onto the logarithmic distance") {
    std::mt19937_64 rng(21);
    for (int i = 0; i < 300; ++i) {
        Vec x = testsupport::log_point(rng, 3, 1e-2, 1e2);
        Vec y = testsupport::log_point(rng, 3, 1e-2, 1e2);
        double ka = k_alpha(1.0 - 1e-4, x, y);
        double k1 = k_one(x, y);
        CHECK(std::abs(ka - k1) <= 1e-3 * std::max(1.0, k1));
    }
    // under the switchover threshold the limit form is used verbatim
    CHECK(k_alpha(1.0 - 1e-7, Vec{2, 0}, Vec{1, 0}) == k_one(Vec{2, 0}, Vec{1, 0}));
}

TEST_CASE("upper bound dominates the distance") {
    std::mt19937_64 rng(31);
    for (int i = 0; i < 500; ++i) {
        Vec x = testsupport::log_point(rng, 3, 1e-2, 1e2);
        Vec y = testsupport::log_point(rng, 3, 1e-2, 1e2);
        for (double a : {0.0, 0.3, 0.7})
            CHECK(k_alpha(a, x, y) <= k_upper_bound(a, x, y) * (1.0 + 1e-12));
    }
    CHECK(k_upper_bound(0.5, Vec{1, 0}, Vec{-1, 0}) == Catch::Approx(4.0).epsilon(1e-15));
}

TEST_CASE("geodesic endpoints, length, and radial degeneration") {
    GeodesicPolar rad = geodesic(0.5, Vec{1, 0}, Vec{9, 0});
    CHECK(rad.radial);
    CHECK(rad.length() == Catch::Approx(k_alpha(0.5, Vec{1, 0}, Vec{9, 0})).epsilon(1e-13));
    CHECK(dist(rad.point(0.0), Vec{1, 0}) < 1e-12);
    CHECK(dist(rad.point(1.0), Vec{9, 0}) < 1e-11);

    Vec x{2, 0, 0}, y{0, 1, 0};
    GeodesicPolar g = geodesic(0.5, x, y);
    CHECK_FALSE(g.radial);
    // the nearer endpoint sits at parameter 0
    CHECK(dist(g.point(0.0), y) < 1e-12);
    CHECK(dist(g.point(1.0), x) < 1e-11);
    CHECK(g.length() == Catch::Approx(2.0).epsilon(1e-12));
    // right-angle configuration: sin(c2) = 1
    CHECK(g.c1 == Catch::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("geodesic length equals the closed form across random pairs") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 200; ++i) {
        Vec x = testsupport::log_point(rng, 3, 1e-1, 1e1);
        Vec y = testsupport::log_point(rng, 3, 1e-1, 1e1);
        for (double a : {0.1, 0.5, 0.9}) {
            double k = k_alpha(a, x, y);
            double glen = geodesic(a, x, y).length();
            CHECK(glen == Catch::Approx(k).epsilon(1e-9));
        }
    }
}

TEST_CASE("sampled geodesic polyline integrates to the distance") {
    std::mt19937_64 rng(17);
    for (int i = 0; i < 10; ++i) {
        Vec x = testsupport::log_point(rng, 3, 1e-1, 1e1);
        Vec y = testsupport::log_point(rng, 3, 1e-1, 1e1);
        for (double a : {0.2, 0.6}) {
            double k = k_alpha(a, x, y);
            double num = path_length(a, geodesic(a, x, y).sample(2048));
            CHECK(num == Catch::Approx(k).epsilon(1e-6));
        }
    }
}

TEST_CASE("polyline length reduces to Euclidean at weight exponent zero") {
    std::vector<Vec> pts{{1, 0}, {1, 1}, {0, 1}};
    CHECK(path_length(0.0, pts) == Catch::Approx(2.0).epsilon(1e-15));
    CHECK_THROWS_AS(path_length(0.5, std::vector<Vec>{{1, 0}, {0, 0}}), std::domain_error);
    CHECK_THROWS_AS(path_length(0.5, std::vector<Vec>{{1, 0}}), std::invalid_argument);
}

TEST_CASE("straight segments are never shorter than the distance") {
    // k_alpha is the infimum of weighted lengths, so any concrete path bounds
    // it from above
    std::mt19937_64 rng(23);
    for (int i = 0; i < 50; ++i) {
        Vec x = testsupport::log_point(rng, 2, 0.5, 5.0);
        Vec y = testsupport::log_point(rng, 2, 0.5, 5.0);
        if (angle(x, y) > 3.0) continue;  // segment may pass near the origin
        std::vector<Vec> seg(257);
        for (std::size_t j = 0; j < seg.size(); ++j)
            seg[j] = lerp(x, y, static_cast<double>(j) / (seg.size() - 1));
        double a = 0.4;
        CHECK(path_length(a, seg) >= k_alpha(a, x, y) * (1.0 - 1e-9));
    }
}

TEST_CASE("comparison chain is nondecreasing with the documented equalities") {
    std::mt19937_64 rng(41);
    for (int i = 0; i < 500; ++i) {
        Vec x = testsupport::log_point(rng, 3, 1e-2, 1e2);
        Vec y = testsupport::log_point(rng, 3, 1e-2, 1e2);
        double a = 0.05 + 0.9 * (i % 10) / 10.0;
        ChainReport rep = inequality_chain_check(a, x, y);
        CHECK(rep.nondecreasing);
    }

    // proportional points: the first two expressions agree
    ChainReport prop = inequality_chain_check(0.4, Vec{3, 0}, Vec{1.2, 0});
    CHECK(prop.values[0] == Catch::Approx(prop.values[1]).epsilon(1e-9));
    // antipodal points: middle pair agree
    ChainReport anti = inequality_chain_check(0.4, Vec{-2.5, 0}, Vec{1, 0});
    CHECK(anti.values[1] == Catch::Approx(anti.values[2]).epsilon(1e-9));
    // alpha = 0: third equals fourth
    ChainReport a0 = inequality_chain_check(0.0, Vec{2, 1}, Vec{0.3, -0.4});
    CHECK(a0.values[2] == Catch::Approx(a0.values[3]).epsilon(1e-9));
    // opposite equal magnitudes: fourth equals fifth
    ChainReport opp = inequality_chain_check(0.55, Vec{1.7, 0}, Vec{-1.7, 0});
    CHECK(opp.values[3] == Catch::Approx(opp.values[4]).epsilon(1e-9));
}
