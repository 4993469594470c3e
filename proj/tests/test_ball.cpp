#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "relmet/ball.hpp"

using namespace relmet;

namespace {
const double pi = 3.14159265358979323846;

// hoisted: constructing a WeightFunction re-runs its validation sweep
auto infty_q_dist(double q) {
    return [m = pq_weight(inf, q)](const Vec& a, const Vec& b) { return rho(m, a, b); };
}
}  // namespace

TEST_CASE("trace frame faces the origin") {
    PlaneFrame fr = trace_frame(Vec{0.0, 3.0});
    CHECK(fr.u[0] == Catch::Approx(0.0).margin(1e-15));
    CHECK(fr.u[1] == Catch::Approx(-1.0).epsilon(1e-15));
    CHECK(std::abs(dot(fr.u, fr.v)) < 1e-14);
    CHECK(norm(fr.v) == Catch::Approx(1.0).epsilon(1e-14));
    PlaneFrame at0 = trace_frame(Vec{0.0, 0.0, 0.0});
    CHECK(at0.u[0] == 1.0);
    CHECK(at0.v[1] == 1.0);
    CHECK_THROWS_AS(trace_frame(Vec{1.0}), std::domain_error);
}

TEST_CASE("euclidean trace is the round sphere") {
    auto d = [](const Vec& a, const Vec& b) { return dist(a, b); };
    BallTrace t = trace_sphere_dist(d, Vec{2.0, 1.0}, 0.7, 64, 0.7);
    REQUIRE(t.s_values.size() == 64);
    for (double s : t.s_values) CHECK(s == Catch::Approx(0.7).epsilon(1e-11));
    ConvexityReport rep = convexity_check(t);
    CHECK(rep.convex);
    CHECK(rep.corner_indices.empty());
}

TEST_CASE("max-weight sphere hugs the euclidean radius while inside the unit ball") {
    // around e1 the distance equals plain s until |z + s e| leaves the unit
    // ball, i.e. exactly while cos(theta) >= r/2
    double q = 0.5, r = 0.5;
    Vec z{1.0, 0.0};
    auto d = infty_q_dist(q);
    double theta0 = std::acos(0.5 * r);
    for (double th : {0.0, 0.4, theta0 - 1e-3}) {
        double s = solve_ray(d, z, add(scaled(trace_frame(z).u, std::cos(th)),
                                       scaled(trace_frame(z).v, std::sin(th))), r, r);
        CHECK(s == Catch::Approx(r).epsilon(1e-10));
    }
    for (double th : {theta0 + 1e-2, pi / 2, pi - 0.2}) {
        double s = solve_ray(d, z, add(scaled(trace_frame(z).u, std::cos(th)),
                                       scaled(trace_frame(z).v, std::sin(th))), r, r);
        CHECK(s > r * (1.0 + 1e-6));
    }
    // directly away from the origin with q = 1: s / (1+s) = r
    double s_away = solve_ray(infty_q_dist(1.0), z, scaled(trace_frame(z).u, -1.0), 0.5, 0.5);
    CHECK(s_away == Catch::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("unit-radius max-weight ball is unbounded away from the origin") {
    Vec z{1.0, 0.0};
    auto d = infty_q_dist(1.0);
    BallTrace t = trace_sphere_dist(d, z, 1.0, 64, 1.0);
    CHECK_FALSE(t.all_finite());
    CHECK_THROWS_AS(convexity_check(t), std::domain_error);
    // outward ray: s / max(1, 1+s) < 1 for every s
    CHECK(std::isinf(solve_ray(d, z, scaled(trace_frame(z).u, -1.0), 1.0, 1.0)));
}

TEST_CASE("predicted corner of the max-weight sphere") {
    double q = 0.5, r = 0.5;
    CornerPrediction pred = infty_q_corner(q, r);
    CHECK(pred.theta0 == Catch::Approx(std::acos(0.25)).epsilon(1e-15));

    Vec z{1.0, 0.0};
    PlaneFrame fr = trace_frame(z);
    auto d = infty_q_dist(q);
    auto s_at = [&](double th) {
        Vec e = add(scaled(fr.u, std::cos(th)), scaled(fr.v, std::sin(th)));
        return solve_ray(d, z, e, r, r);
    };
    double found = refine_corner(s_at, pred.theta0 - 0.3, pred.theta0 + 0.3);
    CHECK(std::abs(found - pred.theta0) < 1e-3);

    double inner = one_sided_slope(s_at, pred.theta0, -1);
    double outer = one_sided_slope(s_at, pred.theta0, +1);
    CHECK(std::abs(inner) < 1e-4);
    CHECK(outer == Catch::Approx(pred.slope_jump).margin(1e-4));

    CHECK_THROWS_AS(infty_q_corner(0.0, 0.5), std::domain_error);
    CHECK_THROWS_AS(infty_q_corner(0.5, 2.0), std::domain_error);
    CHECK_THROWS_AS(infty_q_corner(1.0, 1.5), std::domain_error);
}

TEST_CASE("corner detection singles out the kink on a full trace") {
    double q = 0.5, r = 0.5;
    WeightFunction m = pq_weight(inf, q);
    BallTrace t = trace_sphere(m, Vec{1.0, 0.0}, r, 1024);
    ConvexityReport rep = convexity_check(t);
    REQUIRE_FALSE(rep.corner_thetas.empty());
    double theta0 = infty_q_corner(q, r).theta0;
    bool near_plus = false, near_minus = false;
    for (double th : rep.corner_thetas) {
        if (std::abs(th - theta0) < 0.02) near_plus = true;
        if (std::abs(th + theta0) < 0.02) near_minus = true;
    }
    CHECK(near_plus);
    CHECK(near_minus);
}

TEST_CASE("small spheres of metric pq weights are convex") {
    Vec z{1.0, 0.0};
    for (double p : {1.0, 2.0, 4.0}) {
        WeightFunction m = pq_weight(p, 0.5);
        double r = small_radius_for(m, z);
        BallTrace t = trace_sphere(m, z, r, 512);
        double nz = norm(z);
        for (double s : t.s_values) CHECK(s <= 0.05 * nz * (1.0 + 1e-9));
        ConvexityReport rep = convexity_check(t);
        CHECK(rep.convex);
        CHECK(rep.corner_indices.empty());
    }
    CHECK_THROWS_AS(small_radius_for(pq_weight(2.0, 0.5), Vec{0.0, 0.0}),
                    std::invalid_argument);
}

TEST_CASE("directional spread collapses at small radii") {
    WeightFunction m = pq_weight(2.0, 0.5);
    IsotropyReport rep =
        isotropy_check(m, Vec{2.0, 0.0}, {0.5, 0.1, 0.02, 0.004, 0.0002});
    CHECK(rep.isotropic);
    REQUIRE(rep.ratios.size() == 5);
    CHECK(rep.ratios.back() <= 1.0 + 1e-4);
    CHECK(rep.ratios.front() >= rep.ratios.back() - 1e-12);
    CHECK_THROWS_AS(isotropy_check(m, Vec{1.0, 0.0}, {0.1, 0.5}), std::invalid_argument);
}

TEST_CASE("star-shapedness holds in the guaranteed range and can fail outside") {
    auto arith = [](double u, double v) { return 0.5 * (u + v); };
    StarShapeReport ok = star_shaped_check(arith, Vec{1.0, 0.0}, 1.0);
    CHECK(ok.star_shaped);
    CHECK_FALSE(ok.trivial);

    StarShapeReport center = star_shaped_check(arith, Vec{0.0, 0.0}, 1.0);
    CHECK(center.star_shaped);
    CHECK(center.trivial);

    // x^2 + y^2 is not moderately increasing; along the ray toward the origin
    // the distance peaks and comes back down within s <= 2
    auto square = [](double u, double v) { return u * u + v * v; };
    StarShapeReport bad = star_shaped_check(square, Vec{1.0, 0.0}, 2.0);
    CHECK_FALSE(bad.star_shaped);
    REQUIRE(bad.witness.has_value());
    CHECK(bad.witness->v1 < bad.witness->v0);
}
