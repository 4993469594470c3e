#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "relmet/relative.hpp"
#include "support.hpp"

using namespace relmet;

TEST_CASE("relative distance basics") {
    Vec x{2.0, 0.0}, y{0.0, 1.0};
    // max-weight with exponent 1: sqrt(5)/max(2,1)
    CHECK(rho_pq(inf, 1.0, x, y) == Catch::Approx(std::sqrt(5.0) / 2.0).epsilon(1e-15));
    CHECK(rho_pq(2.0, 0.0, x, y) == Catch::Approx(std::sqrt(5.0)).epsilon(1e-15));
    CHECK(rho_pq(2.0, 1.0, x, x) == 0.0);
    CHECK(rho_pq(2.0, 1.0, Vec{0.0, 0.0}, Vec{0.0, 0.0}) == 0.0);
    // a positive numerator over a vanishing weight is a genuine +inf
    WeightFunction zeroish = product_weight([](double t) { return t; }, "t.t");
    CHECK(rho(zeroish, Vec{0.0, 0.0}, Vec{1.0, 0.0}) == inf);
    CHECK(rho_line(pq_weight(2.0, 1.0), -3.0, 3.0) ==
          Catch::Approx(6.0 / std::pow(18.0, 0.5)).epsilon(1e-14));
}

TEST_CASE("pq distance agrees with the generic weight path") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 200; ++i) {
        Vec x = testsupport::log_point(rng, 3, 1e-2, 1e2);
        Vec y = testsupport::log_point(rng, 3, 1e-2, 1e2);
        for (double p : {0.5, 1.0, 2.0})
            for (double q : {0.25, 1.0}) {
                double a = rho_pq(p, q, x, y);
                double b = rho(pq_weight(p, q), x, y);
                CHECK(a == Catch::Approx(b).epsilon(1e-12));
            }
    }
}

TEST_CASE("metricity region of the pq family") {
    CHECK(pq_is_metric(2.0, 0.0));
    CHECK(pq_is_metric(0.1, 0.0));
    CHECK(pq_is_metric(1.0, 1.0));
    CHECK(pq_is_metric(0.5, 0.5));  // p = max(1-q, (2-q)/3) = 0.5 exactly
    CHECK(pq_is_metric(1e9, 1.0));
    CHECK_FALSE(pq_is_metric(0.3, 0.5));
    CHECK_FALSE(pq_is_metric(0.2, 0.9));
    CHECK_FALSE(pq_is_metric(0.1, 0.3));
    CHECK_FALSE(pq_is_metric(2.0, 1.5));
    CHECK_FALSE(pq_is_metric(2.0, -0.1));
}

TEST_CASE("line fuzz finds the documented violations and clears a true metric") {
    auto bad = metric_on_line_fuzz(pq_weight(0.3, 0.5), 20000, 42);
    CHECK(bad.worst_violation > 0.0);
    REQUIRE(bad.witness.has_value());
    // replay the witness: the violation must be reproducible
    const Triple& w = *bad.witness;
    auto d = [&](const Vec& a, const Vec& b) {
        return rho_line(pq_weight(0.3, 0.5), a[0], b[0]);
    };
    double replay = std::max({d(w.a, w.b) - d(w.a, w.c) - d(w.c, w.b),
                              d(w.a, w.c) - d(w.a, w.b) - d(w.b, w.c),
                              d(w.c, w.b) - d(w.c, w.a) - d(w.a, w.b)});
    CHECK(replay > 0.0);

    auto good = metric_on_line_fuzz(pq_weight(1.0, 1.0), 20000, 42);
    CHECK(good.worst_relative <= 1e-12);
    CHECK_FALSE(good.witness.has_value());
}

TEST_CASE("rn fuzz matches the region verdicts") {
    auto good = pq_fuzz_rn(2.0, 0.5, 3, 20000, 11);
    CHECK(good.worst_relative <= 1e-12);
    auto bad = pq_fuzz_rn(0.2, 0.9, 1, 50000, 11);
    CHECK(bad.worst_violation > 0.0);
}

TEST_CASE("quasimean trace criterion") {
    auto grid = default_predicate_grid();
    // max{x,y}^q: the trace/quasimean ratio is nondecreasing on [1, inf)
    auto rep = metric_criterion_quasimean(pq_weight(inf, 0.5), 0.5, grid);
    CHECK(rep.verdict == MetricCriterion::SufficientHolds);
    // geometric mean against S_1: sqrt(x) < (x-1)/log x already at x = 4
    auto fail = metric_criterion_quasimean(power_mean_weight(0.0, 1.0), 1.0, grid);
    CHECK(fail.verdict == MetricCriterion::NecessaryFails);
    REQUIRE(fail.witness.has_value());
    CHECK(fail.witness->v0 < fail.witness->v1);
    CHECK_THROWS_AS(metric_criterion_quasimean(pq_weight(2.0, 0.5), 0.0, grid),
                    std::domain_error);
}

TEST_CASE("sqrt(x) trace really dips under the logarithmic mean at 4") {
    CHECK(std::sqrt(4.0) < s_quasimean(1.0, 4.0, 1.0));
    CHECK(s_quasimean(1.0, 4.0, 1.0) == Catch::Approx(3.0 / std::log(4.0)).epsilon(1e-14));
}

TEST_CASE("inner-product spaces satisfy the four-point product inequality") {
    std::mt19937_64 rng(99);
    for (int i = 0; i < 500; ++i) {
        Vec x = testsupport::log_point(rng, 3, 1e-1, 1e1);
        Vec y = testsupport::log_point(rng, 3, 1e-1, 1e1);
        Vec z = testsupport::log_point(rng, 3, 1e-1, 1e1);
        Vec w = testsupport::log_point(rng, 3, 1e-1, 1e1);
        double scale = dist(z, w) * dist(x, y) + 1.0;
        CHECK(ptolemy_check(x, y, z, w) <= 1e-10 * scale);
    }
}

TEST_CASE("product-weight finite-metric screen") {
    auto grid = log_grid(1e-3, 1e3, 200);
    auto ok = ff_finite_metric_check([](double t) { return 1.0 + t; }, grid);
    CHECK(ok.ok);
    auto constant = ff_finite_metric_check([](double) { return 2.0; }, grid);
    CHECK(constant.ok);
    auto concave = ff_finite_metric_check([](double t) { return std::sqrt(1.0 + t); }, grid);
    CHECK_FALSE(concave.ok);
    CHECK(concave.reason == "not-convex");
    auto fast = ff_finite_metric_check([](double t) { return 1.0 + t * t; }, grid);
    CHECK_FALSE(fast.ok);
    CHECK(fast.reason == "ratio-increasing");
    auto dec = ff_finite_metric_check([](double t) { return 1.0 / (1.0 + t); }, grid);
    CHECK_FALSE(dec.ok);
    CHECK(dec.reason == "not-nondecreasing");
}

TEST_CASE("metric descriptors evaluate their formulas") {
    Vec x{1.0, 2.0, 2.0}, y{0.0, 0.0, 0.0};
    auto eu = MetricDescriptor::euclidean(3);
    CHECK(eu(x, y) == 3.0);
    auto pq = MetricDescriptor::pq_relative(2.0, 1.0, 3);
    CHECK(pq(x, y) == Catch::Approx(rho_pq(2.0, 1.0, x, y)));
    auto sp = MetricDescriptor::spherical(3);
    CHECK(sp(Vec{1, 0, 0}, Vec{-1, 0, 0}) == Catch::Approx(1.0).epsilon(1e-15));
    auto pf = MetricDescriptor::product_f([](double t) { return 1.0 + t; }, 3);
    CHECK(pf(x, y) == Catch::Approx(3.0 / 4.0).epsilon(1e-14));
    auto cw = MetricDescriptor::custom(pq_weight(1.0, 1.0), 3);
    CHECK(cw(x, y) == Catch::Approx(rho_pq(1.0, 1.0, x, y)));
    CHECK_THROWS_AS(MetricDescriptor::pq_relative(0.0, 1.0, 3), std::invalid_argument);
}

TEST_CASE("bilipschitz sampling brackets simple maps") {
    auto eu = MetricDescriptor::euclidean(3);
    auto [lo1, hi1] = bilipschitz_estimate([](const Vec& v) { return v; }, eu, 500, 5);
    CHECK(lo1 == Catch::Approx(1.0).epsilon(1e-12));
    CHECK(hi1 == Catch::Approx(1.0).epsilon(1e-12));
    auto [lo2, hi2] = bilipschitz_estimate([](const Vec& v) { return scaled(v, 2.0); }, eu, 500, 5);
    CHECK(lo2 == Catch::Approx(2.0).epsilon(1e-12));
    CHECK(hi2 == Catch::Approx(2.0).epsilon(1e-12));
}
