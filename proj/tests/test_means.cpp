#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "relmet/means.hpp"

using namespace relmet;

TEST_CASE("power mean classical branches") {
    CHECK(power_mean(2.0, 1.0, 7.0) == Catch::Approx(5.0).epsilon(1e-15));
    CHECK(power_mean(0.0, 4.0, 9.0) == Catch::Approx(6.0).epsilon(1e-15));
    CHECK(power_mean(1.0, 3.0, 5.0) == Catch::Approx(4.0).epsilon(1e-15));
    CHECK(power_mean(-1.0, 2.0, 6.0) == Catch::Approx(3.0).epsilon(1e-15));
    CHECK(power_mean(inf, 2.0, 6.0) == 6.0);
    CHECK(power_mean(-inf, 2.0, 6.0) == 2.0);
    CHECK(power_mean(3.7, 5.0, 5.0) == 5.0);
}

TEST_CASE("power mean handles zero and infinite arguments") {
    CHECK(power_mean(-2.0, 0.0, 5.0) == 0.0);
    CHECK(power_mean(2.0, 0.0, 0.0) == 0.0);
    CHECK(power_mean(2.0, 0.0, 3.0) > 0.0);
    // A_{-1}(inf, t) = harmonic limit 2t; A_p(inf, inf) = inf
    CHECK(power_mean(-1.0, inf, 3.0) == Catch::Approx(6.0).epsilon(1e-15));
    CHECK(power_mean(2.0, inf, inf) == inf);
    CHECK(power_mean(-2.0, inf, inf) == inf);
    CHECK(power_mean(2.0, inf, 1.0) == inf);
    CHECK_THROWS_AS(power_mean(2.0, -1.0, 1.0), std::domain_error);
}

TEST_CASE("power mean is monotone in p and homogeneous") {
    double x = 0.8, y = 13.0;
    double prev = power_mean(-inf, x, y);
    for (double p : {-5.0, -1.0, -0.2, 0.0, 0.3, 1.0, 2.0, 8.0}) {
        double v = power_mean(p, x, y);
        CHECK(v >= prev - 1e-12 * v);
        prev = v;
    }
    CHECK(power_mean(inf, x, y) >= prev);
    for (double p : {-2.0, 0.0, 0.5, 3.0})
        CHECK(power_mean(p, 7.0 * x, 7.0 * y) ==
              Catch::Approx(7.0 * power_mean(p, x, y)).epsilon(1e-13));
}

TEST_CASE("quasimean family values") {
    // S_{1/2}(4,1) = (1/2)(4-1)/(2-1)
    CHECK(s_quasimean(0.5, 4.0, 1.0) == Catch::Approx(1.5).epsilon(1e-15));
    double e = std::exp(1.0);
    CHECK(s_quasimean(1.0, e, 1.0) == Catch::Approx(e - 1.0).epsilon(1e-14));
    CHECK(log_mean(e, 1.0) == Catch::Approx(e - 1.0).epsilon(1e-14));
    CHECK(log_mean(7.0, 7.0) == 7.0);
    CHECK(s_quasimean(0.5, 4.0, 4.0) == Catch::Approx(2.0).epsilon(1e-15));
    CHECK(s_quasimean(1.0, 5.0, 0.0) == 0.0);
    CHECK(s_quasimean(0.25, 0.0, 0.0) == 0.0);
    CHECK(s_quasimean(0.5, inf, 2.0) == inf);
    CHECK_THROWS_AS(s_quasimean(0.0, 1.0, 2.0), std::domain_error);
    CHECK_THROWS_AS(s_quasimean(1.5, 1.0, 2.0), std::domain_error);
    CHECK_THROWS_AS(s_quasimean(0.5, -1.0, 2.0), std::domain_error);
}

TEST_CASE("quasimean near-diagonal branch is continuous") {
    double x = 2.0;
    for (double p : {0.3, 0.7, 1.0}) {
        double limit = std::pow(x, p);
        CHECK(s_quasimean(p, x, x * (1.0 + 1e-9)) == Catch::Approx(limit).epsilon(1e-8));
        CHECK(s_quasimean(p, x, x * (1.0 + 1e-7)) == Catch::Approx(limit).epsilon(1e-6));
    }
}

TEST_CASE("logarithmic mean sits between geometric and arithmetic") {
    for (double x : {0.2, 1.0, 3.0, 40.0})
        for (double y : {0.7, 2.5, 11.0}) {
            double L = log_mean(x, y);
            CHECK(L >= power_mean(0.0, x, y) - 1e-12 * L);
            CHECK(L <= power_mean(1.0, x, y) + 1e-12 * L);
        }
}

TEST_CASE("log grid shape") {
    auto g = log_grid(1e-2, 1e2, 5);
    REQUIRE(g.size() == 5);
    CHECK(g.front() == Catch::Approx(1e-2).epsilon(1e-12));
    CHECK(g.back() == Catch::Approx(1e2).epsilon(1e-12));
    CHECK(g[2] == Catch::Approx(1.0).epsilon(1e-12));
    for (std::size_t i = 0; i + 1 < g.size(); ++i) CHECK(g[i] < g[i + 1]);
    CHECK_THROWS_AS(log_grid(0.0, 1.0, 4), std::invalid_argument);
    CHECK_THROWS_AS(log_grid(2.0, 1.0, 4), std::invalid_argument);
    CHECK_THROWS_AS(log_grid(1.0, 2.0, 1), std::invalid_argument);
}

TEST_CASE("moderately increasing predicate on known weights") {
    auto grid = log_grid(1e-4, 1e4, 256);
    // geometric mean: sections increase, section/t decreases
    CHECK(is_moderately_increasing([](double x, double y) { return std::sqrt(x * y); }, grid));
    // arithmetic mean likewise
    CHECK(is_moderately_increasing([](double x, double y) { return 0.5 * (x + y); }, grid));
    // x^2 + y^2 fails: the section ratio grows once t passes y
    auto w = moderately_increasing_witness([](double x, double y) { return x * x + y * y; }, grid);
    REQUIRE(w.has_value());
    CHECK(w->x0 < w->x1);
}

TEST_CASE("quasimean exponent envelope") {
    auto grid = log_grid(1e-3, 1e3, 64);
    CHECK(quasimean_exponent_check(
        [](double x, double y) { return std::pow(0.5 * (x + y), 0.5); }, 0.5, grid));
    CHECK(quasimean_exponent_check([](double x, double y) { return std::sqrt(x * y); }, 1.0, grid));
    // the sum exceeds max(x,y), so it is not a 1-quasimean
    auto w = quasimean_exponent_witness([](double x, double y) { return x + y; }, 1.0, grid);
    CHECK(w.has_value());
}
