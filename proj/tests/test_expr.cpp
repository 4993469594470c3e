#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "relmet/expr.hpp"

using relmet::WeightExpr;

TEST_CASE("expression arithmetic and precedence") {
    CHECK(WeightExpr("2+3*4")(0, 0) == 14.0);
    CHECK(WeightExpr("(2+3)*4")(0, 0) == 20.0);
    CHECK(WeightExpr("2^3^2")(0, 0) == 512.0);  // right-associative
    CHECK(WeightExpr("-x+y")(3, 5) == 2.0);
    CHECK(WeightExpr("x/y")(1, 4) == 0.25);
    CHECK(WeightExpr("x^2+y^2")(3, 4) == 25.0);
    CHECK(WeightExpr("1.5e2")(0, 0) == 150.0);
    CHECK(WeightExpr("  x * ( y + 1 ) ")(2, 3) == 8.0);
}

TEST_CASE("expression functions and constants") {
    CHECK(WeightExpr("sqrt(x*y)")(4, 9) == Catch::Approx(6.0));
    CHECK(WeightExpr("max(x,y)")(2, 7) == 7.0);
    CHECK(WeightExpr("min(x,y)")(2, 7) == 2.0);
    CHECK(WeightExpr("pow(x,0.5)*pow(y,0.5)")(4, 16) == Catch::Approx(8.0));
    CHECK(WeightExpr("abs(x-y)")(2, 9) == 7.0);
    CHECK(WeightExpr("exp(log(x))")(5, 0) == Catch::Approx(5.0));
    CHECK(WeightExpr("pi")(0, 0) == Catch::Approx(3.14159265358979323846));
    CHECK(WeightExpr("e")(0, 0) == Catch::Approx(2.71828182845904523536));
}

TEST_CASE("expression matches the power-mean formula it encodes") {
    WeightExpr m("((x^2+y^2)/2)^0.5");
    CHECK(m(1, 7) == Catch::Approx(5.0).epsilon(1e-15));
    WeightExpr mx("max(x,y)^0.5");
    CHECK(mx(4, 9) == Catch::Approx(3.0).epsilon(1e-15));
}

TEST_CASE("expression parse failures") {
    CHECK_THROWS_AS(WeightExpr("x+"), std::invalid_argument);
    CHECK_THROWS_AS(WeightExpr("foo(x)"), std::invalid_argument);
    CHECK_THROWS_AS(WeightExpr("pow(x)"), std::invalid_argument);
    CHECK_THROWS_AS(WeightExpr("min(x,y,1)"), std::invalid_argument);
    CHECK_THROWS_AS(WeightExpr("(x"), std::invalid_argument);
    CHECK_THROWS_AS(WeightExpr("x)"), std::invalid_argument);
    CHECK_THROWS_AS(WeightExpr(""), std::invalid_argument);
    CHECK_THROWS_AS(WeightExpr("x $ y"), std::invalid_argument);
}

TEST_CASE("expression source is preserved") {
    WeightExpr m("sqrt(x*y)");
    CHECK(m.source() == "sqrt(x*y)");
}
