#include <doctest.h>

#include <numeric>

#include "conekit/curvesing.hpp"

using namespace conekit;

TEST_CASE("singularity exponents") {
    CHECK(analyze_germ("z").c0 == Rational(1));
    CHECK(analyze_germ("w^2 - z^3").c0 == Rational(5, 6));
    CHECK(analyze_germ("w^2 - z^5").c0 == Rational(7, 10));
    CHECK(analyze_germ("w^3 - z^4").c0 == Rational(7, 12));
    CHECK(analyze_germ("w^2 - z^7").c0 == Rational(9, 14));
    CHECK(analyze_germ("w^3 - z^5").c0 == Rational(8, 15));
    for (int d = 2; d <= 6; ++d) {
        std::string f = "w^" + std::to_string(d) + " - z^" + std::to_string(d);
        const auto g = analyze_germ(f);
        CHECK(g.family == GermFamily::ordinary);
        CHECK(g.c0 == Rational(2, d));
    }
}

TEST_CASE("w^m - z^n gives 1/m + 1/n") {
    for (int m = 2; m <= 6; ++m)
        for (int n = m + 1; n <= 11; ++n) {
            if (std::gcd(m, n) != 1) continue;
            const std::string f = "w^" + std::to_string(m) + " - z^" + std::to_string(n);
            CAPTURE(f);
            const auto g = analyze_germ(f);
            CHECK(g.c0 == Rational(1, m) + Rational(1, n));
            CHECK(*g.puiseux_ratio == Rational(n, m));
        }
}

TEST_CASE("tangent line is moved to w = 0") {
    // (z - w)^2 - w^3: tangent line z = w, same type as a cusp.
    const auto g = analyze_germ("(z - w)^2 - w^3");
    CHECK(g.c0 == Rational(5, 6));
    // Higher-order terms above the Newton edge do not matter.
    CHECK(analyze_germ("w^2 - z^3 + z^2 * w^2 + z^5").c0 == Rational(5, 6));
}

TEST_CASE("unsupported germs are diagnosed") {
    CHECK_THROWS_AS(analyze_germ("1 + z"), std::invalid_argument);
    CHECK_THROWS_AS(analyze_germ("w^2"), std::invalid_argument);
    CHECK_THROWS_AS(analyze_germ("(w^2 - z^3)^2"), std::invalid_argument);
    CHECK_THROWS_AS(analyze_germ("w^2 * (w - z)"), std::invalid_argument);
}

TEST_CASE("rescaling threshold") {
    // m = 2, n = 3: the exponent n - m / gamma vanishes at beta = 5/6.
    CHECK(rescaling_exponent(2, 3, Rational(5, 6)).verdict == TangentConeVerdict::boundary);
    CHECK(rescaling_exponent(2, 3, Rational(5, 6) + Rational(1, 1000)).verdict == TangentConeVerdict::product);
    CHECK(rescaling_exponent(2, 3, Rational(5, 6) - Rational(1, 1000)).verdict == TangentConeVerdict::non_product);
    // Boundary at beta = 1 - 1/m + 1/n in general.
    for (int m = 2; m <= 5; ++m)
        for (int n = m + 1; n <= 9; ++n)
            if (std::gcd(m, n) == 1) {
                const Rational b = Rational(1) - Rational(1, m) + Rational(1, n);
                CHECK(rescaling_exponent(m, n, b).exponent == Rational(0));
            }
    const auto w = flat_cone_angle_window(2, 3);
    CHECK(w.lo == Rational(1, 6));
    CHECK(w.hi == Rational(5, 6));
    CHECK_THROWS(flat_cone_angle_window(2, 4));
}
