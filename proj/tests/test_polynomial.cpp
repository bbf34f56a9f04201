#include <doctest.h>

#include "conekit/polynomial.hpp"

using namespace conekit;

using QPoly = Poly<Rational>;

TEST_CASE("univariate arithmetic") {
    const QPoly x = QPoly::x();
    const QPoly p = x * x - QPoly(Rational(1));
    CHECK(p.degree() == 2);
    auto [q, r] = divmod(p, x - QPoly(Rational(1)));
    CHECK(q == x + QPoly(Rational(1)));
    CHECK(r.is_zero());
    CHECK(gcd(p, x * x - Rational(2) * x + QPoly(Rational(1))) == x - QPoly(Rational(1)));
    CHECK(p.derivative() == Rational(2) * x);
    CHECK(p.substitute_power(3).degree() == 6);
    CHECK(p(Rational(3)) == Rational(8));
}

TEST_CASE("square-free decomposition") {
    const QPoly x = QPoly::x();
    const QPoly a = x - QPoly(Rational(1)), b = x + QPoly(Rational(2));
    const QPoly p = Rational(5) * a * pow(b, 3);
    const auto dec = squarefree_decomposition(p);
    REQUIRE(dec.size() == 2);
    CHECK(dec[0] == std::pair<QPoly, int>(a, 1));
    CHECK(dec[1] == std::pair<QPoly, int>(b, 3));
    CHECK(distinct_root_count(p) == 2);
    CHECK_FALSE(is_squarefree(p));
    CHECK(is_squarefree(a * b));
}

TEST_CASE("Q(i sqrt 3)") {
    const QSqrtM3 s(Rational(0), Rational(1));
    CHECK(s * s == QSqrtM3(-3));
    const QSqrtM3 omega(Rational(-1, 2), Rational(1, 2));  // primitive cube root of unity
    CHECK(omega * omega * omega == QSqrtM3(1));
    CHECK(QSqrtM3(1) / omega == omega * omega);
    CHECK(std::abs(omega.to_complex() - std::polar(1.0, 2 * 3.14159265358979323846 / 3)) < 1e-15);
}

TEST_CASE("certified roots") {
    // x^5 - 1.
    std::vector<std::complex<long double>> c = {-1, 0, 0, 0, 0, 1};
    const auto r = certified_roots(c);
    CHECK(r.isolated);
    REQUIRE(r.roots.size() == 5);
    for (std::size_t i = 0; i < 5; ++i) {
        CHECK(std::abs(std::pow(r.roots[i], 5) - 1.0L) < 1e-15L);
        CHECK(r.radii[i] < 1e-12L);
    }
}

TEST_CASE("bivariate parsing and evaluation") {
    const BiPoly f = parse_bipoly("(z - 2 * w)^2 - 1/3 * w^3");
    CHECK(f.order() == 2);
    CHECK(f.total_degree() == 3);
    CHECK(f.coeff(1, 1) == Rational(-4));
    CHECK(f.coeff(0, 3) == Rational(-1, 3));
    const std::complex<double> z(0.3, -0.2), w(-0.7, 0.1);
    const auto expect = (z - 2.0 * w) * (z - 2.0 * w) - w * w * w / 3.0;
    CHECK(std::abs(f(z, w) - expect) < 1e-14);
    CHECK(f.homogeneous_part(2) == parse_bipoly("z^2 - 4*z*w + 4*w^2"));
    CHECK(parse_bipoly(f.str()) == f);
    CHECK_THROWS_AS(parse_bipoly("z^"), std::invalid_argument);
    CHECK_THROWS_AS(parse_bipoly("x + 1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_bipoly("(z + w"), std::invalid_argument);
}

TEST_CASE("linear changes") {
    const BiPoly f = parse_bipoly("z^2 + z * w - w^3");
    // f(a z + b w, c z + d w) evaluated two ways.
    const auto g = f.linear_change(Rational(2), Rational(-1), Rational(1, 2), Rational(3));
    const std::complex<double> z(0.4, 0.9), w(-1.1, 0.3);
    CHECK(std::abs(g(z, w) - f(2.0 * z - w, 0.5 * z + 3.0 * w)) < 1e-13);
    CHECK(f.swapped().swapped() == f);
    CHECK(f.shear(Rational(0)) == f);
}
