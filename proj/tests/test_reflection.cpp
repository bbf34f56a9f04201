#include <doctest.h>

#include <random>

#include "conekit/reflection.hpp"

using namespace conekit;

TEST_CASE("catalog orders and degrees") {
    // |G| / |Z| is the degree of the quotient map of CP^1; |Z| = gcd of the invariant degrees.
    for (const auto& [fam, deg] : std::vector<std::pair<std::string, int>>{
             {"tetrahedral", 12}, {"octahedral", 24}, {"icosahedral", 60}}) {
        const auto g = catalog(fam);
        CAPTURE(fam);
        CHECK(g.schwarz_degree == deg);
        CHECK(g.order == g.center_order * deg);
        // beta = twice the triangle angles, and area pi (sum - 1) of the triangle is 2 pi / degree... of the sphere.
        Rational s(0);
        for (const auto& t : g.triangle) s += t;
        CHECK((s - Rational(1)) * Rational(deg) == Rational(2));
    }
    const auto g = catalog("G(m,p,2)", 4, 2);
    CHECK(g.order == 4 * 4 * 2 / 2);
}

TEST_CASE("Schwarz maps: degree and ramification") {
    for (const auto& [fam, deg] : std::vector<std::pair<std::string, int>>{
             {"tetrahedral", 12}, {"octahedral", 24}, {"icosahedral", 60}}) {
        CAPTURE(fam);
        const auto f = normalized_schwarz_map(fam);
        CHECK(f.degree() == deg);
        CHECK(f.coprime());
        const auto d = degree_by_preimages(f);
        CHECK(d.agree);
        CHECK(d.degree == deg);
        // Riemann-Hurwitz: sum over critical points of (local degree - 1) = 2 deg - 2.
        int total = 0;
        for (const auto& c : critical_points(f)) total += c.order;
        CHECK(total == 2 * deg - 2);
        // Over each critical value all points have the same local degree.
        for (const auto& v : {std::optional<QSqrtM3>(QSqrtM3(0)), std::optional<QSqrtM3>(QSqrtM3(1)),
                              std::optional<QSqrtM3>()}) {
            const auto prof = ramification_profile(f, v);
            CHECK(prof.size() == 1);
            CHECK(prof.begin()->first * prof.begin()->second == deg);
        }
    }
}

TEST_CASE("Schwarz metric pulls back to the round metric") {
    std::mt19937_64 rng(7);
    std::normal_distribution<double> n(0.0, 1.0);
    for (const std::string fam : {"tetrahedral", "octahedral", "icosahedral"}) {
        const auto f = normalized_schwarz_map(fam);
        const auto g = schwarz_metric(f);
        double worst = 0;
        for (int i = 0; i < 50; ++i) {
            const cdouble eta(n(rng), n(rng));
            const cdouble x = f(eta);
            if (std::abs(x) < 1e-2 || std::abs(x - 1.0) < 1e-2 || std::abs(x) > 1e2) continue;
            worst = std::max(worst, std::abs(pullback_ratio(g, f, eta) - 1));
        }
        CAPTURE(fam);
        CHECK(worst < 1e-9);
    }
    const auto g = base_metric_G222();
    const auto f = base_map_G222();
    CHECK(std::abs(pullback_ratio(g, f, cdouble(0.4, 0.7)) - 1) < 1e-12);
    CHECK(f.degree() == 4);
}

TEST_CASE("invariants") {
    CHECK(invariant_under_swap(parse_bipoly("z^3 + w^3")));
    CHECK_FALSE(invariant_under_swap(parse_bipoly("z^3 + 2*w^3")));
    CHECK(invariant_under_diagonal(parse_bipoly("z * w"), 1, -1, 5));
    CHECK_FALSE(invariant_under_diagonal(parse_bipoly("z^2 * w"), 1, -1, 5));
    for (int m = 2; m <= 6; ++m) {
        const auto r = verify_invariants("G(m,m,2)", m);
        CHECK(r.invariant);
        CHECK(r.relation);
        CHECK(verify_invariants("G(2m,2,2)", m).invariant);
    }
}

TEST_CASE("quotient potential normalization") {
    const auto rec = recover_normalization(quotient_potential_G2m22(2, true));
    CHECK(rec.a == doctest::Approx(8 * std::sqrt(2.0)).epsilon(1e-8));
    CHECK(rec.ratio_spread < 1e-10);
    for (int m = 2; m <= 4; ++m)
        CHECK(recover_normalization(quotient_potential_G2m22(m, false)).a == doctest::Approx(2.0 * m * m).epsilon(1e-8));
}
