#include <doctest.h>

#include "conekit/checks.hpp"
#include "conekit/flatcone.hpp"
#include "conekit/reflection.hpp"

using namespace conekit;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("rugby potential in closed form") {
    // u = log beta - log(1 + |xi|^{2 beta}) and c = beta give r^2 = (|z|^{2 beta} + |w|^{2 beta}) / beta^2.
    const double beta = 0.7;
    const auto F = build_flat_cone(rugby_ball(beta, 4.0));
    for (const C2 x : {C2{cdouble(0.3, 0.1), cdouble(-0.5, 0.9)}, C2{cdouble(1.4, 0), cdouble(0.2, -0.2)}}) {
        const double expect =
            (std::pow(std::abs(x[0]), 2 * beta) + std::pow(std::abs(x[1]), 2 * beta)) / (beta * beta);
        CHECK(F.potential(x) == doctest::Approx(expect).epsilon(1e-12));
        const auto s = volume_density_fd(F, x);
        const double det = std::pow(std::abs(x[0]), 2 * beta - 2) * std::pow(std::abs(x[1]), 2 * beta - 2);
        CHECK(s.predicted == doctest::Approx(det).epsilon(1e-12));
        CHECK(s.relative_error < 1e-5);
    }
}

TEST_CASE("volume identity over a three-point base") {
    const auto F = build_flat_cone(schwarz_metric(normalized_schwarz_map("icosahedral")));
    CHECK(F.singular_locus().size() == 3);
    CHECK(*F.exact_cone_number() == Rational(1, 60));
    // Plain differences lose to the beta = 1/5 line at h = 1e-3; Richardson removes the h^2 term.
    for (const auto& x : sample_points(F, 20, 11)) CHECK(volume_density_fd(F, x, 1e-3, true).relative_error < 1e-4);
}

TEST_CASE("homogeneity and closedness") {
    const auto F = build_flat_cone(schwarz_metric(normalized_schwarz_map("tetrahedral")));
    const auto pts = sample_points(F, 10, 5);
    for (double lambda : {0.5, 2.0, std::exp(1.0)}) CHECK(scaling_check(F, lambda, pts) < 1e-10);
    CHECK(kahler_closedness_fd(F, pts[0]) < 1e-4);
}

TEST_CASE("cone angles") {
    const auto F = build_flat_cone(rugby_ball(0.6, 4.0));
    CHECK(line_cone_angle(F, {cdouble(0.6, 0.3), cdouble(1.0, -0.4)}) == doctest::Approx(2 * kPi * 0.6).epsilon(1e-4));
    // Across z = 0: transverse angle 2 pi beta.
    CHECK(transverse_cone_angle(F, {0.0, 1.0}, {1.0, 0.0}) == doctest::Approx(2 * kPi * 0.6).epsilon(2e-3));
}

TEST_CASE("Seifert pullback") {
    const auto base = build_flat_cone(schwarz_metric(normalized_schwarz_map("octahedral")));
    const auto F = seifert_flat_pullback(base, 2, 3);
    CHECK(F.cone_number() == doctest::Approx(6 * base.cone_number()));
    // r~^2(x) = r^2(z^3, w^2) / 6.
    const C2 x = {cdouble(0.7, 0.2), cdouble(-0.3, 0.6)};
    CHECK(F.potential(x) == doctest::Approx(base.potential({std::pow(x[0], 3), std::pow(x[1], 2)}) / 6).epsilon(1e-12));
    for (const auto& y : sample_points(F, 10, 2)) CHECK(volume_density_fd(F, y, 1e-3, true).relative_error < 1e-3);
    CHECK(scaling_check(F, 2.0, sample_points(F, 5, 3)) < 1e-10);
    CHECK_THROWS(seifert_flat_pullback(build_flat_cone(rugby_ball(0.7, 4.0)), 2, 3));
}

TEST_CASE("the flat cone restricts to the lift on r = 1") {
    const auto g = schwarz_metric(normalized_schwarz_map("tetrahedral"));
    const auto F = build_flat_cone(g);
    const auto L = hopf_lift(g);
    for (const auto& p : sample_sphere_points(g.atlas(), 5, 8, 0.1))
        CHECK(lift_consistency(F, L, p, 0.4, cdouble(0.3, -0.7), 0.5) < 1e-4);
}
