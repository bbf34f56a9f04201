#include <doctest.h>

#include <random>

#include "conekit/checks.hpp"
#include "conekit/reflection.hpp"
#include "conekit/spherical.hpp"

using namespace conekit;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("rugby ball closed form") {
    // 4 beta^2 |z|^{2 beta - 2} / (kappa (1 + |z|^{2 beta})^2), written out.
    const double beta = 0.7, kappa = 2.0, r = 0.37;
    const double by_hand = 4 * beta * beta * std::pow(r, 2 * beta - 2) /
                           (kappa * std::pow(1 + std::pow(r, 2 * beta), 2));
    CHECK(rugby_ball_factor(beta, r, kappa) == doctest::Approx(by_hand).epsilon(1e-14));
    const auto g = rugby_ball(beta, kappa);
    CHECK(g.conformal_factor(Chart::xi, cdouble(0, r)) == doctest::Approx(by_hand).epsilon(1e-13));
    CHECK(std::exp(2 * rugby_ball_regular_part(beta, r, kappa)) * std::pow(r, 2 * beta - 2) ==
          doctest::Approx(by_hand).epsilon(1e-13));
}

TEST_CASE("chart transition of the conformal factor") {
    // phi_xi(xi) = phi_eta(1 / xi) - 2 log |xi|.
    const auto g = schwarz_metric(normalized_schwarz_map("octahedral"));
    for (const cdouble xi : {cdouble(0.3, 0.4), cdouble(-1.2, 0.5), cdouble(0.9, -0.9)})
        CHECK(g.log_factor(Chart::xi, xi) ==
              doctest::Approx(g.log_factor(Chart::eta, 1.0 / xi) - 2 * std::log(std::abs(xi))).epsilon(1e-10));
    const auto& A = g.atlas();
    CHECK(A.owner(0) == Chart::xi);
    const auto p = SamplePoint::at(Chart::xi, cdouble(0.5, 0.5));
    const auto q = A.to_chart(p, Chart::eta);
    REQUIRE(q.has_value());
    CHECK(std::abs(q->z - 1.0 / cdouble(0.5, 0.5)) < 1e-15);
}

TEST_CASE("curvature is constant") {
    std::vector<ConformalMetric> metrics = {rugby_ball(0.4, 1.0), rugby_ball(Rational(3, 4), 4.0),
                                            schwarz_metric(normalized_schwarz_map("tetrahedral")),
                                            schwarz_metric(normalized_schwarz_map("icosahedral")), base_metric_G222()};
    for (const auto& g : metrics) {
        CAPTURE(g.name());
        double worst = 0;
        for (const auto& p : sample_sphere_points(g.atlas(), 40, 0x5EED, 0.05))
            worst = std::max(worst, std::abs(gaussian_curvature_fd(g, p).K / g.kappa() - 1));
        CHECK(worst < 1e-4);
    }
}

TEST_CASE("area and Gauss-Bonnet") {
    for (const auto& g : {rugby_ball(0.3, 1.0), schwarz_metric(normalized_schwarz_map("octahedral"))}) {
        CAPTURE(g.name());
        const auto a = total_area(g);
        CHECK(a.expected == doctest::Approx(4 * kPi / g.kappa() * g.cone_number()));
        CHECK(std::abs(a.area / a.expected - 1) < 1e-4);
        const auto gb = gauss_bonnet(g);
        CHECK(std::abs(gb.value / gb.expected - 1) < 1e-3);
    }
}

TEST_CASE("scaling the metric divides the curvature") {
    const auto g = rugby_ball(0.6, 1.0).scaled(3.0);
    CHECK(g.kappa() == doctest::Approx(1.0 / 9.0));
    CHECK(gaussian_curvature_fd(g, cdouble(0.4, 0.3)).K == doctest::Approx(1.0 / 9.0).epsilon(1e-5));
}

TEST_CASE("sample points avoid cone points and are seeded") {
    const auto g = schwarz_metric(normalized_schwarz_map("tetrahedral"));
    const auto a = sample_sphere_points(g.atlas(), 100, 42, 0.05);
    const auto b = sample_sphere_points(g.atlas(), 100, 42, 0.05);
    REQUIRE(a.size() == 100);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].z == b[i].z);
        CHECK(std::abs(a[i].z) <= 1.0 + 1e-12);
        CHECK(g.atlas().distance_to_punctures(a[i]) >= 0.05);
    }
    CHECK_THROWS_AS(gaussian_curvature_fd(g, cdouble(1e-3, 0)), std::domain_error);
}
