#include <doctest.h>

#include "conekit/checks.hpp"
#include "conekit/lift.hpp"
#include "conekit/reflection.hpp"

using namespace conekit;

namespace {
constexpr double kPi = std::numbers::pi;
double norm2(const std::array<cdouble, 2>& z) { return std::norm(z[0]) + std::norm(z[1]); }
}  // namespace

TEST_CASE("connection curvature is the base area form") {
    for (const auto& g : {rugby_ball(0.6, 4.0), schwarz_metric(normalized_schwarz_map("octahedral"))}) {
        const auto a = build_connection(g);
        CAPTURE(g.name());
        for (const auto& p : sample_sphere_points(g.atlas(), 20, 3, 0.05)) {
            const double e = a.expected_curvature_density(p);
            // Nested differences of step 1e-3, at least 0.05 from a cone point.
            CHECK(std::abs(a.curvature_density(p) / e - 1) < 1e-3);
        }
    }
    CHECK_THROWS(build_connection(rugby_ball(0.6, 1.0)));
}

TEST_CASE("rugby connection in closed form") {
    // u = log(beta) - log(1 + r^{2 beta}), so alpha_0 = (1/2c)(u_y dx - u_x dy) = (r^{2 beta} / (1 + r^{2 beta})) dtheta.
    const double beta = 0.6;
    const auto a = build_connection(rugby_ball(beta, 4.0));
    const cdouble z(0.3, 0.4);
    const double r = std::abs(z), s = std::pow(r, 2 * beta) / (1 + std::pow(r, 2 * beta));
    const auto comp = a.at(SamplePoint::at(Chart::xi, z));
    // dtheta = (x dy - y dx) / r^2.
    CHECK(comp[0] == doctest::Approx(-s * z.imag() / (r * r)).epsilon(1e-9));
    CHECK(comp[1] == doctest::Approx(s * z.real() / (r * r)).epsilon(1e-9));
    CHECK(a.loop_integral(Chart::xi, 0.0, r) == doctest::Approx(2 * kPi * s).epsilon(1e-9));
}

TEST_CASE("holonomy shrinks around cone points") {
    const auto a = build_connection(schwarz_metric(normalized_schwarz_map("octahedral")));
    for (const auto& h : holonomy_table(a)) {
        CHECK(h.monotone);
        // A cone angle of 2 pi beta gives decay like r^{2 beta}.
        const double beta = a.base().atlas().beta(h.puncture);
        const double ratio = std::abs(h.rows[3].integral / h.rows[2].integral);
        CHECK(ratio == doctest::Approx(std::pow(10.0, -2 * beta)).epsilon(0.02));
    }
}

TEST_CASE("Hopf lift") {
    const auto g = rugby_ball(0.5, 4.0);
    const auto L = hopf_lift(g);
    const double c = g.cone_number();
    for (const auto& p : sample_sphere_points(g.atlas(), 10, 9, 0.05)) {
        CHECK(L.fiber_length(p) == doctest::Approx(2 * kPi * c).epsilon(1e-10));
        CHECK(submersion_residual(L, p, cdouble(0.2, 0.9)) < 1e-9);
        const auto x = sphere_point(p, 0.7);
        CHECK(norm2(x) == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(L.orbit_length(x) == doctest::Approx(2 * kPi * c).epsilon(1e-8));
    }
    const auto v = link_volume(L);
    CHECK(v.expected == doctest::Approx(2 * kPi * kPi * c * c));
    CHECK(std::abs(v.volume / v.expected - 1) < 1e-4);
}

TEST_CASE("Seifert map") {
    const std::array<cdouble, 2> z = {cdouble(0.6, 0.0), cdouble(0.0, 0.8)};
    const auto w = seifert_map(2, 3, z);
    CHECK(norm2(w) == doctest::Approx(1.0).epsilon(1e-14));
    // (e^{2it} z1, e^{3it} z2) maps to e^{6it} Psi(z).
    const double t = 0.37;
    const auto wt = seifert_map(2, 3, {z[0] * std::polar(1.0, 2 * t), z[1] * std::polar(1.0, 3 * t)});
    CHECK(std::abs(wt[0] - w[0] * std::polar(1.0, 6 * t)) < 1e-14);
    CHECK(std::abs(wt[1] - w[1] * std::polar(1.0, 6 * t)) < 1e-14);
    CHECK_THROWS(seifert_pullback(hopf_lift(rugby_ball(0.5, 4.0)), 2, 4));
}
