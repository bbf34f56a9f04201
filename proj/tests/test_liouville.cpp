#include <doctest.h>

#include "conekit/checks.hpp"
#include "conekit/liouville.hpp"
#include "conekit/reflection.hpp"

using namespace conekit;

TEST_CASE("d = 2 solve matches the rugby ball") {
    const ConeConfig cfg({0.0, MarkedPoint::infinity()}, {Angle(1, 2), Angle(1, 2)});
    SolverOptions opt;
    opt.grid = 129;
    const auto g = std::make_shared<GridSolution>(solve_liouville_grid(cfg, 1.0, opt));
    REQUIRE(g->report.converged);
    CHECK(rugby_sup_error(ConformalMetric::from_grid(g)) < 1e-6);
}

TEST_CASE("d = 3 solve matches the tetrahedral closed form") {
    const ConeConfig cfg({0.0, 1.0, MarkedPoint::infinity()}, {Angle(1, 3), Angle(1, 3), Angle(1, 2)});
    const auto grid = solve_liouville(cfg, 4.0);
    REQUIRE(grid.grid().report.converged);
    const auto exact = schwarz_metric(normalized_schwarz_map("tetrahedral"), cfg);
    double worst = 0;
    for (const auto& n : grid.grid().nodes())
        if (exact.atlas().distance_to_punctures(n.p) > 1e-6 || n.p.puncture >= 0)
            worst = std::max(worst, std::abs(n.u - exact.regular_part(n.p)));
    CHECK(worst < 1e-6);
    const auto rep = check_spherical(grid);
    CHECK(rep.pass());
}

TEST_CASE("inadmissible configurations are refused") {
    const ConeConfig bad({0.0, 1.0, MarkedPoint::infinity()}, {Angle(1, 4), Angle(1, 4), Angle(1, 4)});
    CHECK_THROWS_AS(solve_liouville_grid(bad, 1.0), std::invalid_argument);
}
