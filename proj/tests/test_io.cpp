#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>

#include "conekit/io.hpp"
#include "conekit/report.hpp"

using namespace conekit;

namespace {
// Unused grid nodes hold NaN.
bool same_values(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!(a[i] == b[i] || (std::isnan(a[i]) && std::isnan(b[i])))) return false;
    return true;
}
}  // namespace

TEST_CASE("doubles survive the text round trip") {
    for (double x : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 0.0})
        CHECK(parse_double(json(format_double(x))) == x);
    CHECK(parse_double(json(0.25)) == 0.25);
    CHECK_THROWS(parse_double(json("abc")));
}

TEST_CASE("configuration JSON") {
    const json j = json::parse(R"({"points": [0, [1, 0.5], "inf"], "angles": ["1/2", "2/3", 0.75]})");
    const auto c = config_from_json(j);
    CHECK(c.size() == 3);
    CHECK(c.points()[1].value() == cdouble(1, 0.5));
    CHECK(c.points()[2].is_infinity());
    CHECK(c.angles()[1].exact == Rational(2, 3));
    CHECK_FALSE(c.angles()[2].exact.has_value());
    const auto back = config_from_json(config_to_json(c));
    CHECK(back.points() == c.points());
    CHECK(back.betas() == c.betas());
    CHECK_THROWS_AS(config_from_json(json::parse(R"({"points": [0, 1], "angles": ["1/2"]})")),
                    std::invalid_argument);
    CHECK_THROWS_AS(config_from_json(json::parse(R"({"points": [0, 1, "inf"], "angles": ["1/2", "1/2", "3/2"]})")),
                    std::invalid_argument);
}

TEST_CASE("grid solution round trip") {
    SolverOptions opt;
    opt.grid = 65;
    const ConeConfig cfg({0.0, MarkedPoint::infinity()}, {Angle(3, 5), Angle(3, 5)});
    const auto g = solve_liouville_grid(cfg, 4.0, opt);
    const auto h = grid_from_json(json::parse(grid_to_json(g).dump()));
    CHECK(h.kappa == 4.0);
    CHECK(h.report.converged == g.report.converged);
    REQUIRE(h.patches.size() == g.patches.size());
    CHECK(same_values(h.charts[0].u, g.charts[0].u));
    CHECK(same_values(h.charts[1].u, g.charts[1].u));
    CHECK(h.charts[1].kind == g.charts[1].kind);
    CHECK(h.patches[0].u == g.patches[0].u);
    for (const cdouble z : {cdouble(0.3, 0.2), cdouble(-0.8, 0.5), cdouble(0.01, 0)}) {
        const auto p = SamplePoint::at(Chart::xi, z);
        CHECK(h.regular_part(p) == g.regular_part(p));
    }
}

TEST_CASE("files") {
    const auto path = (std::filesystem::temp_directory_path() / "conekit_io_test.json").string();
    write_text_file(path, R"({"a": 1})");
    CHECK(read_json_file(path)["a"] == 1);
    std::remove(path.c_str());
    CHECK_THROWS_AS(read_json_file(path), IoError);
    CHECK_THROWS_AS(write_text_file("/nonexistent-dir/x.json", "{}"), IoError);
}

TEST_CASE("report JSON") {
    VerificationReport rep("test", {{"x", 1}}, 0x5EED);
    rep.check_abs("a", 1.0, 1.0 + 1e-9, 1e-6, Provenance::paper);
    rep.check_rel("b", 2.0, 2.1, 1e-3, Provenance::derived);
    const json j = rep.to_json();
    CHECK(j["schema"] == "conekit/1");
    CHECK(j["status"] == "fail");
    CHECK(j["checks"][0]["pass"] == true);
    CHECK(j["checks"][1]["pass"] == false);
    CHECK(j["checks"][0]["provenance"] == "paper");
    CHECK(j["environment"]["seed"] == "0x5EED");
    CHECK(parse_double(j["checks"][0]["computed"]) == 1.0 + 1e-9);
}
