#include <CLI11.hpp>

#include <iostream>
#include <memory>
#include <optional>

#include "conekit/checks.hpp"
#include "conekit/flatcone.hpp"
#include "conekit/io.hpp"
#include "conekit/liouville.hpp"
#include "conekit/suite.hpp"

using namespace conekit;

namespace {

struct Globals {
    std::string config;
    std::string out;
    std::string seed = "0x5EED";
    double tol = 0.0;  // 0: use the check's default
    bool json = false;

    std::uint64_t seed_value() const {
        std::size_t used = 0;
        const auto v = std::stoull(seed, &used, 0);
        if (used != seed.size()) throw std::invalid_argument("bad --seed " + seed);
        return v;
    }
};

// Where a curvature-4 base metric comes from.
struct BaseSource {
    std::string sol;
    double rugby = 0.0;
    std::string schwarz;
};

void add_base_options(CLI::App* cmd, BaseSource& b) {
    cmd->add_option("--sol", b.sol, "grid solution JSON (curvature 4)");
    cmd->add_option("--rugby", b.rugby, "closed-form rugby ball with this beta");
    cmd->add_option("--schwarz", b.schwarz, "closed-form quotient metric: tetrahedral, octahedral, icosahedral");
}

ConformalMetric load_grid(const std::string& path) {
    auto g = std::make_shared<GridSolution>(grid_from_json(read_json_file(path)));
    return ConformalMetric::from_grid(g);
}

ConformalMetric base_metric(const BaseSource& b, const Globals& g) {
    if (!b.sol.empty()) return load_grid(b.sol);
    if (b.rugby > 0) return rugby_ball(b.rugby, 4.0);
    if (!b.schwarz.empty()) return schwarz_metric(normalized_schwarz_map(b.schwarz));
    if (!g.config.empty()) return solve_liouville(config_from_json(read_json_file(g.config)), 4.0);
    throw std::invalid_argument("no base metric: give --sol, --rugby, --schwarz or --config");
}

int emit(const VerificationReport& rep, const Globals& g, const std::string& report_path = {}) {
    const std::string path = report_path.empty() ? g.out : report_path;
    if (!path.empty()) write_text_file(path, rep.to_json().dump(2) + "\n");
    if (g.json) std::cout << rep.to_json().dump(2) << "\n";
    else std::cout << rep.to_text();
    return rep.pass() ? 0 : 1;
}

int emit_json(const json& j, const Globals& g) {
    if (!g.out.empty()) write_text_file(g.out, j.dump(2) + "\n");
    std::cout << j.dump(2) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"conekit: spherical cone metrics, their lifts and flat cones, with checks"};
    app.require_subcommand(1);
    Globals G;
    app.add_option("--config", G.config, "cone configuration JSON");
    app.add_option("--out", G.out, "output file");
    app.add_option("--seed", G.seed, "seed for sample points (hex)");
    app.add_option("--tol", G.tol, "override the check tolerance");
    app.add_flag("--json", G.json, "print the JSON report");
    app.fallthrough();

    // spherical
    auto* sph = app.add_subcommand("spherical", "spherical metrics with cone points");
    sph->require_subcommand(1);
    double kappa = 1.0;
    auto* sph_solve = sph->add_subcommand("solve", "solve the Liouville equation on the two-chart grid");
    sph_solve->add_option("--kappa", kappa, "curvature");
    SolverOptions solver;
    sph_solve->add_option("--grid", solver.grid, "nodes per side of each chart box");
    std::string sol_path;
    double check_rugby = 0.0;
    auto* sph_check = sph->add_subcommand("check", "curvature, area and Gauss-Bonnet checks");
    sph_check->add_option("--sol", sol_path, "grid solution JSON");
    sph_check->add_option("--rugby", check_rugby, "check the closed-form rugby ball instead");
    sph_check->add_option("--kappa", kappa, "curvature of the rugby ball");

    // lift
    auto* lift = app.add_subcommand("lift", "Hopf and Seifert lifts to S^3");
    lift->require_subcommand(1);
    BaseSource lift_base;
    std::string report_path;
    auto* lift_hopf = lift->add_subcommand("hopf", "volume, connection curvature and holonomy");
    add_base_options(lift_hopf, lift_base);
    lift_hopf->add_option("--report", report_path, "report JSON");
    int p = 0, q = 0;
    std::string beta_text;
    auto* lift_seif = lift->add_subcommand("seifert", "Seifert (p, q) pullback");
    add_base_options(lift_seif, lift_base);
    lift_seif->add_option("--p", p, "p")->required();
    lift_seif->add_option("--q", q, "q")->required();
    lift_seif->add_option("--beta", beta_text, "angle at 1 of the base (1/q at 0, beta at 1, 1/p at infinity)");
    lift_seif->add_option("--report", report_path, "report JSON");

    // flatcone
    auto* flat = app.add_subcommand("flatcone", "flat Kahler cone metrics on C^2");
    flat->require_subcommand(1);
    BaseSource flat_base;
    std::string csv_path;
    auto* flat_build = flat->add_subcommand("build", "describe the flat cone over a base");
    add_base_options(flat_build, flat_base);
    auto* flat_check = flat->add_subcommand("check", "volume identity, scaling, closedness, cone angles");
    add_base_options(flat_check, flat_base);
    flat_check->add_option("--csv", csv_path, "sample-point CSV");
    flat_check->add_option("--samples", solver.grid, "unused")->group("");
    int samples = 50;
    flat_check->add_option("--points", samples, "number of sample points");
    auto* flat_pull = flat->add_subcommand("pullback", "Seifert pullback (z, w) -> (z^q, w^p)");
    add_base_options(flat_pull, flat_base);
    flat_pull->add_option("--p", p, "p")->required();
    flat_pull->add_option("--q", q, "q")->required();
    flat_pull->add_option("--csv", csv_path, "sample-point CSV");

    // reflection
    auto* refl = app.add_subcommand("reflection", "reflection groups and Schwarz maps");
    refl->require_subcommand(1);
    std::string family;
    int m = 0, rp = 0;
    auto* refl_cat = refl->add_subcommand("catalog", "group data");
    refl_cat->add_option("--family", family, "G(m,p,2), tetrahedral, ..., C_m, D_2m, T, O, I")->required();
    refl_cat->add_option("--m", m, "m");
    refl_cat->add_option("--p", rp, "p");
    auto* refl_ver = refl->add_subcommand("verify", "degrees, pullback identities, invariants");
    refl_ver->add_option("--family", family, "G222, G(2m,2,2), G(m,m,2), tetrahedral, octahedral, icosahedral")
        ->required();
    refl_ver->add_option("--m", m, "m");

    // germ
    auto* germ = app.add_subcommand("germ", "plane curve singularities");
    germ->require_subcommand(1);
    std::string poly;
    auto* germ_an = germ->add_subcommand("analyze", "Newton polygon and singularity exponent");
    germ_an->add_option("--poly", poly, "polynomial in z, w (see docs/grammar.md)")->required();

    // energy
    auto* energy = app.add_subcommand("energy", "energy bookkeeping");
    energy->require_subcommand(1);
    auto* en_led = energy->add_subcommand("ledger", "arrangement energy ledger");
    en_led->add_option("--family", family, "A0, A3, hesse, extended-hesse, icosahedral, G168, A6")->required();
    en_led->add_option("--m", m, "m for A0 / A3");
    std::string bg_case;
    auto* en_bg = energy->add_subcommand("bishop-gromov", "Bishop-Gromov volume obstruction");
    en_bg->add_option("--case", bg_case, "cuspidal-cubic")->required();
    en_bg->add_option("--beta", beta_text, "beta as p/q")->required();

    // suite
    bool quick = false;
    auto* suite = app.add_subcommand("suite", "acceptance battery");
    suite->add_flag("--quick", quick, "skip the grid-solver parts");

    for (auto* s : {sph, lift, flat, refl, germ, energy}) {
        s->fallthrough();
        for (auto* c : s->get_subcommands({})) c->fallthrough();
    }
    suite->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        const auto seed = G.seed_value();
        if (sph_solve->parsed()) {
            if (G.config.empty()) throw std::invalid_argument("spherical solve needs --config");
            if (G.out.empty()) throw std::invalid_argument("spherical solve needs --out");
            const auto cfg = config_from_json(read_json_file(G.config));
            auto grid = std::make_shared<GridSolution>(solve_liouville_grid(cfg, kappa, solver));
            write_text_file(G.out, grid_to_json(*grid).dump() + "\n");
            auto rep = check_spherical(ConformalMetric::from_grid(grid), seed, 100, G.tol > 0 ? G.tol : 1e-4);
            Globals g2 = G;
            g2.out.clear();
            return emit(rep, g2);
        }
        if (sph_check->parsed()) {
            ConformalMetric g;
            if (!sol_path.empty()) g = load_grid(sol_path);
            else if (check_rugby > 0) g = rugby_ball(check_rugby, kappa);
            else throw std::invalid_argument("spherical check needs --sol or --rugby");
            return emit(check_spherical(g, seed, 100, G.tol > 0 ? G.tol : 1e-4), G);
        }
        if (lift_hopf->parsed()) return emit(check_lift(base_metric(lift_base, G), seed), G, report_path);
        if (lift_seif->parsed()) {
            ConformalMetric g;
            if (!lift_base.sol.empty() || lift_base.rugby > 0 || !lift_base.schwarz.empty() || !G.config.empty()) {
                g = base_metric(lift_base, G);
            } else {
                // Default base: 1/q at 0, beta at 1, 1/p at infinity, beta in the middle of the flat-cone window.
                const auto w = flat_cone_angle_window(p, q);
                const Rational beta = beta_text.empty() ? (w.lo + w.hi) / Rational(2) : Rational::parse(beta_text);
                g = solve_liouville(ConeConfig({MarkedPoint(0.0), MarkedPoint(1.0), MarkedPoint::infinity()},
                                               {Angle(Rational(1, q)), Angle(beta), Angle(Rational(1, p))}),
                                    4.0);
            }
            return emit(check_seifert(g, p, q), G, report_path);
        }
        if (flat_build->parsed()) {
            const auto F = build_flat_cone(base_metric(flat_base, G));
            json locus = json::array();
            for (const auto& s : F.singular_locus()) {
                json c{{"component", s.description}, {"beta", format_double(s.beta)}};
                if (s.slope) c["slope"] = {format_double(s.slope->real()), format_double(s.slope->imag())};
                locus.push_back(c);
            }
            json samples_json = json::array();
            for (const auto& x : sample_points(F, 5, seed))
                samples_json.push_back({{"z", {format_double(x[0].real()), format_double(x[0].imag())}},
                                        {"w", {format_double(x[1].real()), format_double(x[1].imag())}},
                                        {"r2", format_double(F.potential(x))}});
            const auto ec = F.exact_cone_number();
            return emit_json({{"schema", "conekit/1"},
                              {"kind", "flat-cone"},
                              {"config", config_to_json(F.base().config())},
                              {"cone_number", ec ? json(ec->str()) : json(format_double(F.cone_number()))},
                              {"potential", "r^2 = (1/c) |w|^{2c} exp(-u(z/w))"},
                              {"singular_locus", locus},
                              {"samples", samples_json}},
                             G);
        }
        if (flat_check->parsed() || flat_pull->parsed()) {
            auto F = build_flat_cone(base_metric(flat_base, G));
            if (flat_pull->parsed()) F = seifert_flat_pullback(F, p, q);
            if (!csv_path.empty()) write_text_file(csv_path, volume_samples_csv(F, seed, samples));
            return emit(check_flat_cone(F, seed, samples, G.tol > 0 ? G.tol : 1e-3), G);
        }
        if (refl_cat->parsed()) {
            auto spec = family.rfind("G(", 0) == 0 && m > 0 ? catalog("G(m,p,2)", m, rp) : catalog(family, m, rp);
            return emit_json(catalog_to_json(spec), G);
        }
        if (refl_ver->parsed()) return emit(check_reflection(family, m, seed), G);
        if (germ_an->parsed()) return emit(germ_report(poly), G);
        if (en_led->parsed()) return emit(energy_ledger_report(family, m), G);
        if (en_bg->parsed()) return emit(bishop_gromov_report(bg_case, Rational::parse(beta_text)), G);
        if (suite->parsed()) {
            SuiteOptions opt;
            opt.quick = quick;
            opt.seed = seed;
            std::vector<CriterionResult> results;
            bool all = true;
            for (int id = 1; id <= 9; ++id) {
                results.push_back(run_criterion(id, opt));
                all = all && (results.back().skipped || results.back().pass());
                if (!G.json) std::cout << criterion_line(results.back()) << std::endl;
            }
            const json j = suite_to_json(results, opt);
            if (!G.out.empty()) write_text_file(G.out, j.dump(2) + "\n");
            if (G.json) std::cout << j.dump(2) << "\n";
            return all ? 0 : 1;
        }
    } catch (const IoError& e) {
        std::cerr << "conekit: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "conekit: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "conekit: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
