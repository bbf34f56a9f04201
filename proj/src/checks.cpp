#include "conekit/checks.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "conekit/liouville.hpp"

namespace conekit {

namespace {

constexpr double kPi = std::numbers::pi;

json rationals(const std::vector<Rational>& v) {
    json a = json::array();
    for (const auto& r : v) a.push_back(r.str());
    return a;
}

json profile_json(const std::map<int, int>& p) {
    json j = json::object();
    for (const auto& [k, n] : p) j[std::to_string(k)] = n;
    return j;
}

}  // namespace

std::vector<SamplePoint> sample_sphere_points(const ChartAtlas& atlas, int count, std::uint64_t seed,
                                              double min_distance) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> N(0.0, 1.0);
    std::vector<SamplePoint> out;
    while (static_cast<int>(out.size()) < count) {
        const double x = N(rng), y = N(rng), z = N(rng);
        const double r = std::sqrt(x * x + y * y + z * z);
        if (r < 1e-12) continue;
        // Stereographic projection from the north pole; eta = 1 / xi from the south pole.
        const double X = x / r, Y = y / r, Z = z / r;
        SamplePoint p = Z <= 0 ? SamplePoint::at(Chart::xi, cdouble(X, Y) / (1 - Z))
                               : SamplePoint::at(Chart::eta, cdouble(X, -Y) / (1 + Z));
        if (atlas.distance_to_punctures(p) < min_distance) continue;
        out.push_back(p);
    }
    return out;
}

VerificationReport check_spherical(const ConformalMetric& g, std::uint64_t seed, int samples, double tol) {
    VerificationReport rep("spherical check", {{"config", config_to_json(g.config())}, {"kappa", format_double(g.kappa())}},
                           seed);
    if (g.is_grid()) {
        const auto& r = g.grid().report;
        rep.check_true("solver converged", r.converged, Provenance::derived, r.message);
        rep.add_data("solver residual", format_double(r.residual));
    }
    double worst = 0.0;
    for (const auto& p : sample_sphere_points(g.atlas(), samples, seed, 0.05)) {
        const double K = gaussian_curvature_fd(g, p).K;
        worst = std::max(worst, std::abs(K / g.kappa() - 1.0));
    }
    rep.check_below("max |K / kappa - 1| over " + std::to_string(samples) + " points", tol, worst, Provenance::derived);
    const auto area = total_area(g);
    rep.check_rel("area = (4 pi / kappa) c", area.expected, area.area, 1e-3, Provenance::paper);
    rep.add_data("area error estimate", format_double(area.error_estimate));
    const auto gb = gauss_bonnet(g);
    rep.check_rel("Gauss-Bonnet (1/2pi) int K dV = 2c", gb.expected, gb.value, 1e-3, Provenance::paper);
    return rep;
}

double rugby_sup_error(const ConformalMetric& gm) {
    const auto& cfg = gm.config();
    if (cfg.size() != 2) throw std::invalid_argument("rugby comparison needs d = 2");
    const double beta = cfg.betas()[0];
    double worst = 0.0;
    for (const auto& n : gm.grid().nodes()) {
        double r = std::abs(n.p.z);
        if (n.p.puncture >= 0) r = std::abs(n.p.delta);
        const double exact = rugby_ball_regular_part(beta, r, gm.kappa());
        worst = std::max(worst, std::abs(n.u - exact));
    }
    return worst;
}

VerificationReport check_lift(const ConformalMetric& g, std::uint64_t seed) {
    VerificationReport rep("lift hopf", {{"config", config_to_json(g.config())}}, seed);
    const auto a = build_connection(g);
    const auto link = hopf_lift(g, a);
    const double c = g.cone_number();
    const auto vol = link_volume(link);
    rep.check_rel("Hopf volume = 2 pi^2 c^2", vol.expected, vol.volume, 1e-3, Provenance::paper);
    const auto tc = total_curvature(a);
    rep.check_abs("(1/2pi) int d alpha = 1", 1.0, tc.value, 1e-3, Provenance::paper);
    json table = json::array();
    for (const auto& h : holonomy_table(a)) {
        json rows = json::array();
        for (const auto& r : h.rows)
            rows.push_back({{"radius", format_double(r.radius)}, {"integral", format_double(r.integral)}});
        table.push_back({{"puncture", h.puncture}, {"chart", to_string(h.chart)}, {"rows", rows}});
        rep.check_true("holonomy at cone point " + std::to_string(h.puncture) + " decreases to < 1e-2", h.pass,
                       Provenance::derived, rows);
    }
    rep.add_data("holonomy", table);
    double fiber = 0.0, subm = 0.0;
    for (const auto& p : sample_sphere_points(g.atlas(), 20, seed, 0.05)) {
        fiber = std::max(fiber, std::abs(link.fiber_length(p) / (2 * kPi * c) - 1));
        subm = std::max(subm, submersion_residual(link, p, cdouble(0.6, -0.8)));
    }
    rep.check_below("fiber length 2 pi c (max relative deviation)", 1e-9, fiber, Provenance::paper);
    rep.check_below("horizontal lift is isometric (max relative deviation)", 1e-9, subm, Provenance::derived);
    return rep;
}

VerificationReport check_seifert(const ConformalMetric& g, int p, int q) {
    VerificationReport rep("lift seifert", {{"config", config_to_json(g.config())}, {"p", p}, {"q", q}});
    const auto link = seifert_pullback(hopf_lift(g), p, q);
    const auto vol = link_volume(link);
    rep.check_rel("Seifert volume = pq 2 pi^2 c^2", vol.expected, vol.volume, 1e-3, Provenance::derived);
    const auto pts = sample_sphere_points(g.atlas(), 5, kDefaultSeed, 0.05);
    double worst = 0.0;
    for (const auto& pt : pts) worst = std::max(worst, std::abs(link.fiber_length(pt) / (2 * kPi * link.fiber_scale()) - 1));
    rep.check_below("orbit length 2 pi pq c (max relative deviation)", 1e-6, worst, Provenance::derived);
    if (auto c = g.config().exact_cone_number()) rep.add_data("c~", (*c * Rational(p * q)).str());
    return rep;
}

namespace {

// A point on the component and a unit normal direction to it.
std::pair<C2, C2> component_probe(const FlatConeMetric& F, const SingularComponent& s) {
    const int p = F.p(), q = F.q();
    if (!s.slope) return {{1.0, 0.0}, {0.0, 1.0}};
    if (*s.slope == 0.0) return {{0.0, 1.0}, {1.0, 0.0}};
    const cdouble z = std::pow(*s.slope, 1.0 / q);
    const C2 x{z, 1.0};
    // Gradient of z^q - a w^p; its conjugate is normal to the curve.
    cdouble gz = double(q) * std::pow(z, q - 1), gw = -double(p) * *s.slope;
    const double n = std::sqrt(std::norm(gz) + std::norm(gw));
    return {x, {std::conj(gz) / n, std::conj(gw) / n}};
}

}  // namespace

VerificationReport check_flat_cone(const FlatConeMetric& F, std::uint64_t seed, int samples, double tol) {
    json inputs{{"config", config_to_json(F.base().config())}, {"p", F.p()}, {"q", F.q()}};
    VerificationReport rep(F.is_seifert() ? "flatcone pullback" : "flatcone check", inputs, seed);
    const bool grid = F.base().is_grid();
    // Small angles make the plain h^2 error large (icosahedral base, beta = 1/5); closed forms are cheap enough
    // for Richardson.
    const bool richardson = F.is_seifert() || !grid;
    const auto pts = sample_points(F, samples, seed);
    double worst = 0.0;
    for (const auto& x : pts) worst = std::max(worst, volume_density_fd(F, x, 1e-3, richardson).relative_error);
    rep.check_below("volume identity det = prod |l_j|^{2 beta_j - 2} (max relative error)", tol, worst,
                    Provenance::paper);
    const double stol = grid ? 1e-4 : 1e-6;
    for (double lambda : {0.5, 2.0, std::numbers::e})
        rep.check_below("scaling r^2(m_lambda x) = lambda^{2c} r^2, lambda = " + format_double(lambda), stol,
                        scaling_check(F, lambda, pts), Provenance::paper);
    C2 x0{1.0, 2.0};
    if (F.singular_distance(x0) < 0.05) x0 = pts.front();
    rep.check_below("d omega = 0 (mixed partials, relative)", grid ? 1e-3 : 1e-4, kahler_closedness_fd(F, x0),
                    Provenance::derived);
    const double c = F.cone_number();
    if (!F.is_seifert()) {
        rep.check_rel("complex line through 0 is a cone of angle 2 pi c", 2 * kPi * c,
                      line_cone_angle(F, {cdouble(0.3, 0.1), cdouble(0.7, -0.2)}), 1e-4, Provenance::paper);
        const auto link = hopf_lift(F.base());
        double lw = 0.0;
        for (const auto& p : sample_sphere_points(F.base().atlas(), 5, seed, 0.05))
            lw = std::max(lw, lift_consistency(F, link, p, 0.7, cdouble(0.2, -0.5), 0.3));
        rep.check_below("g_F = dr^2 + r^2 g_bar on r = 1 (max relative deviation)", 1e-4, lw, Provenance::paper);
    }
    for (const auto& s : F.singular_locus()) {
        const auto [x, n] = component_probe(F, s);
        rep.check_rel("transverse cone angle along " + s.description +
                          (s.slope && *s.slope != 0.0 ? " (a = " + format_double(s.slope->real()) + ")" : ""),
                      2 * kPi * s.beta, transverse_cone_angle(F, x, n), 2e-3, Provenance::paper);
    }
    if (auto ec = F.exact_cone_number()) rep.add_data("cone number", ec->str());
    else rep.add_data("cone number", format_double(c));
    return rep;
}

std::string volume_samples_csv(const FlatConeMetric& F, std::uint64_t seed, int samples) {
    std::ostringstream os;
    os << "z_re,z_im,w_re,w_im,density,predicted,relative_error\n";
    for (const auto& x : sample_points(F, samples, seed)) {
        const auto v = volume_density_fd(F, x, 1e-3, F.is_seifert() || !F.base().is_grid());
        os << format_double(x[0].real()) << ',' << format_double(x[0].imag()) << ',' << format_double(x[1].real())
           << ',' << format_double(x[1].imag()) << ',' << format_double(v.density) << ','
           << format_double(v.predicted) << ',' << format_double(v.relative_error) << '\n';
    }
    return os.str();
}

json catalog_to_json(const GroupSpec& g) {
    json lines = json::array();
    for (const auto& l : g.lines) lines.push_back({{"lines", l.description}, {"count", l.count}, {"beta", l.beta.str()}});
    json j{{"family", g.family},
           {"m", g.m},
           {"p", g.p},
           {"order", g.order},
           {"center_order", g.center_order},
           {"invariant_degrees", g.invariant_degrees},
           {"triangle_angles_over_pi", rationals(g.triangle)},
           {"cone_angles", rationals(g.cone_angles)},
           {"singular_lines", lines}};
    j["schwarz_degree"] = g.schwarz_degree ? json(*g.schwarz_degree) : json(nullptr);
    if (!g.quotient_curve.empty()) j["quotient_curve"] = g.quotient_curve;
    if (g.quotient_curve_beta) j["quotient_curve_beta"] = g.quotient_curve_beta->str();
    if (!g.du_val_type.empty()) {
        j["du_val_type"] = g.du_val_type;
        j["du_val_surface"] = g.du_val_surface;
        j["branch_curve"] = g.branch_curve;
    }
    return j;
}

namespace {

void check_schwarz(VerificationReport& rep, const GroupSpec& spec, const RationalMap& f, std::uint64_t seed,
                   bool metric) {
    const auto deg = degree_by_preimages(f);
    const int expected = spec.schwarz_degree.value_or(f.declared_degree);
    rep.check_equal("degree by exact preimage count", expected, deg.degree, Provenance::paper);
    rep.check_true("exact and certified counts agree", deg.agree, Provenance::derived, deg.certified_counts);
    rep.check_true("numerator and denominator co-prime", f.coprime(), Provenance::derived);
    const auto tri = schwarz_triangle(f);
    std::vector<int> got = tri.local_degrees, want;
    for (const auto& b : spec.cone_angles) want.push_back(static_cast<int>(std::lround(1.0 / b.to_double())));
    std::sort(got.begin(), got.end());
    std::sort(want.begin(), want.end());
    rep.check_equal("local degrees over the critical values", want, got, Provenance::paper);
    json profiles = json::object();
    profiles["0"] = profile_json(ramification_profile(f, QSqrtM3(0)));
    profiles["1"] = profile_json(ramification_profile(f, QSqrtM3(1)));
    profiles["inf"] = profile_json(ramification_profile(f, std::nullopt));
    rep.add_data("ramification profiles", profiles);
    if (!metric) return;
    const auto g = schwarz_metric(f, tri.config);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> N(0.0, 1.0);
    double worst = 0.0;
    int n = 0;
    while (n < 200) {
        const cdouble eta(N(rng), N(rng));
        const cdouble v = f(eta);
        if (!std::isfinite(std::abs(v)) || std::abs(f.derivative(eta)) < 1e-6) continue;
        worst = std::max(worst, std::abs(pullback_ratio(g, f, eta) - 1));
        ++n;
    }
    rep.check_below("pullback of the quotient metric is round (200 points)", 1e-9, worst, Provenance::paper);
    const auto area = total_area(g);
    rep.check_rel("quotient area pi c", area.expected, area.area, 1e-6, Provenance::derived);
}

}  // namespace

VerificationReport check_reflection(const std::string& family, int m, std::uint64_t seed) {
    VerificationReport rep("reflection verify", {{"family", family}, {"m", m}}, seed);
    if (family == "G222") {
        const auto g = base_metric_G222();
        const auto f = base_map_G222();
        std::mt19937_64 rng(seed);
        std::normal_distribution<double> N(0.0, 1.0);
        double worst = 0.0;
        for (int n = 0; n < 200;) {
            const cdouble eta(N(rng), N(rng));
            if (std::abs(f.derivative(eta)) < 1e-6 || std::abs(eta) < 1e-3) continue;
            worst = std::max(worst, std::abs(pullback_ratio(g, f, eta) - 1));
            ++n;
        }
        rep.check_below("G(2,2,2) base metric pulls back to the round metric (200 points)", 1e-9, worst,
                        Provenance::paper);
        rep.check_rel("G(2,2,2) base area pi / 4", kPi / 4, total_area(g).area, 1e-6, Provenance::derived);
        return rep;
    }
    if (family == "G(2m,2,2)") {
        if (m < 1) throw std::invalid_argument("G(2m,2,2) needs --m >= 1");
        const auto spec = catalog("G(m,p,2)", 2 * m, 2);
        rep.add_data("catalog", catalog_to_json(spec));
        rep.check_equal("Schwarz degree 2m", 2 * m, spec.schwarz_degree.value_or(-1), Provenance::paper);
        const auto f = normalized_schwarz_map("G(2m,2,2)", m);
        const auto deg = degree_by_preimages(f);
        rep.check_equal("degree by exact preimage count", 2 * m, deg.degree, Provenance::paper);
        rep.check_true("exact and certified counts agree", deg.agree, Provenance::derived, deg.certified_counts);
        const auto pot = quotient_potential_G2m22(m, m == 2);
        const auto rec = recover_normalization(pot, 200, seed);
        const double a = m == 2 ? 8 * std::sqrt(2.0) : 2.0 * m * m;
        rep.check_abs(m == 2 ? "quotient potential constant a = 8 sqrt 2" : "quotient potential constant a = 2 m^2", a,
                      rec.a, 1e-9, m == 2 ? Provenance::paper : Provenance::derived);
        rep.check_below("a is constant over the samples", 1e-9, rec.max_deviation, Provenance::derived);
        rep.add_data("potential ratio spread", format_double(rec.ratio_spread));
        const auto inv = verify_invariants("G(2m,2,2)", m);
        rep.check_true("u, v invariant", inv.invariant, Provenance::paper, inv.invariants);
        return rep;
    }
    if (family == "G(m,m,2)") {
        if (m < 2) throw std::invalid_argument("G(m,m,2) needs --m >= 2");
        rep.add_data("catalog", catalog_to_json(catalog("G(m,p,2)", m, m)));
        const auto inv = verify_invariants("G(m,m,2)", m);
        rep.check_true("z, w invariant", inv.invariant, Provenance::paper, inv.invariants);
        rep.check_true("relation w^2 + t^2 = z^m", inv.relation, Provenance::paper);
        return rep;
    }
    if (family == "tetrahedral" || family == "octahedral" || family == "icosahedral") {
        const auto spec = catalog(family);
        rep.add_data("catalog", catalog_to_json(spec));
        check_schwarz(rep, spec, normalized_schwarz_map(family), seed, true);
        return rep;
    }
    throw std::invalid_argument("unknown family " + family);
}

json germ_to_json(const CurveGerm& g) {
    json verts = json::array();
    for (const auto& [a, b] : g.newton_vertices) verts.push_back({a, b});
    json j{{"f", g.f.str()},
           {"normalized", g.normalized.str()},
           {"normalization", g.normalization},
           {"order", g.order},
           {"family", to_string(g.family)},
           {"newton_vertices", verts},
           {"c0", g.c0.str()}};
    if (g.e) j["e"] = g.e->str();
    if (g.puiseux_ratio) j["puiseux_ratio"] = g.puiseux_ratio->str();
    const auto r = admissible_angle_range(g);
    j["admissible_beta"] = {r.lo.str(), r.hi.str()};
    return j;
}

VerificationReport germ_report(const std::string& poly) {
    VerificationReport rep("germ analyze", {{"poly", poly}});
    const auto g = analyze_germ(poly);
    rep.add_data("germ", germ_to_json(g));
    rep.check_true("c0 in (0, 1]", g.c0 > Rational(0) && g.c0 <= Rational(1), Provenance::trivial, g.c0.str());
    return rep;
}

json ledger_to_json(const EnergyLedger& l) {
    json b = json::object();
    for (const auto& [r, e] : l.bubbles) b[std::to_string(r)] = e.str();
    return {{"name", l.name},
            {"total", l.total.str()},
            {"bubbles", b},
            {"bubble_sum", l.bubble_sum.str()},
            {"residual", l.residual.str()},
            {"warnings", l.warnings}};
}

VerificationReport energy_ledger_report(const std::string& family, int m) {
    VerificationReport rep("energy ledger", {{"family", family}, {"m", m}});
    const auto spec = arrangement_by_name(family, m);
    const auto l = arrangement_ledger(spec);
    rep.add_data("ledger", ledger_to_json(l));
    rep.check_exact("residual E - sum t_r E_r", Rational(0), l.residual, Provenance::derived);
    rep.check_exact("E", spec.expected_energy, l.total, Provenance::paper);
    return rep;
}

VerificationReport bishop_gromov_report(const std::string& which, const Rational& beta) {
    if (which != "cuspidal-cubic") throw std::invalid_argument("unknown case " + which);
    VerificationReport rep("energy bishop-gromov", {{"case", which}, {"beta", beta.str()}});
    const auto r = bishop_gromov_cuspidal_cubic(beta);
    rep.add_data("nu", r.nu.str());
    rep.add_data("bound", r.bound.str());
    rep.add_data("inequality holds", r.pass);
    rep.check_equal("inequality holds iff beta = 1", beta == Rational(1), r.pass, Provenance::paper);
    return rep;
}

}  // namespace conekit
