#include "conekit/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace conekit {

std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

double parse_double(const json& j) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument("not a decimal number: " + s);
        return v;
    }
    throw std::invalid_argument("expected a number");
}

namespace {

Angle angle_from_json(const json& a) {
    if (a.is_string()) {
        const auto s = a.get<std::string>();
        if (s.find_first_of(".eE") != std::string::npos) return Angle(parse_double(a));
        return Angle(Rational::parse(s));
    }
    if (a.is_number_integer()) return Angle(Rational(a.get<long>()));
    if (a.is_number()) return Angle(a.get<double>());
    throw std::invalid_argument("angle must be \"p/q\" or a number");
}

MarkedPoint point_from_json(const json& p) {
    if (p.is_string()) {
        if (p.get<std::string>() == "inf") return MarkedPoint::infinity();
        return MarkedPoint(parse_double(p));
    }
    if (p.is_number()) return MarkedPoint(p.get<double>());
    if (p.is_array() && p.size() == 2) return MarkedPoint(cdouble(parse_double(p[0]), parse_double(p[1])));
    throw std::invalid_argument("point must be \"inf\", a number or [re, im]");
}

json doubles(const std::vector<double>& v) {
    json a = json::array();
    for (double x : v) a.push_back(format_double(x));
    return a;
}

std::vector<double> doubles_from(const json& a) {
    std::vector<double> v;
    v.reserve(a.size());
    for (const auto& x : a) v.push_back(parse_double(x));
    return v;
}

}  // namespace

ConeConfig config_from_json(const json& j) {
    if (!j.is_object() || !j.contains("points") || !j.contains("angles"))
        throw std::invalid_argument("cone configuration needs \"points\" and \"angles\"");
    std::vector<MarkedPoint> pts;
    std::vector<Angle> angles;
    for (const auto& p : j.at("points")) pts.push_back(point_from_json(p));
    for (const auto& a : j.at("angles")) angles.push_back(angle_from_json(a));
    AngleContext ctx = AngleContext::prop1;
    if (j.contains("context") && j.at("context") == "prop2") ctx = AngleContext::prop2;
    return ConeConfig(std::move(pts), std::move(angles), ctx);
}

json config_to_json(const ConeConfig& c) {
    json pts = json::array(), angles = json::array();
    for (const auto& p : c.points()) {
        if (p.is_infinity()) pts.push_back("inf");
        else pts.push_back(json::array({format_double(p.value().real()), format_double(p.value().imag())}));
    }
    for (const auto& a : c.angles()) {
        if (a.exact) angles.push_back(a.exact->str());
        else angles.push_back(format_double(a.value));
    }
    json j{{"points", pts}, {"angles", angles}};
    if (c.context() == AngleContext::prop2) j["context"] = "prop2";
    return j;
}

json grid_to_json(const GridSolution& g) {
    json charts = json::array();
    for (const auto& G : g.charts) {
        json kind = json::array();
        for (auto k : G.kind) kind.push_back(static_cast<int>(k));
        charts.push_back({{"chart", to_string(G.chart)},
                          {"n", G.n},
                          {"bounds", json::array({format_double(-G.L), format_double(G.L)})},
                          {"spacing", format_double(G.h)},
                          {"kind", kind},
                          {"u", doubles(G.u)}});
    }
    json patches = json::array();
    for (const auto& P : g.patches)
        patches.push_back({{"puncture", P.puncture},
                           {"chart", to_string(P.chart)},
                           {"center", json::array({format_double(P.center.real()), format_double(P.center.imag())})},
                           {"beta", format_double(P.beta)},
                           {"outer_radius", format_double(P.R)},
                           {"s_min", format_double(P.s_min)},
                           {"spacing", format_double(P.h)},
                           {"ns", P.ns},
                           {"nt", P.nt},
                           {"u", doubles(P.u)}});
    const auto& r = g.report;
    return {{"schema", "conekit/1"},
            {"kind", "grid-solution"},
            {"config", config_to_json(g.config)},
            {"kappa", format_double(g.kappa)},
            {"options",
             {{"grid", g.options.grid},
              {"half_width", format_double(g.options.half_width)},
              {"patch_theta", g.options.patch_theta},
              {"newton_tol", format_double(g.options.newton_tol)}}},
            {"residual_report",
             {{"converged", r.converged},
              {"newton_iterations", r.newton_iterations},
              {"continuation_steps", r.continuation_steps},
              {"residual", format_double(r.residual)},
              {"unknowns", r.unknowns},
              {"seconds", format_double(r.seconds)},
              {"message", r.message}}},
            {"charts", charts},
            {"patches", patches}};
}

namespace {

Chart chart_from(const json& j) {
    const auto s = j.get<std::string>();
    if (s == to_string(Chart::xi)) return Chart::xi;
    if (s == to_string(Chart::eta)) return Chart::eta;
    throw std::invalid_argument("unknown chart " + s);
}

}  // namespace

GridSolution grid_from_json(const json& j) {
    if (j.value("kind", "") != "grid-solution") throw std::invalid_argument("not a grid solution");
    GridSolution g;
    g.config = config_from_json(j.at("config"));
    g.kappa = parse_double(j.at("kappa"));
    g.atlas = ChartAtlas(g.config);
    const auto& o = j.at("options");
    g.options.grid = o.at("grid").get<int>();
    g.options.half_width = parse_double(o.at("half_width"));
    g.options.patch_theta = o.at("patch_theta").get<int>();
    g.options.newton_tol = parse_double(o.at("newton_tol"));
    const auto& r = j.at("residual_report");
    g.report.converged = r.at("converged").get<bool>();
    g.report.newton_iterations = r.at("newton_iterations").get<int>();
    g.report.continuation_steps = r.at("continuation_steps").get<int>();
    g.report.residual = parse_double(r.at("residual"));
    g.report.unknowns = r.at("unknowns").get<std::size_t>();
    g.report.seconds = parse_double(r.at("seconds"));
    g.report.message = r.at("message").get<std::string>();
    const auto& charts = j.at("charts");
    if (charts.size() != 2) throw std::invalid_argument("grid solution needs two charts");
    for (std::size_t k = 0; k < 2; ++k) {
        const auto& c = charts[k];
        auto& G = g.charts[k];
        G.chart = chart_from(c.at("chart"));
        G.n = c.at("n").get<int>();
        G.L = parse_double(c.at("bounds")[1]);
        G.h = parse_double(c.at("spacing"));
        G.u = doubles_from(c.at("u"));
        for (const auto& x : c.at("kind")) G.kind.push_back(static_cast<std::int8_t>(x.get<int>()));
        const auto cells = static_cast<std::size_t>(G.n) * static_cast<std::size_t>(G.n);
        if (G.u.size() != cells || G.kind.size() != cells) throw std::invalid_argument("chart sample count mismatch");
    }
    for (const auto& p : j.at("patches")) {
        PolarPatch P;
        P.puncture = p.at("puncture").get<int>();
        P.chart = chart_from(p.at("chart"));
        P.center = cdouble(parse_double(p.at("center")[0]), parse_double(p.at("center")[1]));
        P.beta = parse_double(p.at("beta"));
        P.R = parse_double(p.at("outer_radius"));
        P.s_min = parse_double(p.at("s_min"));
        P.h = parse_double(p.at("spacing"));
        P.ns = p.at("ns").get<int>();
        P.nt = p.at("nt").get<int>();
        P.u = doubles_from(p.at("u"));
        if (P.u.size() != static_cast<std::size_t>(P.ns) * static_cast<std::size_t>(P.nt))
            throw std::invalid_argument("patch sample count mismatch");
        g.patches.push_back(std::move(P));
    }
    return g;
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return json::parse(ss.str());
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(path + ": " + e.what());
    }
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    out << text;
    if (!out) throw IoError("write failed for " + path);
}

}  // namespace conekit
