#include "conekit/reflection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <regex>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace conekit {

namespace {

using LC = std::complex<long double>;

ExactPoly int_poly(std::initializer_list<long> c) {
    std::vector<QSqrtM3> v;
    for (long x : c) v.emplace_back(x);
    return ExactPoly(std::move(v));
}

std::vector<LC> to_lc(const ExactPoly& p) {
    std::vector<LC> out;
    for (const auto& x : p.coeffs()) {
        // The i sqrt(3) part in long double precision.
        long double re = static_cast<long double>(x.rational_part().to_double());
        long double im = static_cast<long double>(x.s_part().to_double()) * std::sqrt(3.0L);
        out.emplace_back(re, im);
    }
    return out;
}

LC horner(const std::vector<LC>& c, LC z) {
    LC acc = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
    return acc;
}

void horner2(const std::vector<LC>& c, LC z, LC& p, LC& dp) {
    p = 0;
    dp = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        dp = dp * z + p;
        p = p * z + *it;
    }
}

// Coefficients of p(c + x).
std::vector<LC> taylor_shift(std::vector<LC> a, LC c) {
    const std::size_t n = a.size();
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t j = n - 1; j > k; --j) a[j - 1] += c * a[j];
    return a;
}

ExactPoly minus_scaled(const ExactPoly& a, const QSqrtM3& v, const ExactPoly& b) {
    return a - ExactPoly(v) * b;
}

QSqrtM3 exact_real(double x) { return QSqrtM3(Rational::from_double(x)); }

std::vector<std::string> split_family(const std::string& family, int& m, int& p) {
    // "G(4,2,2)" carries its own parameters.
    static const std::regex re(R"(\s*G\(\s*(\d+)\s*,\s*(\d+)\s*,\s*2\s*\)\s*)");
    std::smatch mt;
    if (std::regex_match(family, mt, re)) {
        m = std::stoi(mt[1]);
        p = std::stoi(mt[2]);
        return {"G(m,p,2)"};
    }
    return {family};
}

}  // namespace

// ---------------------------------------------------------------------------
// Catalog

GroupSpec catalog(const std::string& family_in, int m, int p) {
    GroupSpec g;
    const std::string family = split_family(family_in, m, p).front();
    g.family = family;
    auto primitive = [&](long n, int deg, long k_third, int lines2, int lines3, int lines_k) {
        g.order = n * n;
        g.center_order = n;
        g.invariant_degrees = {deg, deg};
        g.schwarz_degree = static_cast<int>(n);
        g.triangle = {Rational(1, 2), Rational(1, 3), Rational(1, k_third)};
        g.cone_angles = g.triangle;
        g.lines = {{"order-2 fixed lines", lines2, Rational(1, 2)},
                   {"order-3 fixed lines", lines3, Rational(1, 3)},
                   {"order-" + std::to_string(k_third) + " fixed lines", lines_k, Rational(1, k_third)}};
    };
    if (family == "G(m,p,2)" || family == "imprimitive") {
        g.family = "G(m,p,2)";
        if (m < 2 || p < 1 || m % p != 0) throw std::invalid_argument("G(m,p,2) needs m >= 2 and p dividing m");
        g.m = m;
        g.p = p;
        g.order = 2L * m * m / p;
        g.center_order = static_cast<long>(m) * std::gcd(p, 2) / p;
        g.invariant_degrees = {m, 2 * m / p};
        std::sort(g.invariant_degrees.begin(), g.invariant_degrees.end());
        g.schwarz_degree = static_cast<int>(g.order / g.center_order);
        if (p < m) g.lines.push_back({"x1 = 0 and x2 = 0", 2, Rational(p, m)});
        g.lines.push_back({"x1^m = x2^m", m, Rational(1, 2)});
        if (p == m) {
            g.quotient_curve = "w^2 = z^" + std::to_string(m);
            g.quotient_curve_beta = Rational(1, 2);
        }
        if (p == 2 && m % 2 == 0) {
            const int k = m / 2;
            g.quotient_curve = "u v (u - v) = 0";
            g.triangle = {Rational(1, 2), Rational(1, 2), Rational(1, k)};
            g.cone_angles = {Rational(1, k), Rational(1, 2), Rational(1, 2)};  // at 0, 1, infinity
        }
    } else if (family == "tetrahedral") {
        primitive(12, 12, 3, 6, 4, 4);
        g.lines.pop_back();
        g.lines.back().count = 8;  // both order-3 orbits
        g.lines.back().description = "order-3 fixed lines (two orbits of 4)";
    } else if (family == "octahedral") {
        primitive(24, 24, 4, 12, 8, 6);
    } else if (family == "icosahedral") {
        primitive(60, 60, 5, 30, 20, 12);
    } else if (family == "C_m") {
        if (m < 2) throw std::invalid_argument("C_m needs m >= 2");
        g.m = m;
        g.order = m;
        g.center_order = m;
        g.du_val_type = "A_" + std::to_string(m - 1);
        g.du_val_surface = "t^2 + w^2 = z^" + std::to_string(m);
        g.branch_curve = "w^2 = z^" + std::to_string(m);
    } else if (family == "D_2m") {
        if (m < 2) throw std::invalid_argument("D_2m needs m >= 2");
        g.m = m;
        g.order = 4L * m;
        g.center_order = 2;
        g.du_val_type = "D_" + std::to_string(m + 2);
        g.du_val_surface = "t^2 + z w^2 = z^" + std::to_string(m + 1);
        g.branch_curve = "z w^2 = z^" + std::to_string(m + 1);
    } else if (family == "T" || family == "O" || family == "I") {
        g.center_order = 2;
        if (family == "T") {
            g.order = 24;
            g.du_val_type = "E_6";
            g.du_val_surface = "t^2 + w^3 = z^4";
            g.branch_curve = "w^3 = z^4";
        } else if (family == "O") {
            g.order = 48;
            g.du_val_type = "E_7";
            g.du_val_surface = "t^2 + w^3 = w z^3";
            g.branch_curve = "w^3 = w z^3";
        } else {
            g.order = 120;
            g.du_val_type = "E_8";
            g.du_val_surface = "t^2 + w^3 = z^5";
            g.branch_curve = "w^3 = z^5";
        }
    } else {
        throw std::invalid_argument("unknown group family: " + family_in);
    }
    return g;
}

// ---------------------------------------------------------------------------
// Rational maps

int RationalMap::degree() const {
    ExactPoly n = num_eta(), d = den_eta();
    ExactPoly g = gcd(n, d);
    if (g.degree() > 0) {
        n = divmod(n, g).first;
        d = divmod(d, g).first;
    }
    return std::max(n.degree(), d.degree());
}

bool RationalMap::coprime() const { return gcd(num, den).degree() == 0 && gcd(num_eta(), den_eta()).degree() == 0; }

cdouble RationalMap::operator()(cdouble eta) const {
    const LC t = std::pow(LC(eta.real(), eta.imag()), power);
    const LC d = horner(to_lc(den), t);
    const LC n = horner(to_lc(num), t);
    if (std::abs(d) == 0.0L) return {std::numeric_limits<double>::infinity(), 0.0};
    const LC r = n / d;
    return {static_cast<double>(r.real()), static_cast<double>(r.imag())};
}

cdouble RationalMap::derivative(cdouble eta) const {
    const LC e(eta.real(), eta.imag());
    const LC t = std::pow(e, power);
    LC n, dn, d, dd;
    horner2(to_lc(num), t, n, dn);
    horner2(to_lc(den), t, d, dd);
    const LC dt = static_cast<long double>(power) * (power > 1 ? std::pow(e, power - 1) : LC(1));
    const LC r = (dn * d - n * dd) / (d * d) * dt;
    return {static_cast<double>(r.real()), static_cast<double>(r.imag())};
}

RationalMap RationalMap::divided_by(const QSqrtM3& s) const {
    RationalMap out = *this;
    out.den = ExactPoly(s) * den;
    return out;
}

RationalMap RationalMap::reciprocal() const {
    RationalMap out = *this;
    std::swap(out.num, out.den);
    out.name = "1/(" + name + ")";
    return out;
}

RationalMap schwarz_map(const std::string& family_in, int m) {
    int p = 0;
    std::string family = family_in;
    if (split_family(family_in, m, p).front() == "G(m,p,2)") {
        // G(2k,2,2) given as G(m,p,2).
        if (p != 2 || m % 2 != 0) throw std::invalid_argument("Schwarz maps are implemented for G(2m,2,2)");
        m /= 2;
        family = "G(2m,2,2)";
    }
    RationalMap f;
    if (family == "G(2m,2,2)") {
        if (m < 1) throw std::invalid_argument("G(2m,2,2) needs m >= 1");
        f.name = "G(" + std::to_string(2 * m) + ",2,2)";
        f.num = int_poly({0, 4});
        f.den = int_poly({1, 2, 1});
        f.power = m;
        f.declared_degree = 2 * m;
    } else if (family == "tetrahedral") {
        f.name = "tetrahedral";
        // (t^2 + 2 i sqrt3 t + 1)^3 / (t (t^2 - 1)^2), t = eta^2
        ExactPoly q(std::vector<QSqrtM3>{QSqrtM3(1), QSqrtM3(Rational(0), Rational(2)), QSqrtM3(1)});
        f.num = pow(q, 3);
        f.den = int_poly({0, 1}) * pow(int_poly({-1, 0, 1}), 2);
        f.power = 2;
        f.declared_degree = 12;
    } else if (family == "octahedral") {
        f.name = "octahedral";
        f.num = pow(int_poly({1, 14, 1}), 3);
        f.den = pow(int_poly({1, -33, -33, 1}), 2);
        f.power = 4;
        f.declared_degree = 24;
    } else if (family == "icosahedral") {
        f.name = "icosahedral";
        f.num = pow(int_poly({1, 228, 494, -228, 1}), 3);
        f.den = pow(int_poly({1, -522, -10005, 0, -10005, 522, 1}), 2);
        f.power = 5;
        f.declared_degree = 60;
    } else {
        throw std::invalid_argument("no Schwarz map for family: " + family_in);
    }
    return f;
}

RationalMap normalized_schwarz_map(const std::string& family, int m) {
    RationalMap f = schwarz_map(family, m);
    if (f.name == "tetrahedral") {
        f = f.divided_by(QSqrtM3(Rational(0), Rational(12)));
        f.name = "tetrahedral/(12 i sqrt3)";
    }
    return f;
}

// ---------------------------------------------------------------------------
// Degree, ramification, critical points

DegreeReport degree_by_preimages(const RationalMap& f, std::vector<QSqrtM3> values, int trials) {
    if (values.empty()) values = {QSqrtM3(Rational(7, 3)), QSqrtM3(Rational(-5, 11)), QSqrtM3(Rational(13, 2))};
    const ExactPoly n = f.num_eta(), d = f.den_eta();
    const int top = std::max(n.degree(), d.degree());
    DegreeReport rep;
    QSqrtM3 bump(Rational(1, 97));
    for (std::size_t i = 0; static_cast<int>(rep.values.size()) < trials; ++i) {
        QSqrtM3 v = i < values.size() ? values[i] : values.back() + bump * QSqrtM3(static_cast<long>(i));
        const ExactPoly P = minus_scaled(n, v, d);
        const int at_infinity = top - P.degree();
        if (!is_squarefree(P) || at_infinity > 1) {
            if (++rep.retries > 20) throw std::runtime_error("no generic value found");
            continue;
        }
        rep.values.push_back(v);
        rep.exact_counts.push_back(distinct_root_count(P) + at_infinity);
        const RootCertificate cert = certified_roots(P);
        rep.certified_counts.push_back(cert.isolated ? static_cast<int>(cert.roots.size()) + at_infinity : -1);
    }
    rep.degree = rep.exact_counts.front();
    rep.agree = true;
    for (std::size_t i = 0; i < rep.exact_counts.size(); ++i)
        rep.agree = rep.agree && rep.exact_counts[i] == rep.degree && rep.certified_counts[i] == rep.degree;
    if (!rep.agree) rep.degree = -1;
    return rep;
}

std::map<int, int> ramification_profile(const RationalMap& f, const std::optional<QSqrtM3>& value) {
    const ExactPoly n = f.num_eta(), d = f.den_eta();
    const int top = std::max(n.degree(), d.degree());
    const ExactPoly P = value ? minus_scaled(n, *value, d) : d;
    std::map<int, int> out;
    for (const auto& [factor, k] : squarefree_decomposition(P)) out[k] += factor.degree();
    if (top > P.degree()) out[top - P.degree()] += 1;
    return out;
}

std::vector<CriticalPoint> critical_points(const RationalMap& f) {
    const ExactPoly n = f.num_eta(), d = f.den_eta();
    const ExactPoly W = n.derivative() * d - n * d.derivative();
    std::vector<CriticalPoint> out;
    int finite = 0;
    for (const auto& [factor, k] : squarefree_decomposition(W)) {
        const RootCertificate cert = certified_roots(factor);
        for (const auto& r : cert.roots) {
            out.push_back({cdouble(static_cast<double>(r.real()), static_cast<double>(r.imag())), k});
            finite += k;
        }
    }
    const int at_infinity = 2 * f.degree() - 2 - finite;
    if (at_infinity > 0) out.push_back({std::nullopt, at_infinity});
    return out;
}

namespace {

// Value of f at eta = infinity.
cdouble value_at_infinity(const RationalMap& f) {
    const ExactPoly n = f.num_eta(), d = f.den_eta();
    if (n.degree() > d.degree()) return {std::numeric_limits<double>::infinity(), 0.0};
    if (n.degree() < d.degree()) return 0.0;
    return n.leading().to_complex() / d.leading().to_complex();
}

}  // namespace

SchwarzTriangle schwarz_triangle(const RationalMap& f) {
    struct Branch {
        std::optional<cdouble> value;  // nullopt = infinity
        int local_degree;
    };
    std::vector<Branch> branches;
    for (const auto& cp : critical_points(f)) {
        cdouble w = cp.point ? f(*cp.point) : value_at_infinity(f);
        std::optional<cdouble> val;
        if (std::isfinite(w.real()) && std::abs(w) < 1e10) val = w;
        const int e = cp.order + 1;
        bool found = false;
        for (auto& b : branches) {
            const bool same = (!b.value && !val) ||
                              (b.value && val && std::abs(*b.value - *val) <= 1e-7 * (1.0 + std::abs(*val)));
            if (!same) continue;
            if (b.local_degree != e) throw std::runtime_error("critical points over one value have different orders");
            found = true;
        }
        if (!found) branches.push_back({val, e});
    }
    if (branches.size() != 3) throw std::runtime_error("map does not have exactly three critical values");
    std::optional<int> at[3];  // slots for 0, 1, infinity
    for (std::size_t i = 0; i < 3; ++i) {
        const auto& b = branches[i];
        int slot = -1;
        if (!b.value) slot = 2;
        else if (std::abs(*b.value) < 1e-8) slot = 0;
        else if (std::abs(*b.value - 1.0) < 1e-8) slot = 1;
        if (slot < 0) {
            std::ostringstream os;
            os << "critical value " << *b.value << " is not 0, 1 or infinity; normalize the map first";
            throw std::runtime_error(os.str());
        }
        at[slot] = static_cast<int>(i);
    }
    SchwarzTriangle tri;
    std::vector<MarkedPoint> pts = {0.0, 1.0, MarkedPoint::infinity()};
    std::vector<Angle> angles;
    for (int s = 0; s < 3; ++s) {
        const int e = branches[static_cast<std::size_t>(*at[s])].local_degree;
        tri.local_degrees.push_back(e);
        angles.emplace_back(Rational(1, e));
    }
    tri.config = ConeConfig(pts, angles);
    return tri;
}

// ---------------------------------------------------------------------------
// Closed-form Schwarz metric

namespace {

// Data for evaluating the pushforward of the round metric in one chart, where the chart map is A / B.
struct ChartMap {
    std::vector<LC> A, B, dA, dB;
    struct Local {
        int index;       // cone point index
        LC position;
        int k;           // local degree
        LC center;       // critical point over the cone point
        std::vector<LC> p, b;  // Taylor coefficients of A - position B and of B at the center
    };
    std::vector<Local> locals;
};

struct SchwarzState {
    ChartAtlas atlas;
    ChartMap charts[2];
};

std::vector<LC> derivative_lc(const std::vector<LC>& c) {
    std::vector<LC> d;
    for (std::size_t i = 1; i < c.size(); ++i) d.push_back(static_cast<long double>(i) * c[i]);
    return d;
}

LC refine_root(const std::vector<LC>& P, LC z) {
    const std::vector<LC> dP = derivative_lc(P);
    for (int it = 0; it < 8; ++it) {
        LC dp = horner(dP, z);
        if (std::abs(dp) == 0.0L) break;
        LC step = horner(P, z) / dp;
        z -= step;
        if (std::abs(step) <= 1e-19L * (1 + std::abs(z))) break;
    }
    return z;
}

ChartMap::Local make_local(const ExactPoly& A, const ExactPoly& B, const ChartPuncture& q) {
    const QSqrtM3 pos = exact_real(q.position.real());
    if (q.position.imag() != 0.0) throw std::invalid_argument("Schwarz metric cone points must be real");
    const int k = static_cast<int>(std::lround(1.0 / q.beta));
    const ExactPoly P = minus_scaled(A, pos, B);
    std::optional<LC> best;
    for (const auto& [factor, mult] : squarefree_decomposition(P)) {
        if (mult != k) continue;
        for (const auto& r : certified_roots(factor).roots) {
            // Prefer a center of moderate modulus, where the shifted coefficients are well conditioned.
            if (!best || std::abs(std::log(std::abs(r) + 1e-300L)) < std::abs(std::log(std::abs(*best) + 1e-300L)))
                best = r;
        }
        if (best) *best = refine_root(to_lc(factor), *best);
    }
    if (!best) throw std::invalid_argument("cone point is not a critical value of the expected order");
    ChartMap::Local loc;
    loc.index = q.index;
    loc.position = LC(q.position.real(), q.position.imag());
    loc.k = k;
    loc.center = *best;
    loc.p = taylor_shift(to_lc(P), *best);
    loc.b = taylor_shift(to_lc(B), *best);
    for (int j = 0; j < k && j < static_cast<int>(loc.p.size()); ++j) loc.p[static_cast<std::size_t>(j)] = 0;
    return loc;
}

// phi near a cone point: w = position + delta. Returns phi + (1 - beta) log|delta| (finite as delta -> 0).
double local_phi_regularized(const ChartMap::Local& loc, LC delta) {
    const long double k = loc.k;
    const LC pk = loc.p[static_cast<std::size_t>(loc.k)];
    LC x = std::pow(delta * loc.b[0] / pk, 1.0L / k);
    const std::vector<LC> dp = derivative_lc(loc.p), db = derivative_lc(loc.b);
    for (int it = 0; it < 60; ++it) {
        LC F = horner(loc.p, x) - delta * horner(loc.b, x);
        LC dF = horner(dp, x) - delta * horner(db, x);
        LC step = F / dF;
        x -= step;
        if (std::abs(step) <= 1e-18L * std::abs(x)) break;
    }
    const LC Bx = horner(loc.b, x);
    const LC dPhi = horner(dp, x) / Bx - delta * horner(db, x) / Bx;
    const LC eta = loc.center + x;
    const long double phi = -std::log1p(std::norm(eta)) - std::log(std::abs(dPhi));
    return static_cast<double>(phi + (1.0L - 1.0L / k) * std::log(std::abs(delta)));
}

double general_phi(const ChartMap& cm, LC w, const void* key, Chart chart) {
    thread_local std::unordered_map<const void*, LC> cache[2];
    auto& slot = cache[static_cast<int>(chart)];
    std::vector<LC> G(std::max(cm.A.size(), cm.B.size()), LC(0));
    for (std::size_t i = 0; i < cm.A.size(); ++i) G[i] += cm.A[i];
    for (std::size_t i = 0; i < cm.B.size(); ++i) G[i] -= w * cm.B[i];
    while (!G.empty() && G.back() == LC(0)) G.pop_back();
    const std::vector<LC> dG = derivative_lc(G);
    auto newton = [&](LC z, LC& out) {
        for (int it = 0; it < 40; ++it) {
            LC g = horner(G, z), dg = horner(dG, z);
            if (std::abs(dg) == 0.0L) return false;
            LC step = g / dg;
            z -= step;
            if (std::abs(z) > 1e6L) return false;
            if (std::abs(step) <= 1e-18L * (1 + std::abs(z))) {
                out = z;
                return true;
            }
        }
        return false;
    };
    LC eta;
    auto it = slot.find(key);
    bool ok = it != slot.end() && newton(it->second, eta);
    if (!ok) {
        const RootCertificate cert = certified_roots(G);
        LC best = cert.roots.front();
        for (const auto& r : cert.roots)
            if (std::abs(r) < std::abs(best)) best = r;
        ok = newton(best, eta);
        if (!ok) eta = best;
    }
    slot[key] = eta;
    LC a, da, b, db;
    horner2(cm.A, eta, a, da);
    horner2(cm.B, eta, b, db);
    const LC dPhi = (da * b - a * db) / (b * b);
    return static_cast<double>(-std::log1p(std::norm(eta)) - std::log(std::abs(dPhi)));
}

}  // namespace

ConformalMetric schwarz_metric(const RationalMap& f, const ConeConfig& config) {
    auto st = std::make_shared<SchwarzState>();
    st->atlas = ChartAtlas(config);
    const ExactPoly n = f.num_eta(), d = f.den_eta();
    for (Chart c : {Chart::xi, Chart::eta}) {
        ChartMap& cm = st->charts[static_cast<int>(c)];
        const ExactPoly& A = c == Chart::xi ? n : d;
        const ExactPoly& B = c == Chart::xi ? d : n;
        cm.A = to_lc(A);
        cm.B = to_lc(B);
        for (const auto& q : st->atlas.punctures(c)) cm.locals.push_back(make_local(A, B, q));
    }
    auto u = [st](const SamplePoint& p) -> double {
        const ChartMap& cm = st->charts[static_cast<int>(p.chart)];
        const LC w(p.z.real(), p.z.imag());
        for (const auto& loc : cm.locals) {
            LC delta = p.puncture == loc.index ? LC(p.delta.real(), p.delta.imag()) : w - loc.position;
            if (std::abs(delta) >= 1e-3L) continue;
            // Regular part: phi - (beta - 1) log|delta| - sum over the other cone points.
            double rest = 0.0;
            for (const auto& q : st->atlas.punctures(p.chart))
                if (q.index != loc.index) rest += (q.beta - 1.0) * std::log(std::abs(p.z - q.position));
            return local_phi_regularized(loc, delta) - rest;
        }
        return general_phi(cm, w, st.get(), p.chart) - st->atlas.singular_log(p);
    };
    return ConformalMetric::closed_form(config, 4.0, u, "schwarz:" + f.name);
}

ConformalMetric schwarz_metric(const RationalMap& f) { return schwarz_metric(f, schwarz_triangle(f).config); }

double pullback_ratio(const ConformalMetric& g, const RationalMap& f, cdouble eta) {
    const cdouble w = f(eta);
    const cdouble dw = f.derivative(eta);
    const double round = std::log1p(std::norm(eta));
    double log_ratio;
    if (std::abs(w) <= 1.0) {
        log_ratio = 2.0 * g.log_factor(Chart::xi, w) + std::log(std::norm(dw));
    } else {
        // Other chart: 1/f, with derivative -f'/f^2.
        log_ratio = 2.0 * g.log_factor(Chart::eta, 1.0 / w) + std::log(std::norm(dw / (w * w)));
    }
    return std::exp(log_ratio + 2.0 * round);
}

ConformalMetric base_metric_G222() {
    ConeConfig cfg({0.0, 1.0, MarkedPoint::infinity()}, {Rational(1, 2), Rational(1, 2), Rational(1, 2)});
    auto u = [](const SamplePoint& p) {
        // xi chart: -1/2 log 8 - 1/2 log(1 + |xi| + |xi - 1|); the eta chart has the same form.
        const double a = std::abs(p.z), b = std::abs(p.z - 1.0);
        return -0.5 * std::log(8.0) - 0.5 * std::log(1.0 + a + b);
    };
    return ConformalMetric::closed_form(cfg, 4.0, u, "G(2,2,2) base");
}

RationalMap base_map_G222() {
    RationalMap f;
    f.name = "xi = (1 + eta^2)^2 / (4 eta^2)";
    f.num = int_poly({1, 2, 1});
    f.den = int_poly({0, 4});
    f.power = 2;
    f.declared_degree = 4;
    return f;
}

// ---------------------------------------------------------------------------
// Quotient potential

double QuotientPotential::unnormalized(cdouble u, cdouble v) const {
    if (displayed_m2_form && m == 2) return std::sqrt(std::abs(u) + std::abs(v) + std::abs(u - v));
    const double h = std::abs(v) + std::abs(u - v);
    const double root = std::sqrt(std::max(0.0, h * h - std::norm(u)));
    const double big = h + root;
    if (big == 0.0) return 0.0;
    return std::pow(big, 1.0 / m) + std::pow(std::norm(u) / big, 1.0 / m);  // h - root without cancellation
}

QuotientPotential quotient_potential_G2m22(int m, bool displayed_m2_form) {
    if (m < 2) throw std::invalid_argument("quotient potential needs m >= 2");
    QuotientPotential q;
    q.m = m;
    q.displayed_m2_form = displayed_m2_form && m == 2;
    // potential o Psi = k |x|^2 with k = 1 (general) or 1/sqrt2 (m = 2 displayed form);
    // density * |J|^2 = 4 m^4 then gives a = 2 m^2 / k.
    const double k = q.displayed_m2_form ? 1.0 / std::sqrt(2.0) : 1.0;
    q.a = 2.0 * m * m / k;
    return q;
}

std::pair<cdouble, cdouble> invariant_map_G2m22(int m, cdouble x1, cdouble x2) {
    const cdouble s = std::pow(x1, m) + std::pow(x2, m);
    return {std::pow(x1 * x2, m), 0.25 * s * s};
}

cdouble invariant_jacobian_G2m22(int m, cdouble x1, cdouble x2) {
    const cdouble a = std::pow(x1, m), b = std::pow(x2, m);
    return 0.5 * double(m * m) * (a + b) * std::pow(x1, m - 1) * std::pow(x2, m - 1) * (b - a);
}

double quotient_density_G2m22(int m, cdouble u, cdouble v) {
    return std::pow(std::abs(u), 2.0 / m - 2.0) / (std::abs(v) * std::abs(u - v));
}

NormalizationRecovery recover_normalization(const QuotientPotential& pot, int samples, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> N(0.0, 1.0);
    std::vector<double> as, ks;
    for (int i = 0; i < samples; ++i) {
        const cdouble x1(N(rng), N(rng)), x2(N(rng), N(rng));
        const auto [u, v] = invariant_map_G2m22(pot.m, x1, x2);
        const double k = pot.unnormalized(u, v) / (std::norm(x1) + std::norm(x2));
        const double rho_j2 = quotient_density_G2m22(pot.m, u, v) * std::norm(invariant_jacobian_G2m22(pot.m, x1, x2));
        ks.push_back(k);
        as.push_back(std::sqrt(rho_j2) / k);
    }
    NormalizationRecovery r;
    r.samples = samples;
    r.a = std::accumulate(as.begin(), as.end(), 0.0) / samples;
    r.ratio = std::accumulate(ks.begin(), ks.end(), 0.0) / samples;
    for (int i = 0; i < samples; ++i) {
        r.max_deviation = std::max(r.max_deviation, std::abs(as[static_cast<std::size_t>(i)] - r.a));
        r.ratio_spread = std::max(r.ratio_spread, std::abs(ks[static_cast<std::size_t>(i)] - r.ratio));
    }
    return r;
}

// ---------------------------------------------------------------------------
// Invariance

bool invariant_under_diagonal(const BiPoly& f, int k1, int k2, int N) {
    for (const auto& [key, c] : f.terms()) {
        long e = static_cast<long>(k1) * key.first + static_cast<long>(k2) * key.second;
        if (((e % N) + N) % N != 0) return false;
    }
    return true;
}

bool invariant_under_swap(const BiPoly& f) { return f.swapped() == f; }

InvarianceReport verify_invariants(const std::string& group, int m) {
    if (m < 2) throw std::invalid_argument("invariants need m >= 2");
    const BiPoly x1 = BiPoly::z(), x2 = BiPoly::w();
    const BiPoly z = x1 * x2;
    const BiPoly w = BiPoly::constant(Rational(1, 2)) * (x1.pow(m) + x2.pow(m));
    const BiPoly t_re = BiPoly::constant(Rational(1, 2)) * (x1.pow(m) - x2.pow(m));  // t = t_re / i
    InvarianceReport r;
    r.group = group;
    struct Gen {
        int k1, k2, N;
        std::string text;
    };
    std::vector<Gen> gens;
    std::vector<BiPoly> inv;
    if (group == "G(m,m,2)") {
        gens = {{1, -1, m, "diag(w_m, w_m^-1)"}};
        inv = {z, w};
        r.invariants = {"z = " + z.str(), "w = " + w.str()};
        // w^2 + t^2 = z^m with t^2 = -t_re^2.
        r.relation = w * w - t_re * t_re == z.pow(m) && invariant_under_diagonal(t_re, 1, -1, m) &&
                     t_re.swapped() == BiPoly() - t_re;
    } else if (group == "G(2m,2,2)") {
        const int N = 2 * m;
        gens = {{2, -2, N, "diag(w_m, w_m^-1)"}, {1, 1, N, "w_2m I"}, {2, 0, N, "diag(w_m, 1)"}};
        const BiPoly u = z.pow(m), v = w * w;
        inv = {u, v};
        r.invariants = {"u = " + u.str(), "v = " + v.str()};
        // The line u = v is where t vanishes: v - u = t_re^2.
        r.relation = v - u == t_re * t_re;
    } else {
        throw std::invalid_argument("unknown invariant group: " + group);
    }
    r.invariant = true;
    for (const auto& g : gens) {
        r.generators.push_back(g.text);
        for (const auto& f : inv) r.invariant = r.invariant && invariant_under_diagonal(f, g.k1, g.k2, g.N);
    }
    r.generators.push_back("swap");
    for (const auto& f : inv) r.invariant = r.invariant && invariant_under_swap(f);
    return r;
}

}  // namespace conekit
