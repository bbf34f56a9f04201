#include "conekit/lift.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "conekit/sphere_quadrature.hpp"

namespace conekit {

namespace {

constexpr double kPi = std::numbers::pi;

SamplePoint moved(const SamplePoint& p, cdouble d) {
    SamplePoint q = p;
    q.z += d;
    if (q.puncture >= 0) q.delta += d;
    return q;
}

// Point at log-polar coordinates (s, theta) around the puncture of p.
SamplePoint polar_point(const SamplePoint& p, double s, double th) {
    SamplePoint q = p;
    q.delta = std::polar(std::exp(s), th);
    q.z = (p.z - p.delta) + q.delta;
    return q;
}

template <typename F>
double d4(F&& f, double h) {
    return (-f(2 * h) + 8 * f(h) - 8 * f(-h) + f(-2 * h)) / (12 * h);
}

// (u_s, u_theta) around the puncture of p.
std::array<double, 2> polar_gradient(const std::function<double(const SamplePoint&)>& u, const SamplePoint& p,
                                     double h) {
    const double s = std::log(std::abs(p.delta)), th = std::arg(p.delta);
    return {d4([&](double e) { return u(polar_point(p, s + e, th)); }, h),
            d4([&](double e) { return u(polar_point(p, s, th + e)); }, h)};
}

}  // namespace

ConnectionForm::ConnectionForm(ConformalMetric base, double step)
    : base_(std::move(base)), c_(base_.cone_number()), step_(step) {}

ConnectionForm build_connection(const ConformalMetric& g) {
    if (std::abs(g.kappa() - 4.0) > 1e-12) throw std::invalid_argument("the connection needs a curvature-4 base");
    return ConnectionForm(g);
}

std::array<double, 2> ConnectionForm::at(const SamplePoint& p) const {
    auto u = base_.local_regular_part(p);
    double ux, uy;
    if (p.puncture >= 0) {
        const auto [us, ut] = polar_gradient(u, p, step_);
        const double r = std::abs(p.delta), th = std::arg(p.delta);
        ux = (us * std::cos(th) - ut * std::sin(th)) / r;
        uy = (us * std::sin(th) + ut * std::cos(th)) / r;
    } else {
        const double h = std::min(step_, base_.atlas().distance_to_punctures(p) / 10.0);
        ux = d4([&](double e) { return u(moved(p, e)); }, h);
        uy = d4([&](double e) { return u(moved(p, cdouble(0, e))); }, h);
    }
    return {uy / (2 * c_), -ux / (2 * c_)};
}

double ConnectionForm::curvature_density(const SamplePoint& p) const {
    if (p.puncture >= 0) {
        // d alpha_0 = (dA_theta/ds - dA_s/dtheta) ds dtheta with A_s = u_theta / 2c, A_theta = -u_s / 2c.
        auto u = base_.local_regular_part(p);
        const double s = std::log(std::abs(p.delta)), th = std::arg(p.delta), h = step_;
        auto grad = [&](double ds, double dt) { return polar_gradient(u, polar_point(p, s + ds, th + dt), h); };
        const double dAt_ds = -(grad(h, 0)[0] - grad(-h, 0)[0]) / (2 * h) / (2 * c_);
        const double dAs_dt = (grad(0, h)[1] - grad(0, -h)[1]) / (2 * h) / (2 * c_);
        return (dAt_ds - dAs_dt) * std::exp(-2 * s);
    }
    const double h = std::min(step_, base_.atlas().distance_to_punctures(p) / 20.0);
    const double day_dx = (at(moved(p, h))[1] - at(moved(p, -h))[1]) / (2 * h);
    const double dax_dy = (at(moved(p, cdouble(0, h)))[0] - at(moved(p, cdouble(0, -h)))[0]) / (2 * h);
    return day_dx - dax_dy;
}

double ConnectionForm::expected_curvature_density(const SamplePoint& p) const {
    return 4.0 * std::exp(2.0 * base_.log_factor(p)) / (2.0 * c_);
}

double ConnectionForm::loop_integral(Chart chart, cdouble center, double r, int puncture, int nodes,
                                     const std::function<double(const SamplePoint&)>& gauge) const {
    // alpha_0(d/dtheta) = -(1/2c) du/ds on the circle of radius e^s.
    const double s = std::log(r);
    double total = 0.0;
    for (int k = 0; k < nodes; ++k) {
        const double th = 2 * kPi * k / nodes;
        SamplePoint p{chart, center + std::polar(r, th), puncture, puncture >= 0 ? std::polar(r, th) : cdouble{}};
        auto u = base_.local_regular_part(p);
        auto at_polar = [&](double ds, double dt) {
            const cdouble d = std::polar(std::exp(s + ds), th + dt);
            SamplePoint q = p;
            q.z = center + d;
            if (puncture >= 0) q.delta = d;
            return q;
        };
        const double us = d4([&](double e) { return u(at_polar(e, 0)); }, step_);
        double val = -us / (2 * c_);
        if (gauge) val += d4([&](double e) { return gauge(at_polar(0, e)); }, step_);
        total += val;
    }
    return total * 2 * kPi / nodes;
}

std::vector<HolonomyReport> holonomy_table(const ConnectionForm& a, const std::vector<double>& radii) {
    std::vector<HolonomyReport> out;
    const auto& atlas = a.base().atlas();
    for (std::size_t k = 0; k < a.base().config().size(); ++k) {
        HolonomyReport rep;
        rep.puncture = static_cast<int>(k);
        rep.chart = atlas.owner(static_cast<int>(k));
        const cdouble pos = atlas.owner_position(static_cast<int>(k));
        for (double r : radii) rep.rows.push_back({r, a.loop_integral(rep.chart, pos, r, static_cast<int>(k))});
        rep.monotone = true;
        for (std::size_t i = 1; i < rep.rows.size(); ++i)
            rep.monotone = rep.monotone && std::abs(rep.rows[i].integral) < std::abs(rep.rows[i - 1].integral);
        rep.pass = rep.monotone && !rep.rows.empty() && std::abs(rep.rows.back().integral) < 1e-2;
        out.push_back(std::move(rep));
    }
    return out;
}

TotalCurvature total_curvature(const ConnectionForm& a, const QuadratureOptions& opt) {
    auto cart = [&](const SamplePoint& p) { return a.curvature_density(p); };
    auto polar = [&](std::size_t, double s, double, const SamplePoint& p) {
        return a.curvature_density(p) * std::exp(2 * s);
    };
    const auto est = integrate_with_error(a.base().atlas(), opt, cart, polar);
    return {est.value / (2 * kPi), est.error / (2 * kPi)};
}

// ---------------------------------------------------------------------------

LinkMetric::LinkMetric(ConnectionForm connection, int p, int q) : a_(std::move(connection)), p_(p), q_(q) {}

LinkMetric hopf_lift(const ConformalMetric& g, const ConnectionForm& a) {
    if (&g != &a.base() && g.name() != a.base().name())
        throw std::invalid_argument("connection was built from a different metric");
    return LinkMetric(a);
}

LinkMetric hopf_lift(const ConformalMetric& g) { return LinkMetric(build_connection(g)); }

Eigen::Matrix3d LinkMetric::form(const SamplePoint& p) const {
    const auto [ax, ay] = a_.at(p);
    const double e2 = std::exp(2.0 * a_.base().log_factor(p));
    const double c = a_.cone_number();
    Eigen::Vector3d w(ax, ay, 1.0);
    Eigen::Matrix3d G = c * c * w * w.transpose();
    G(0, 0) += e2;
    G(1, 1) += e2;
    return G;
}

namespace {

// A point of S^3 in S_(p,q)^{-1}(p): z1^q / z2^p = xi (or z2^p / z1^q = eta).
std::array<cdouble, 2> seifert_point(const SamplePoint& pt, int p, int q) {
    // With a = |lead| solve |base|^{2/k} a^{2l/k} + a^2 = 1 by bisection (k, l the two exponents).
    const bool xi = pt.chart == Chart::xi;
    const int k = xi ? q : p, l = xi ? p : q;
    const double m = std::abs(pt.z);
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 200; ++it) {
        const double a = 0.5 * (lo + hi);
        const double f = std::pow(m, 2.0 / k) * std::pow(a, 2.0 * l / k) + a * a - 1.0;
        (f > 0 ? hi : lo) = a;
    }
    const double a = 0.5 * (lo + hi);
    const cdouble other = std::pow(pt.z * std::pow(cdouble(a), l), 1.0 / k);
    return xi ? std::array<cdouble, 2>{other, a} : std::array<cdouble, 2>{a, other};
}

}  // namespace

double LinkMetric::fiber_length(const SamplePoint& p) const {
    if (is_seifert()) return orbit_length(seifert_point(p, p_, q_));
    return 2 * kPi * std::sqrt(form(p)(2, 2));
}

std::array<cdouble, 2> sphere_point(const SamplePoint& p, double t) {
    const double n = std::sqrt(1.0 + std::norm(p.z));
    const cdouble e = std::polar(1.0 / n, t);
    if (p.chart == Chart::xi) return {p.z * e, e};
    return {e, p.z * e};
}

std::array<cdouble, 2> seifert_map(int p, int q, const std::array<cdouble, 2>& z) {
    const cdouble a = std::pow(z[0], q), b = std::pow(z[1], p);
    const double n = std::sqrt(std::norm(a) + std::norm(b));
    return {a / n, b / n};
}

double LinkMetric::hopf_quadratic(const std::array<cdouble, 2>& z, const std::array<cdouble, 2>& v) const {
    const bool xi = std::abs(z[0]) <= std::abs(z[1]);
    // Base coordinate and fiber angle of the trivialization, and their differentials along v.
    const cdouble lead = xi ? z[1] : z[0], other_z = xi ? z[0] : z[1];
    const cdouble lead_v = xi ? v[1] : v[0], other_v = xi ? v[0] : v[1];
    const cdouble base = other_z / lead;
    const cdouble dbase = (other_v - base * lead_v) / lead;
    const double dt = std::imag(lead_v / lead);
    const SamplePoint p = SamplePoint::at(xi ? Chart::xi : Chart::eta, base);
    const auto [ax, ay] = a_.at(p);
    const double c = a_.cone_number();
    const double conn = dt + ax * dbase.real() + ay * dbase.imag();
    return std::exp(2.0 * a_.base().log_factor(p)) * std::norm(dbase) + c * c * conn * conn;
}

double LinkMetric::quadratic(const std::array<cdouble, 2>& z, const std::array<cdouble, 2>& v) const {
    if (!is_seifert()) return hopf_quadratic(z, v);
    const double eps = 1e-6;
    const std::array<cdouble, 2> zp{z[0] + eps * v[0], z[1] + eps * v[1]}, zm{z[0] - eps * v[0], z[1] - eps * v[1]};
    const auto a = seifert_map(p_, q_, zp), b = seifert_map(p_, q_, zm);
    const std::array<cdouble, 2> dv{(a[0] - b[0]) / (2 * eps), (a[1] - b[1]) / (2 * eps)};
    return hopf_quadratic(seifert_map(p_, q_, z), dv);
}

double LinkMetric::orbit_length(const std::array<cdouble, 2>& z, int nodes) const {
    double total = 0.0;
    for (int k = 0; k < nodes; ++k) {
        const double t = 2 * kPi * k / nodes;
        const std::array<cdouble, 2> zt{z[0] * std::polar(1.0, p_ * t), z[1] * std::polar(1.0, q_ * t)};
        const std::array<cdouble, 2> X{cdouble(0, p_) * zt[0], cdouble(0, q_) * zt[1]};
        total += std::sqrt(quadratic(zt, X));
    }
    return total * 2 * kPi / nodes;
}

LinkMetric seifert_pullback(const LinkMetric& link, int p, int q) {
    if (link.is_seifert()) throw std::invalid_argument("link is already a Seifert pullback");
    if (p < 1 || q < 1 || std::gcd(p, q) != 1) throw std::invalid_argument("p and q must be positive and co-prime");
    if (!(p == 1 && q == 1) && !(p < q)) throw std::invalid_argument("Seifert data needs 1 <= p < q");
    const auto& cfg = link.base().config();
    bool zero = false, inf = false;
    for (std::size_t i = 0; i < cfg.size(); ++i) {
        const auto& pt = cfg.points()[i];
        const double b = cfg.angles()[i].value;
        if (pt.is_infinity()) {
            inf = true;
            if (p * b > 1.0 + 1e-12) throw std::invalid_argument("axis angle p * beta at infinity exceeds 1");
        } else if (pt.value() == cdouble(0.0, 0.0)) {
            zero = true;
            if (q * b > 1.0 + 1e-12) throw std::invalid_argument("axis angle q * beta at 0 exceeds 1");
        }
    }
    if ((p != 1 || q != 1) && (!zero || !inf)) throw std::invalid_argument("Seifert base needs cone points at 0 and infinity");
    return LinkMetric(link.connection(), p, q);
}


LinkVolume link_volume(const LinkMetric& link, const QuadratureOptions& opt) {
    const double c = link.cone_number();
    const double expected = 2 * kPi * kPi * c * c * link.p() * link.q();
    const auto& atlas = link.base().atlas();
    if (!link.is_seifert()) {
        auto cart = [&](const SamplePoint& p) { return 2 * kPi * std::sqrt(link.form(p).determinant()); };
        auto polar = [&](std::size_t, double s, double, const SamplePoint& p) {
            return 2 * kPi * std::sqrt(link.form(p).determinant()) * std::exp(2 * s);
        };
        const auto est = integrate_with_error(atlas, opt, cart, polar);
        return {est.value, est.error, expected};
    }
    QuadratureOptions coarse = opt;
    coarse.cartesian_nodes = std::min(opt.cartesian_nodes, 161);
    coarse.patch_theta = std::min(opt.patch_theta, 32);
    auto length = [&](const SamplePoint& p) { return link.orbit_length(seifert_point(p, link.p(), link.q()), 16); };
    auto cart = [&](const SamplePoint& p) { return length(p) * std::exp(2 * link.base().log_factor(p)); };
    auto polar = [&](std::size_t, double s, double, const SamplePoint& p) {
        return length(p) * std::exp(2 * (link.base().log_factor(p) + s));
    };
    const auto est = integrate_with_error(atlas, coarse, cart, polar);
    return {est.value, est.error, expected};
}

double submersion_residual(const LinkMetric& link, const SamplePoint& p, cdouble v) {
    const auto [ax, ay] = link.connection().at(p);
    const Eigen::Vector3d V(v.real(), v.imag(), -(ax * v.real() + ay * v.imag()));
    const double lifted = V.dot(link.form(p) * V);
    const double base = std::exp(2.0 * link.base().log_factor(p)) * std::norm(v);
    return std::abs(lifted - base) / base;
}

}  // namespace conekit
