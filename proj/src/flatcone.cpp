#include "conekit/flatcone.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <stdexcept>

namespace conekit {

namespace {

constexpr double kPi = std::numbers::pi;

cdouble ipow(cdouble z, int k) {
    cdouble r = 1.0;
    for (int i = 0; i < k; ++i) r *= z;
    return r;
}

double norm2(const C2& x) { return std::sqrt(std::norm(x[0]) + std::norm(x[1])); }

C2 axpy(const C2& x, double t, const C2& v) { return {x[0] + t * v[0], x[1] + t * v[1]}; }

// Base point of y != 0 in the chart where it lies in the closed unit disc.
SamplePoint base_point(const C2& y) {
    if (std::abs(y[0]) <= std::abs(y[1])) return SamplePoint::at(Chart::xi, y[0] / y[1]);
    return SamplePoint::at(Chart::eta, y[1] / y[0]);
}

// (1/c)|w|^{2c} e^{-u_xi(z/w)} or (1/c) e^{-C}|z|^{2c} e^{-u_eta(w/z)}, with u taken in `chart`.
double base_potential(const ConformalMetric& g, const std::function<double(const SamplePoint&)>& u, Chart chart,
                      const C2& y) {
    const double c = g.cone_number();
    if (y[0] == 0.0 && y[1] == 0.0) return 0.0;
    if (chart == Chart::xi)
        return std::exp(2 * c * std::log(std::abs(y[1])) - u(SamplePoint::at(Chart::xi, y[0] / y[1]))) / c;
    return std::exp(2 * c * std::log(std::abs(y[0])) - u(SamplePoint::at(Chart::eta, y[1] / y[0])) -
                    g.atlas().transition_constant()) /
           c;
}

}  // namespace

FlatConeMetric::FlatConeMetric(ConformalMetric base, int p, int q) : base_(std::move(base)), p_(p), q_(q) {
    if (std::abs(base_.kappa() - 4.0) > 1e-12) throw std::invalid_argument("flat cone needs a curvature-4 base");
    const auto& cfg = base_.config();
    const auto betas = cfg.betas();
    bool zero = false, inf = false;
    for (std::size_t i = 0; i < cfg.size(); ++i) {
        const auto& pt = cfg.points()[i];
        SingularComponent s;
        s.beta = betas[i];
        if (pt.is_infinity()) {
            inf = true;
            s.description = "w = 0";
            s.beta *= p_;
        } else {
            s.slope = pt.value();
            const cdouble a = pt.value();
            if (a == 0.0) {
                zero = true;
                s.description = "z = 0";
                s.beta *= q_;
            } else if (is_seifert()) {
                s.description = "z^" + std::to_string(q_) + " = a w^" + std::to_string(p_);
            } else {
                s.description = "z = a w";
            }
        }
        locus_.push_back(s);
    }
    if (is_seifert()) {
        // Smooth axes still carry |z|^{2q - 2} and |w|^{2p - 2} in the volume density.
        if (!zero) locus_.push_back({"z = 0", cdouble(0.0), static_cast<double>(q_)});
        if (!inf) locus_.push_back({"w = 0", std::nullopt, static_cast<double>(p_)});
    }
}

std::optional<Rational> FlatConeMetric::exact_cone_number() const {
    auto c = base_.config().exact_cone_number();
    if (!c) return std::nullopt;
    return *c * Rational(p_ * q_);
}

double FlatConeMetric::potential(const C2& x) const {
    const C2 y{ipow(x[0], q_), ipow(x[1], p_)};
    if (y[0] == 0.0 && y[1] == 0.0) return 0.0;
    auto u = [this](const SamplePoint& s) { return base_.regular_part(s); };
    return base_potential(base_, u, base_point(y).chart, y) / (p_ * q_);
}

std::function<double(const C2&)> FlatConeMetric::local_potential(const C2& center) const {
    const C2 y0{ipow(center[0], q_), ipow(center[1], p_)};
    const SamplePoint b = base_point(y0);
    auto u = base_.local_regular_part(b);
    const int p = p_, q = q_;
    const ConformalMetric& g = base_;
    return [u, b, p, q, &g](const C2& x) {
        const C2 y{ipow(x[0], q), ipow(x[1], p)};
        return base_potential(g, u, b.chart, y) / (p * q);
    };
}

double FlatConeMetric::predicted_density(const C2& x) const {
    double log_d = 0.0;
    for (const auto& s : locus_) {
        // s.beta is the transverse angle, so the exponent is 2 beta - 2 on the component's defining function.
        cdouble f;
        if (!s.slope) f = x[1];
        else if (*s.slope == 0.0) f = x[0];
        else f = ipow(x[0], q_) - *s.slope * ipow(x[1], p_);
        log_d += (2 * s.beta - 2) * std::log(std::abs(f));
    }
    return std::exp(log_d);
}

double FlatConeMetric::singular_distance(const C2& x) const {
    const double n = norm2(x);
    double d = n;
    for (const auto& s : locus_) {
        double v;
        if (!s.slope) v = std::abs(x[1]) / n;
        else if (*s.slope == 0.0) v = std::abs(x[0]) / n;
        else if (!is_seifert()) v = std::abs(x[0] - *s.slope * x[1]) / (n * std::sqrt(1 + std::norm(*s.slope)));
        else v = std::abs(ipow(x[0], q_) - *s.slope * ipow(x[1], p_)) / std::pow(n, std::max(p_, q_));
        d = std::min(d, v);
    }
    return d;
}

FlatConeMetric build_flat_cone(const ConformalMetric& base) { return FlatConeMetric(base); }

FlatConeMetric build_flat_cone(const ConformalMetric& base, const std::vector<LinearForm>& lines) {
    FlatConeMetric m(base);
    const auto& locus = m.singular_locus();
    if (lines.size() != locus.size())
        throw std::invalid_argument("number of lines does not match the base cone points");
    std::vector<bool> used(locus.size(), false);
    for (const auto& l : lines) {
        // a z + b w vanishes on z = s w with s = -b / a, or on w = 0 when a = 0.
        std::optional<cdouble> slope;
        if (std::abs(l.a) > 1e-14) slope = -l.b / l.a;
        else if (std::abs(l.b) < 1e-14) throw std::invalid_argument("zero linear form");
        bool found = false;
        for (std::size_t k = 0; k < locus.size() && !found; ++k) {
            if (used[k]) continue;
            const auto& s = locus[k].slope;
            const bool match = (!slope && !s) || (slope && s && std::abs(*slope - *s) < 1e-9);
            if (match) used[k] = found = true;
        }
        if (!found) throw std::invalid_argument("line does not match any base cone point");
    }
    return m;
}

FlatConeMetric seifert_flat_pullback(const FlatConeMetric& metric, int p, int q) {
    if (metric.is_seifert()) throw std::invalid_argument("metric is already a Seifert pullback");
    if (p < 1 || q < 1 || std::gcd(p, q) != 1) throw std::invalid_argument("p and q must be positive and co-prime");
    if (p == 1 && q == 1) return metric;
    for (const auto& s : metric.singular_locus()) {
        if (!s.slope && p * s.beta > 1.0 + 1e-12) throw std::invalid_argument("angle at infinity exceeds 1 / p");
        if (s.slope && *s.slope == 0.0 && q * s.beta > 1.0 + 1e-12)
            throw std::invalid_argument("angle at 0 exceeds 1 / q");
    }
    return FlatConeMetric(metric.base(), p, q);
}

Eigen::Matrix2cd complex_hessian_fd(const std::function<double(const C2&)>& f, const C2& x, double h,
                                    bool richardson) {
    if (richardson) {
        const Eigen::Matrix2cd a = complex_hessian_fd(f, x, h, false), b = complex_hessian_fd(f, x, h / 2, false);
        return (4.0 * b - a) / 3.0;
    }
    // Real coordinates (x1, y1, x2, y2).
    auto shift = [&](int i, double t) {
        C2 y = x;
        y[i / 2] += (i % 2 == 0) ? cdouble(t, 0) : cdouble(0, t);
        return y;
    };
    auto shift2 = [&](int i, double t, int j, double s) {
        C2 y = shift(i, t);
        y[j / 2] += (j % 2 == 0) ? cdouble(s, 0) : cdouble(0, s);
        return y;
    };
    const double f0 = f(x);
    double D[4][4];
    for (int i = 0; i < 4; ++i) {
        D[i][i] = (f(shift(i, h)) - 2 * f0 + f(shift(i, -h))) / (h * h);
        for (int j = i + 1; j < 4; ++j)
            D[i][j] = D[j][i] = (f(shift2(i, h, j, h)) - f(shift2(i, h, j, -h)) - f(shift2(i, -h, j, h)) +
                                 f(shift2(i, -h, j, -h))) /
                                (4 * h * h);
    }
    Eigen::Matrix2cd H;
    H(0, 0) = (D[0][0] + D[1][1]) / 4;
    H(1, 1) = (D[2][2] + D[3][3]) / 4;
    H(0, 1) = cdouble(D[0][2] + D[1][3], D[0][3] - D[1][2]) / 4.0;
    H(1, 0) = std::conj(H(0, 1));
    return H;
}

VolumeSample volume_density_fd(const FlatConeMetric& metric, const C2& x, double step, bool richardson) {
    const double reach = richardson ? step : 2 * step;
    if (metric.singular_distance(x) < 10 * reach) throw std::invalid_argument("point too close to the singular locus");
    const auto H = complex_hessian_fd(metric.local_potential(x), x, step, richardson);
    const double det = (H(0, 0) * H(1, 1) - H(0, 1) * H(1, 0)).real();
    const double pred = metric.predicted_density(x);
    return {x, det, pred, std::abs(det - pred) / pred};
}

std::vector<C2> sample_points(const FlatConeMetric& metric, int count, std::uint64_t seed, double min_distance) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    std::vector<C2> out;
    while (static_cast<int>(out.size()) < count) {
        C2 x{cdouble(U(rng), U(rng)), cdouble(U(rng), U(rng))};
        const double n = norm2(x);
        if (n < 0.5 || n > 1.5) continue;
        if (metric.singular_distance(x) < min_distance) continue;
        out.push_back(x);
    }
    return out;
}

double scaling_check(const FlatConeMetric& metric, double lambda, const std::vector<C2>& samples) {
    const double factor = std::pow(lambda, 2 * metric.cone_number());
    double worst = 0.0;
    for (const auto& x : samples) {
        const C2 y{std::pow(lambda, metric.p()) * x[0], std::pow(lambda, metric.q()) * x[1]};
        const double expected = factor * metric.potential(x);
        worst = std::max(worst, std::abs(metric.potential(y) - expected) / expected);
    }
    return worst;
}

double kahler_closedness_fd(const FlatConeMetric& metric, const C2& x, double step) {
    const auto f = metric.local_potential(x);
    const Eigen::Matrix2cd H0 = complex_hessian_fd(f, x, step);
    // dH[c] = d_c H (holomorphic derivative in the c-th coordinate).
    Eigen::Matrix2cd dH[2];
    for (int c = 0; c < 2; ++c) {
        C2 e{0.0, 0.0};
        e[c] = 1.0;
        C2 ie{0.0, 0.0};
        ie[c] = cdouble(0, 1);
        const Eigen::Matrix2cd dx =
            (complex_hessian_fd(f, axpy(x, step, e), step) - complex_hessian_fd(f, axpy(x, -step, e), step)) /
            (2 * step);
        const Eigen::Matrix2cd dy =
            (complex_hessian_fd(f, axpy(x, step, ie), step) - complex_hessian_fd(f, axpy(x, -step, ie), step)) /
            (2 * step);
        dH[c] = 0.5 * (dx - cdouble(0, 1) * dy);
    }
    double worst = 0.0;
    for (int b = 0; b < 2; ++b) worst = std::max(worst, std::abs(dH[1](0, b) - dH[0](1, b)));
    return worst / H0.cwiseAbs().maxCoeff();
}

namespace {

// g(V, V) = sum H_{a bbar} V^a conj(V^b).
double quadratic(const Eigen::Matrix2cd& H, const C2& v) {
    const Eigen::Vector2cd V(v[0], v[1]);
    return (V.transpose() * H * V.conjugate())(0, 0).real();
}

// Circumference of x0 + rho e^{i theta} n, theta in [0, 2 pi).
double circle_length(const FlatConeMetric& metric, const C2& x0, const C2& n, double rho, double step, int nodes) {
    double total = 0.0;
    for (int k = 0; k < nodes; ++k) {
        const cdouble e = std::polar(1.0, 2 * kPi * k / nodes);
        const C2 x{x0[0] + rho * e * n[0], x0[1] + rho * e * n[1]};
        const C2 V{cdouble(0, 1) * rho * e * n[0], cdouble(0, 1) * rho * e * n[1]};
        total += std::sqrt(quadratic(complex_hessian_fd(metric.local_potential(x), x, step), V));
    }
    return total * 2 * kPi / nodes;
}

}  // namespace

double line_cone_angle(const FlatConeMetric& metric, const C2& v, int nodes) {
    if (metric.is_seifert()) throw std::invalid_argument("complex lines are not orbits of the weighted action");
    const double c = metric.cone_number(), step = 1e-3 * norm2(v);
    const double L = circle_length(metric, {0.0, 0.0}, v, 1.0, step, nodes);
    // Distance from 0 to v along rho v; with rho = tau^{1/c} the integrand is bounded (midpoint rule).
    const int m = 32;
    double dist = 0.0;
    for (int k = 0; k < m; ++k) {
        const double tau = (k + 0.5) / m, rho = std::pow(tau, 1.0 / c);
        const C2 x{rho * v[0], rho * v[1]};
        const double speed = std::sqrt(quadratic(complex_hessian_fd(metric.local_potential(x), x, step * rho), v));
        dist += speed * std::pow(tau, 1.0 / c - 1.0) / c;
    }
    dist /= m;
    return L / dist;
}

double transverse_cone_angle(const FlatConeMetric& metric, const C2& x0, const C2& n, double rho, int nodes) {
    auto length = [&](double r) { return circle_length(metric, x0, n, r, r / 20, nodes); };
    const double L0 = length(rho), L1 = length(rho / 10), L2 = length(rho / 100);
    const double b1 = std::log(L0 / L1) / std::log(10.0), b2 = std::log(L1 / L2) / std::log(10.0);
    // The exponent estimate is linear in the radius to first order.
    return 2 * kPi * (b2 + (b2 - b1) / 9.0);
}

double lift_consistency(const FlatConeMetric& metric, const LinkMetric& link, const SamplePoint& p, double t,
                        cdouble dxi, double dt) {
    if (metric.is_seifert()) throw std::invalid_argument("lift consistency is for the Hopf lift");
    const auto& g = metric.base();
    const double c = g.cone_number();
    const double C = p.chart == Chart::eta ? g.atlas().transition_constant() : 0.0;
    auto u = g.local_regular_part(p);
    // Point of the level set r = 1 over base point b with fiber coordinate s.
    auto F = [&](cdouble b, double s) -> C2 {
        SamplePoint q = p;
        q.z = b;
        if (q.puncture >= 0) q.delta += b - p.z;
        const double mod = std::pow(c, 1.0 / (2 * c)) * std::exp((u(q) + C) / (2 * c));
        const cdouble lead = std::polar(mod, s);
        return p.chart == Chart::xi ? C2{b * lead, lead} : C2{lead, b * lead};
    };
    const double eps = 1e-6;
    const C2 a = F(p.z + eps * dxi, t + eps * dt), b = F(p.z - eps * dxi, t - eps * dt);
    const C2 V{(a[0] - b[0]) / (2 * eps), (a[1] - b[1]) / (2 * eps)};
    const C2 x = F(p.z, t);
    const double flat = quadratic(complex_hessian_fd(metric.local_potential(x), x, 1e-3 * norm2(x)), V);
    const Eigen::Vector3d w(dxi.real(), dxi.imag(), dt);
    const double lifted = w.dot(link.form(p) * w);
    return std::abs(flat - lifted) / lifted;
}

}  // namespace conekit
