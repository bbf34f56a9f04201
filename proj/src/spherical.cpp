#include "conekit/spherical.hpp"

#include <limits>
#include <stdexcept>

#include "conekit/liouville.hpp"
#include "conekit/sphere_quadrature.hpp"

namespace conekit {

std::string to_string(Chart c) { return c == Chart::xi ? "xi" : "eta"; }

ChartAtlas::ChartAtlas(const ConeConfig& config) : config_(config) {
    c_ = config.cone_number();
    const auto b = config.betas();
    beta_ = b;
    for (std::size_t k = 0; k < config.size(); ++k) {
        const int idx = static_cast<int>(k);
        const auto& pt = config.points()[k];
        if (pt.is_infinity()) {
            eta_.push_back({idx, 0.0, b[k]});
            owner_.push_back(Chart::eta);
            continue;
        }
        const cdouble a = pt.value();
        xi_.push_back({idx, a, b[k]});
        if (std::abs(a) != 0.0) {
            eta_.push_back({idx, 1.0 / a, b[k]});
            C_ -= (b[k] - 1.0) * std::log(std::abs(a));
        }
        owner_.push_back(std::abs(a) <= 1.0 ? Chart::xi : Chart::eta);
    }
}

cdouble ChartAtlas::owner_position(int index) const {
    for (const auto& q : punctures(owner(index)))
        if (q.index == index) return q.position;
    throw std::logic_error("puncture missing from its owner chart");
}

std::optional<SamplePoint> ChartAtlas::to_chart(const SamplePoint& p, Chart target) const {
    if (p.chart == target) return p;
    if (p.z == 0.0) return std::nullopt;
    SamplePoint q = SamplePoint::at(target, 1.0 / p.z);
    if (p.puncture >= 0) {
        for (const auto& t : punctures(target))
            if (t.index == p.puncture) {
                // 1/(a + d) - 1/a = -d / (a (a + d))
                const cdouble a = 1.0 / t.position;
                q.puncture = p.puncture;
                q.delta = -p.delta / (a * (a + p.delta));
                q.z = t.position + q.delta;
            }
    }
    return q;
}

double ChartAtlas::singular_log(const SamplePoint& p) const {
    double s = 0.0;
    for (const auto& q : punctures(p.chart)) {
        const double r = q.index == p.puncture ? std::abs(p.delta) : std::abs(p.z - q.position);
        s += (q.beta - 1.0) * std::log(r);
    }
    return s;
}

double ChartAtlas::transition(const SamplePoint& p, Chart source, Chart target) const {
    if (source == target) return 0.0;
    const double log_eta = p.chart == Chart::eta ? std::log(std::abs(p.z)) : -std::log(std::abs(p.z));
    const double d = 2.0 * c_ * log_eta + C_;  // u_xi - u_eta
    return target == Chart::xi ? d : -d;
}

double ChartAtlas::distance_to_punctures(const SamplePoint& p) const {
    double d = std::numeric_limits<double>::infinity();
    for (const auto& q : punctures(p.chart))
        d = std::min(d, q.index == p.puncture ? std::abs(p.delta) : std::abs(p.z - q.position));
    return d;
}

// ---------------------------------------------------------------------------

ConformalMetric ConformalMetric::closed_form(const ConeConfig& config, double kappa, RegularPart u,
                                             std::string name) {
    ConformalMetric g;
    g.atlas_ = std::make_shared<const ChartAtlas>(config);
    g.kappa_ = kappa;
    g.u_ = std::move(u);
    g.name_ = std::move(name);
    return g;
}

ConformalMetric ConformalMetric::from_grid(std::shared_ptr<const GridSolution> grid) {
    ConformalMetric g;
    g.atlas_ = std::make_shared<const ChartAtlas>(grid->atlas);
    g.kappa_ = grid->kappa;
    g.name_ = "liouville-grid";
    g.grid_ = std::move(grid);
    return g;
}

double ConformalMetric::regular_part(const SamplePoint& p) const {
    return (grid_ ? grid_->regular_part(p) : u_(p)) + shift_;
}

std::function<double(const SamplePoint&)> ConformalMetric::local_regular_part(const SamplePoint& center) const {
    if (!grid_) {
        if (shift_ == 0.0) return u_;
        return [u = u_, s = shift_](const SamplePoint& p) { return u(p) + s; };
    }
    auto f = grid_->local(center);
    if (shift_ == 0.0) return f;
    return [f, s = shift_](const SamplePoint& p) { return f(p) + s; };
}

ConformalMetric ConformalMetric::scaled(double factor) const {
    ConformalMetric g = *this;
    g.shift_ += std::log(factor);
    g.kappa_ /= factor * factor;
    return g;
}

// ---------------------------------------------------------------------------

namespace {
ConformalMetric make_rugby(const ConeConfig& cfg, double beta, double kappa) {
    if (!(beta > 0.0 && beta <= 1.0)) throw std::invalid_argument("rugby ball needs beta in (0,1]");
    auto u = [beta, kappa](const SamplePoint& p) { return rugby_ball_regular_part(beta, std::abs(p.z), kappa); };
    return ConformalMetric::closed_form(cfg, kappa, u, "rugby-ball");
}
}  // namespace

ConformalMetric rugby_ball(double beta, double kappa) {
    // beta = 1 is the round sphere, allowed here as the Seifert-axis case.
    ConeConfig cfg({0.0, MarkedPoint::infinity()}, {beta, beta},
                   beta == 1.0 ? AngleContext::prop2 : AngleContext::prop1);
    return make_rugby(cfg, beta, kappa);
}

ConformalMetric rugby_ball(const Rational& beta, double kappa) {
    ConeConfig cfg({0.0, MarkedPoint::infinity()}, {beta, beta},
                   beta == Rational(1) ? AngleContext::prop2 : AngleContext::prop1);
    return make_rugby(cfg, beta.to_double(), kappa);
}

namespace {
SamplePoint shifted(const SamplePoint& p, cdouble d) {
    SamplePoint q = p;
    q.z += d;
    if (q.puncture >= 0) q.delta += d;
    return q;
}
}  // namespace

CurvatureEstimate gaussian_curvature_fd(const ConformalMetric& g, const SamplePoint& p, double step) {
    if (g.atlas().distance_to_punctures(p) <= 10.0 * step)
        throw std::domain_error("curvature sample point within 10 steps of a puncture");
    auto u = g.local_regular_part(p);
    const double u0 = u(p);
    // Fourth-order stencil; the r^{2 beta} part of u near a small-angle cone point defeats the 5-point one.
    double lap = -60.0 * u0;
    for (cdouble d : {cdouble(step, 0), cdouble(0, step)})
        lap += 16.0 * (u(shifted(p, d)) + u(shifted(p, -d))) - (u(shifted(p, 2.0 * d)) + u(shifted(p, -2.0 * d)));
    lap /= 12.0 * step * step;
    const double phi = u0 + g.atlas().singular_log(p);
    return {-std::exp(-2.0 * phi) * lap, step};
}

AreaResult total_area(const ConformalMetric& g, const QuadratureOptions& opt) {
    auto cart = [&](const SamplePoint& p) { return std::exp(2.0 * g.log_factor(p)); };
    auto polar = [&](std::size_t, double s, double, const SamplePoint& p) {
        return std::exp(2.0 * (g.log_factor(p) + s));
    };
    const auto est = integrate_with_error(g.atlas(), opt, cart, polar);
    return {est.value, est.error, 4.0 * std::numbers::pi / g.kappa() * g.cone_number()};
}

GaussBonnetResult gauss_bonnet(const ConformalMetric& g, const QuadratureOptions& opt) {
    // K dV = -Laplacian(u) dx dy off the punctures; on a patch the (s, theta) Laplacian is used directly.
    const double hc = 1e-3;
    auto cart = [&](const SamplePoint& p) {
        auto u = g.local_regular_part(p);
        const double lap = (u(shifted(p, hc)) + u(shifted(p, -hc)) + u(shifted(p, cdouble(0, hc))) +
                            u(shifted(p, cdouble(0, -hc))) - 4.0 * u(p)) /
                           (hc * hc);
        return -lap;
    };
    auto polar = [&](std::size_t, double s, double th, const SamplePoint& p) {
        auto u = g.local_regular_part(p);
        auto at = [&](double ds, double dt) {
            const cdouble d = std::polar(std::exp(s + ds), th + dt);
            SamplePoint q = p;
            q.delta = d;
            q.z = (p.z - p.delta) + d;
            return u(q);
        };
        const double lap = (at(hc, 0) + at(-hc, 0) + at(0, hc) + at(0, -hc) - 4.0 * at(0, 0)) / (hc * hc);
        return -lap;
    };
    const auto est = integrate_with_error(g.atlas(), opt, cart, polar);
    return {est.value / (2.0 * std::numbers::pi), 2.0 * g.cone_number()};
}

}  // namespace conekit
