#pragma once

#include <array>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "conekit/spherical.hpp"

namespace conekit {

// alpha_0 = (i / 2c)(del u - delbar u) = (1 / 2c)(u_y dx - u_x dy) in each chart. In the eta chart this is
// beta_0 = d(arg eta) + alpha_0, which has the same expression in terms of u_eta.
class ConnectionForm {
public:
    ConnectionForm() = default;
    explicit ConnectionForm(ConformalMetric base, double step = 1e-3);

    const ConformalMetric& base() const { return base_; }
    double cone_number() const { return c_; }
    double step() const { return step_; }

    // Components (a_x, a_y) of alpha_0 at p, from 4th-order central differences of the regular part.
    std::array<double, 2> at(const SamplePoint& p) const;
    // d alpha_0 / (dx dy) at p, as the curl of the finite-difference components.
    double curvature_density(const SamplePoint& p) const;
    // What the curvature should be: K e^{2 phi} / (2c) with K = 4.
    double expected_curvature_density(const SamplePoint& p) const;

    // Loop integral of alpha_0 (+ dh when a gauge function is given) counterclockwise around
    // |z - center| = r in `chart`. A cone point at `center` is passed as `puncture` so that radii
    // down to the patch floor stay exact.
    double loop_integral(Chart chart, cdouble center, double r, int puncture = -1, int nodes = 256,
                         const std::function<double(const SamplePoint&)>& gauge = {}) const;

private:
    ConformalMetric base_;
    double c_ = 1.0;
    double step_ = 1e-3;
};

// Throws unless the base has curvature 4.
ConnectionForm build_connection(const ConformalMetric& g);

struct HolonomyRow {
    double radius;
    double integral;
};
struct HolonomyReport {
    int puncture = 0;
    Chart chart = Chart::xi;
    std::vector<HolonomyRow> rows;
    bool monotone = false;  // |integral| strictly decreasing with the radius
    bool pass = false;      // monotone and the last |integral| < 1e-2
};
std::vector<HolonomyReport> holonomy_table(const ConnectionForm& a,
                                           const std::vector<double>& radii = {1e-1, 1e-2, 1e-3, 1e-4});

struct TotalCurvature {
    double value;  // (1 / 2 pi) integral of d alpha over CP^1, should be 1
    double error_estimate;
};
TotalCurvature total_curvature(const ConnectionForm& a, const QuadratureOptions& opt = {});

// The lift g_bar = H^* g + c^2 alpha^2 on S^3, or its pullback by Psi_(p,q) when (p, q) != (1, 1).
class LinkMetric {
public:
    LinkMetric() = default;
    LinkMetric(ConnectionForm connection, int p = 1, int q = 1);

    const ConnectionForm& connection() const { return a_; }
    const ConformalMetric& base() const { return a_.base(); }
    double cone_number() const { return a_.cone_number(); }
    int p() const { return p_; }
    int q() const { return q_; }
    bool is_seifert() const { return p_ != 1 || q_ != 1; }
    // c for the Hopf lift, pq c for the Seifert pullback.
    double fiber_scale() const { return p_ * q_ * a_.cone_number(); }

    // The Hopf lift as a quadratic form in the trivialization coordinates (x, y, t) over p.
    Eigen::Matrix3d form(const SamplePoint& p) const;
    // Length of the S^1 orbit through a point over p, from the form: 2 pi c (Hopf).
    double fiber_length(const SamplePoint& p) const;
    // The metric on a tangent vector v at a point z of S^3 subset C^2 (pulled back by Psi_(p,q) if set).
    double quadratic(const std::array<cdouble, 2>& z, const std::array<cdouble, 2>& v) const;
    // Length of the orbit of e^{it}(z1, z2) = (e^{ipt} z1, e^{iqt} z2) through z, by quadrature.
    double orbit_length(const std::array<cdouble, 2>& z, int nodes = 64) const;

private:
    double hopf_quadratic(const std::array<cdouble, 2>& z, const std::array<cdouble, 2>& v) const;
    ConnectionForm a_;
    int p_ = 1, q_ = 1;
};

LinkMetric hopf_lift(const ConformalMetric& g, const ConnectionForm& a);
LinkMetric hopf_lift(const ConformalMetric& g);

// Pullback by Psi_(p,q)(z1, z2) = (z1^q, z2^p) / sqrt(|z1|^{2q} + |z2|^{2p}). The base of `link` must have
// cone points at xi = 0 (angle beta_{d-1} / q) and xi = infinity (angle beta_d / p). Requires gcd(p, q) = 1
// and 1 <= p < q, or p = q = 1.
LinkMetric seifert_pullback(const LinkMetric& link, int p, int q);

std::array<cdouble, 2> seifert_map(int p, int q, const std::array<cdouble, 2>& z);
// Point of S^3 over a base point, with fiber coordinate t (in the chart of p).
std::array<cdouble, 2> sphere_point(const SamplePoint& p, double t);

struct LinkVolume {
    double volume;
    double error_estimate;
    double expected;  // 2 pi^2 c^2, times pq for the Seifert pullback
};
// Hopf: integral of sqrt(det form) over the base times 2 pi. Seifert: integral over the base of the
// numerically computed orbit length, against the base area form.
LinkVolume link_volume(const LinkMetric& link, const QuadratureOptions& opt = {});

// |g_bar(horizontal lift of v) - g(v, v)| / g(v, v) at p.
double submersion_residual(const LinkMetric& link, const SamplePoint& p, cdouble v);

}  // namespace conekit
