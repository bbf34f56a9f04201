#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "conekit/lift.hpp"
#include "conekit/spherical.hpp"

namespace conekit {

using C2 = std::array<cdouble, 2>;

// a z + b w
struct LinearForm {
    cdouble a, b;
};

// One component of the singular locus. For p = q = 1 these are the lines z - s w (or w = 0 for the
// point at infinity); for a Seifert pullback the curves z^q = s w^p and the axes z = 0, w = 0.
struct SingularComponent {
    std::string description;
    std::optional<cdouble> slope;  // nullopt: w = 0
    double beta;                   // cone angle 2 pi beta transverse to the component
};

// The flat Kahler cone metric with potential r^2 = (1/c)|w|^{2c} e^{-u(z/w)} over a curvature-4 base,
// where u is the regular part of the base. With (p, q) != (1, 1) this is the pullback of that metric by
// (z, w) -> (z^q, w^p), divided by pq.
class FlatConeMetric {
public:
    FlatConeMetric() = default;
    FlatConeMetric(ConformalMetric base, int p = 1, int q = 1);

    const ConformalMetric& base() const { return base_; }
    int p() const { return p_; }
    int q() const { return q_; }
    bool is_seifert() const { return p_ != 1 || q_ != 1; }
    double base_cone_number() const { return base_.cone_number(); }
    // c, or c~ = pq c_base for a Seifert pullback.
    double cone_number() const { return p_ * q_ * base_.cone_number(); }
    std::optional<Rational> exact_cone_number() const;
    const std::vector<SingularComponent>& singular_locus() const { return locus_; }

    double potential(const C2& x) const;
    // The potential with the base regular part frozen to a local interpolant around `center`
    // (identical to potential() for closed-form bases); use this for finite differences.
    std::function<double(const C2&)> local_potential(const C2& center) const;

    // prod |l_j|^{2 beta_j - 2}, or the Seifert density with |z|^{2 beta_{d-1} - 2}|w|^{2 beta_d - 2}.
    double predicted_density(const C2& x) const;
    // min over components of |f(x)| / |x|^{deg f}, and |x| itself.
    double singular_distance(const C2& x) const;

private:
    ConformalMetric base_;
    int p_ = 1, q_ = 1;
    std::vector<SingularComponent> locus_;
};

// The lines are derived from the base punctures. With explicit lines, each must vanish at a puncture's slope.
FlatConeMetric build_flat_cone(const ConformalMetric& base);
FlatConeMetric build_flat_cone(const ConformalMetric& base, const std::vector<LinearForm>& lines);

// Pullback by (z, w) -> (z^q, w^p). The base must have (possibly smooth) axes at 0 and infinity:
// angle beta_{d-1}/q at 0 and beta_d/p at infinity, both at most 1.
FlatConeMetric seifert_flat_pullback(const FlatConeMetric& metric, int p, int q);

// H_{a bbar} = d_a dbar_b r^2 by second-order central differences (optionally Richardson-extrapolated).
Eigen::Matrix2cd complex_hessian_fd(const std::function<double(const C2&)>& f, const C2& x, double step,
                                    bool richardson = false);

struct VolumeSample {
    C2 point;
    double density;    // det of the FD complex Hessian
    double predicted;  // prod |l_j|^{2 beta_j - 2}
    double relative_error;
};
// Throws when x is within 10 steps of the singular locus or of the origin.
VolumeSample volume_density_fd(const FlatConeMetric& metric, const C2& x, double step = 1e-3,
                               bool richardson = false);

// Points with |x| in [0.5, 1.5] and singular_distance >= min_distance.
std::vector<C2> sample_points(const FlatConeMetric& metric, int count, std::uint64_t seed = 0x5EED,
                              double min_distance = 0.05);

// max |r^2(m_lambda x) - lambda^{2c} r^2(x)| / (lambda^{2c} r^2(x)); m_lambda = (lambda^p z, lambda^q w).
double scaling_check(const FlatConeMetric& metric, double lambda, const std::vector<C2>& samples);

// max over a, b, c of |d_c H_{a bbar} - d_a H_{c bbar}|, relative to max |H|.
double kahler_closedness_fd(const FlatConeMetric& metric, const C2& x, double step = 1e-3);

// Total angle of the restriction to the complex line C v: circumference of |lambda| = 1 over the
// distance from 0 to v, both by quadrature of the FD metric. Should be 2 pi c (p = q = 1).
double line_cone_angle(const FlatConeMetric& metric, const C2& v, int nodes = 128);

// Transverse cone angle at a point x0 of the singular locus, measured on the complex line x0 + lambda n:
// 2 pi times the growth exponent of circle circumferences between radii rho and rho / 10.
double transverse_cone_angle(const FlatConeMetric& metric, const C2& x0, const C2& n, double rho = 1e-3,
                             int nodes = 64);

// Relative difference between g_F(V, V) and r^2 g_bar(dxi, dt) for the tangent vector V of the level set
// r = 1 over the base point p, in the trivialization (xi, t) of the chart of p.
double lift_consistency(const FlatConeMetric& metric, const LinkMetric& link, const SamplePoint& p, double t,
                        cdouble dxi, double dt);

}  // namespace conekit
