#pragma once

#include <cmath>
#include <functional>
#include <memory>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "conekit/core.hpp"

namespace conekit {

// The two stereographic charts of CP^1, eta = 1/xi.
enum class Chart { xi, eta };

inline Chart other(Chart c) { return c == Chart::xi ? Chart::eta : Chart::xi; }
std::string to_string(Chart c);

// A point of CP^1 given in one chart. When `puncture` is set, the point is
// position(puncture) + delta with delta known exactly, so that log|z - a| stays
// accurate arbitrarily close to the puncture.
struct SamplePoint {
    Chart chart = Chart::xi;
    cdouble z{};
    int puncture = -1;
    cdouble delta{};

    static SamplePoint at(Chart c, cdouble z) { return {c, z, -1, {}}; }
};

// A marked point as seen from one chart.
struct ChartPuncture {
    int index;     // index into ConeConfig
    cdouble position;
    double beta;
};

// Geometry of a cone configuration in the two charts: positions of the punctures,
// the singular log terms, and the transition u_xi = u_eta + 2c log|eta| + C.
class ChartAtlas {
public:
    ChartAtlas() = default;
    explicit ChartAtlas(const ConeConfig& config);

    const ConeConfig& config() const { return config_; }
    double cone_number() const { return c_; }
    double transition_constant() const { return C_; }

    // Punctures at finite position in the chart.
    const std::vector<ChartPuncture>& punctures(Chart c) const { return c == Chart::xi ? xi_ : eta_; }
    // Chart in which the puncture sits inside the closed unit disc (xi wins ties).
    Chart owner(int index) const { return owner_[static_cast<std::size_t>(index)]; }
    cdouble owner_position(int index) const;
    double beta(int index) const { return beta_[static_cast<std::size_t>(index)]; }

    // Same point expressed in the requested chart; nullopt if it is that chart's point at infinity.
    std::optional<SamplePoint> to_chart(const SamplePoint& p, Chart target) const;

    // sum over punctures finite in the chart of (beta_k - 1) log|z - a_k|.
    double singular_log(const SamplePoint& p) const;
    // Offset d with u_target(p) = u_source(p) + d, for p finite in both charts.
    double transition(const SamplePoint& p, Chart source, Chart target) const;
    // Distance from p to the nearest puncture, measured in p's chart.
    double distance_to_punctures(const SamplePoint& p) const;

private:
    ConeConfig config_;
    double c_ = 1.0;
    double C_ = 0.0;
    std::vector<ChartPuncture> xi_, eta_;
    std::vector<Chart> owner_;
    std::vector<double> beta_;
};

class GridSolution;

// Spherical metric e^{2 phi}|dz|^2 of constant curvature kappa with cone points,
// represented by its continuous regular part u = phi - singular_log in each chart.
class ConformalMetric {
public:
    using RegularPart = std::function<double(const SamplePoint&)>;

    ConformalMetric() = default;
    // `u` must accept points in either chart.
    static ConformalMetric closed_form(const ConeConfig& config, double kappa, RegularPart u, std::string name);
    static ConformalMetric from_grid(std::shared_ptr<const GridSolution> grid);

    const ConeConfig& config() const { return atlas_->config(); }
    const ChartAtlas& atlas() const { return *atlas_; }
    double kappa() const { return kappa_; }
    double cone_number() const { return atlas_->cone_number(); }
    const std::string& name() const { return name_; }

    bool is_grid() const { return grid_ != nullptr; }
    const GridSolution& grid() const { return *grid_; }
    std::shared_ptr<const GridSolution> grid_ptr() const { return grid_; }

    double regular_part(const SamplePoint& p) const;
    double regular_part(Chart c, cdouble z) const { return regular_part(SamplePoint::at(c, z)); }
    // phi in the chart of p.
    double log_factor(const SamplePoint& p) const { return regular_part(p) + atlas_->singular_log(p); }
    double log_factor(Chart c, cdouble z) const { return log_factor(SamplePoint::at(c, z)); }
    double conformal_factor(Chart c, cdouble z) const { return std::exp(2.0 * log_factor(c, z)); }

    // A smooth function equal to the regular part near `center` (a fixed local
    // interpolant for grid solutions), suitable for finite differences.
    std::function<double(const SamplePoint&)> local_regular_part(const SamplePoint& center) const;

    // Same metric scaled by a constant: kappa -> kappa / s^2 when the metric is multiplied by s^2.
    ConformalMetric scaled(double factor) const;

private:
    std::shared_ptr<const ChartAtlas> atlas_;
    double kappa_ = 1.0;
    std::string name_;
    RegularPart u_;
    std::shared_ptr<const GridSolution> grid_;
    double shift_ = 0.0;  // added to u by scaled()
};

// The rugby ball: cone angle 2 pi beta at 0 and infinity, curvature kappa.
template <typename Scalar>
Scalar rugby_ball_factor(const Scalar& beta, const Scalar& abs_z, const Scalar& kappa = Scalar(1)) {
    using std::pow;
    const Scalar p = pow(abs_z, 2 * beta);
    return 4 * beta * beta * pow(abs_z, 2 * beta - 2) / ((1 + p) * (1 + p)) / kappa;
}

// Regular part log(2 beta / sqrt(kappa)) - log(1 + |z|^{2 beta}), identical in both charts.
template <typename Scalar>
Scalar rugby_ball_regular_part(const Scalar& beta, const Scalar& abs_z, const Scalar& kappa = Scalar(1)) {
    using std::log;
    using std::pow;
    return log(2 * beta) - log(kappa) / 2 - log1p(pow(abs_z, 2 * beta));
}

ConformalMetric rugby_ball(double beta, double kappa);
ConformalMetric rugby_ball(const Rational& beta, double kappa);

struct CurvatureEstimate {
    double K;
    double step;
};

// K = -e^{-2 phi} Laplacian(phi) by the 4th-order 9-point cross stencil. Throws if the point is
// within 10 steps of a puncture.
CurvatureEstimate gaussian_curvature_fd(const ConformalMetric& g, const SamplePoint& p, double step = 1e-3);
inline CurvatureEstimate gaussian_curvature_fd(const ConformalMetric& g, cdouble xi, double step = 1e-3) {
    return gaussian_curvature_fd(g, SamplePoint::at(Chart::xi, xi), step);
}

struct AreaResult {
    double area;
    double error_estimate;
    double expected;  // (4 pi / kappa) c
};

struct QuadratureOptions {
    int cartesian_nodes = 321;   // per side of each chart box
    int patch_theta = 64;
    double patch_step = 0.04;
    double tail = 1e-12;
};

AreaResult total_area(const ConformalMetric& g, const QuadratureOptions& opt = {});

// Gauss-Bonnet: (1/2 pi) integral of K dV, with K from finite differences.
struct GaussBonnetResult {
    double value;  // should equal 2c
    double expected;
};
GaussBonnetResult gauss_bonnet(const ConformalMetric& g, const QuadratureOptions& opt = {});

}  // namespace conekit
