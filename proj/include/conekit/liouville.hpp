#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "conekit/spherical.hpp"

namespace conekit {

struct SolverOptions {
    int grid = 257;            // nodes per side of each chart box
    double half_width = 2.0;   // chart boxes are [-2, 2]^2
    int patch_theta = 96;      // angular nodes on each puncture patch
    double newton_tol = 1e-10;
    int max_newton = 30;
    bool continuation = true;
    double continuation_step = 0.05;
    bool verbose = false;
};

struct SolverReport {
    bool converged = false;
    int newton_iterations = 0;
    int continuation_steps = 0;
    double residual = 0.0;  // max discrete residual over equation rows
    std::size_t unknowns = 0;
    double seconds = 0.0;
    std::string message;
};

// Uniform grid on one chart box. kind: 0 unused (hole or box edge), 1 equation node, 2 interpolated.
struct CartesianGrid {
    Chart chart = Chart::xi;
    int n = 0;
    double L = 2.0;
    double h = 0.0;
    std::vector<double> u;
    std::vector<std::int8_t> kind;

    double x(int i) const { return -L + i * h; }
    std::size_t at(int i, int j) const { return static_cast<std::size_t>(i) * n + j; }  // i along Re z
};

// Log-polar grid z = center + e^{s + i theta} around one puncture, in its owner chart.
struct PolarPatch {
    int puncture = 0;
    Chart chart = Chart::xi;
    cdouble center{};
    double beta = 1.0;
    double R = 0.5;  // outer radius
    double s_min = 0.0;
    double h = 0.0;  // step in both s and theta
    int ns = 0, nt = 0;
    std::vector<double> u;

    double s(int i) const { return s_min + i * h; }
    std::size_t at(int i, int t) const { return static_cast<std::size_t>(i) * nt + t; }
};

class GridSolution {
public:
    ConeConfig config;
    double kappa = 1.0;
    ChartAtlas atlas;
    std::array<CartesianGrid, 2> charts;
    std::vector<PolarPatch> patches;
    SolverOptions options;
    SolverReport report;

    const CartesianGrid& chart(Chart c) const { return charts[c == Chart::xi ? 0 : 1]; }

    // Regular part u in the chart of p, by local Lagrange interpolation (order 6 when possible).
    double regular_part(const SamplePoint& p) const;
    // The fixed interpolating polynomial around p, for finite differences.
    std::function<double(const SamplePoint&)> local(const SamplePoint& p) const;

    // Every equation node with its value.
    struct Node {
        SamplePoint p;
        double u;
    };
    std::vector<Node> nodes() const;
};

// Solves Laplacian(phi) = -kappa e^{2 phi} for the continuous regular part u.
GridSolution solve_liouville_grid(const ConeConfig& config, double kappa, const SolverOptions& opt = {});
ConformalMetric solve_liouville(const ConeConfig& config, double kappa, const SolverOptions& opt = {});

}  // namespace conekit
