#pragma once

#include <cmath>
#include <vector>

#include "conekit/spherical.hpp"

namespace conekit {

// Partition of unity on CP^1 used by every sphere integral: a smooth bump around
// each puncture (integrated in log-polar coordinates s = log|z - a|, theta) and,
// for the remainder, a smooth split between the xi and eta chart boxes.
struct SphereLayout {
    struct Patch {
        int puncture;
        Chart chart;
        cdouble center;
        double beta;
        double R;  // bump radius in the owner chart
        double s_min, h;
        int ns, nt;
        double s(int i) const { return s_min + i * h; }
    };

    const ChartAtlas* atlas = nullptr;
    std::vector<Patch> patches;
    int n = 0;       // Cartesian nodes per side
    double L = 1.3;  // half width of each chart box
    double h = 0.0;

    double x(int i) const { return -L + i * h; }
    // Weight of the Cartesian part at a point of the given chart.
    double cartesian_weight(Chart c, cdouble z) const;
    // Bump value at radius e^s of patch k.
    double patch_weight(std::size_t k, double s) const;
};

double smooth_step(double x);  // 0 for x <= 0, 1 for x >= 1, C-infinity in between

// level 0 is the fine layout, level 1 halves every resolution (nested nodes).
SphereLayout make_sphere_layout(const ChartAtlas& atlas, const QuadratureOptions& opt, int level = 0);

// Integrates a density over CP^1. `cart(p)` is the density against dx dy in p's
// chart; `polar(k, s, theta, p)` is the density against ds dtheta on patch k.
template <typename Cart, typename Polar>
double integrate(const SphereLayout& lay, Cart&& cart, Polar&& polar) {
    double total = 0.0;
    for (Chart c : {Chart::xi, Chart::eta}) {
        double part = 0.0;
        for (int i = 0; i < lay.n; ++i)
            for (int j = 0; j < lay.n; ++j) {
                const cdouble z(lay.x(i), lay.x(j));
                const double w = lay.cartesian_weight(c, z);
                if (w == 0.0) continue;
                part += w * cart(SamplePoint::at(c, z));
            }
        total += part * lay.h * lay.h;
    }
    for (std::size_t k = 0; k < lay.patches.size(); ++k) {
        const auto& P = lay.patches[k];
        const double ht = 2.0 * std::numbers::pi / P.nt;
        double part = 0.0;
        for (int i = 0; i < P.ns; ++i) {
            const double s = P.s(i);
            double w = lay.patch_weight(k, s);
            if (i == 0) w = 0.5 * w + 1.0 / (2.0 * P.beta * P.h);  // trapezoid end plus exponential tail
            else if (i == P.ns - 1) w *= 0.5;
            if (w == 0.0) continue;
            double row = 0.0;
            for (int t = 0; t < P.nt; ++t) {
                const double th = t * ht;
                const cdouble delta = std::polar(std::exp(s), th);
                SamplePoint p{P.chart, P.center + delta, P.puncture, delta};
                row += polar(k, s, th, p);
            }
            part += w * row;
        }
        total += part * P.h * ht;
    }
    return total;
}

struct IntegralEstimate {
    double value;
    double error;
};

template <typename Cart, typename Polar>
IntegralEstimate integrate_with_error(const ChartAtlas& atlas, const QuadratureOptions& opt, Cart&& cart,
                                      Polar&& polar) {
    const double fine = integrate(make_sphere_layout(atlas, opt, 0), cart, polar);
    const double coarse = integrate(make_sphere_layout(atlas, opt, 1), cart, polar);
    return {fine, std::abs(fine - coarse)};
}

}  // namespace conekit
