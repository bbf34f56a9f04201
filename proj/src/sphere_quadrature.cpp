#include "conekit/sphere_quadrature.hpp"

#include <algorithm>
#include <limits>

namespace conekit {

namespace {
// Bump profile in t = |z - a| / R: 1 on [0, 0.3], 0 beyond 0.95.
double bump(double t) { return smooth_step((0.95 - t) / 0.65); }
// Chart split in r = |xi|: 1 inside 0.8, 0 beyond 1.25.
double chart_split(double r) { return smooth_step((1.25 - r) / 0.45); }
}  // namespace

double smooth_step(double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double a = std::exp(-1.0 / x);
    const double b = std::exp(-1.0 / (1.0 - x));
    return a / (a + b);
}

double SphereLayout::cartesian_weight(Chart c, cdouble z) const {
    double split;
    if (c == Chart::xi) split = chart_split(std::abs(z));
    else split = std::abs(z) == 0.0 ? 1.0 : 1.0 - chart_split(1.0 / std::abs(z));
    if (split == 0.0) return 0.0;
    double b = 0.0;
    for (const auto& P : patches) {
        cdouble zp = z;
        if (P.chart != c) {
            if (std::abs(z) == 0.0) continue;
            zp = 1.0 / z;
        }
        b += bump(std::abs(zp - P.center) / P.R);
    }
    return split * std::max(0.0, 1.0 - b);
}

double SphereLayout::patch_weight(std::size_t k, double s) const {
    return bump(std::exp(s) / patches[k].R);
}

SphereLayout make_sphere_layout(const ChartAtlas& atlas, const QuadratureOptions& opt, int level) {
    SphereLayout lay;
    lay.atlas = &atlas;
    const auto& cfg = atlas.config();
    double rmin = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < cfg.size(); ++k) {
        const int idx = static_cast<int>(k);
        const Chart c = atlas.owner(idx);
        const cdouble a = atlas.owner_position(idx);
        double dist = std::numeric_limits<double>::infinity();
        for (const auto& q : atlas.punctures(c))
            if (q.index != idx) dist = std::min(dist, std::abs(q.position - a));
        SphereLayout::Patch P;
        P.puncture = idx;
        P.chart = c;
        P.center = a;
        P.beta = atlas.beta(idx);
        P.R = std::min(0.5, 0.35 * dist);
        const int refine = 1 << level;
        P.h = opt.patch_step * refine;
        P.nt = std::max(8, opt.patch_theta / refine);
        const double s_max = std::log(P.R);
        const double span = std::log(1.0 / opt.tail) / (2.0 * P.beta);
        P.ns = static_cast<int>(std::ceil(span / P.h)) + 1;
        P.s_min = s_max - (P.ns - 1) * P.h;
        rmin = std::min(rmin, P.R);
        lay.patches.push_back(P);
    }
    // Resolve the narrowest bump transition with at least a dozen cells.
    int n = opt.cartesian_nodes;
    const double need = 2.0 * lay.L / (0.65 * rmin / 12.0);
    if (need > n) n = static_cast<int>(std::ceil(need));
    if (n % 2 == 0) ++n;
    if (level == 1) n = (n + 1) / 2;
    lay.n = n;
    lay.h = 2.0 * lay.L / (n - 1);
    return lay;
}

}  // namespace conekit
