#include "conekit/curvesing.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "conekit/core.hpp"

namespace conekit {

std::string to_string(GermFamily f) {
    switch (f) {
        case GermFamily::smooth: return "smooth";
        case GermFamily::ordinary: return "ordinary";
        case GermFamily::newton_edge: return "newton-edge";
    }
    return "?";
}

std::string to_string(TangentConeVerdict v) {
    switch (v) {
        case TangentConeVerdict::product: return "product";
        case TangentConeVerdict::boundary: return "boundary";
        case TangentConeVerdict::non_product: return "non-product";
    }
    return "?";
}

namespace {

using Pt = std::pair<int, int>;

// Lower-left convex hull of the support: vertices from the w-axis side (small i, large j)
// down to the z-axis side, each edge with strictly decreasing j.
std::vector<Pt> newton_polygon(const BiPoly& f) {
    // For each j keep the smallest i.
    std::map<int, int> best;
    for (const auto& [k, c] : f.terms()) {
        auto [i, j] = k;
        auto it = best.find(j);
        if (it == best.end() || i < it->second) best[j] = i;
    }
    // Drop points dominated by a point with smaller j and smaller-or-equal i.
    std::vector<Pt> front;
    int min_i = std::numeric_limits<int>::max();
    for (const auto& [j, i] : best)
        if (i < min_i) {
            front.emplace_back(i, j);
            min_i = i;
        }
    std::reverse(front.begin(), front.end());
    // Lower convex hull, j decreasing, i increasing.
    std::vector<Pt> hull;
    auto cross = [](Pt o, Pt a, Pt b) {
        return static_cast<long>(a.first - o.first) * (b.second - o.second) -
               static_cast<long>(a.second - o.second) * (b.first - o.first);
    };
    for (const auto& p : front) {
        while (hull.size() >= 2 && cross(hull[hull.size() - 2], hull.back(), p) <= 0) hull.pop_back();
        hull.push_back(p);
    }
    return hull;
}

Poly<Rational> dehomogenize(const BiPoly& pd, int d) {
    std::vector<Rational> c(static_cast<std::size_t>(d) + 1, Rational(0));
    for (int i = 0; i <= d; ++i) c[static_cast<std::size_t>(i)] = pd.coeff(i, d - i);
    return Poly<Rational>(std::move(c));
}

}  // namespace

CurveGerm analyze_germ(const BiPoly& f) {
    if (f.is_zero()) throw std::invalid_argument("germ is the zero polynomial");
    if (f.coeff(0, 0) != Rational(0)) throw std::invalid_argument("germ does not vanish at the origin");
    CurveGerm g;
    g.f = f;
    g.normalized = f;
    g.normalization = "identity";
    g.order = f.order();
    const int d = g.order;

    if (d == 1) {
        g.family = GermFamily::smooth;
        g.c0 = Rational(1);
        g.newton_vertices = newton_polygon(f);
        return g;
    }

    const BiPoly pd = f.homogeneous_part(d);
    const Poly<Rational> p = dehomogenize(pd, d);
    const int w_mult = d - p.degree();  // power of w dividing P_d
    const bool p_squarefree = is_squarefree(p);

    if (p_squarefree && w_mult <= 1) {
        g.family = GermFamily::ordinary;
        g.c0 = Rational(2, d);
        g.newton_vertices = newton_polygon(f);
        return g;
    }

    // Single tangent line required from here on.
    BiPoly h = f;
    if (p.degree() == 0) {
        // P_d = c w^d already.
    } else if (w_mult == 0 && distinct_root_count(p) == 1) {
        // P_d = c (z - r w)^d with r rational: r = -coeff_{d-1} / (d coeff_d).
        Rational r = -p.coeff(d - 1) / (Rational(d) * p.leading());
        // New coordinates z' = w, w' = z - r w, i.e. z = w' + r z', w = z'.
        h = f.linear_change(r, Rational(1), Rational(1), Rational(0));
        g.normalization = "z = w' + (" + r.str() + ") z', w = z'";
    } else {
        throw std::invalid_argument(
            "unsupported germ: tangent cone " + pd.str() +
            " has a repeated line together with other lines; only ordinary points and germs with a single "
            "tangent line are handled");
    }
    g.normalized = h;
    g.newton_vertices = newton_polygon(h);
    const auto& V = g.newton_vertices;
    if (V.empty() || V.front() != Pt{0, d})
        throw std::logic_error("normalization did not produce w^d as the tangent cone");
    if (V.size() < 2)
        throw std::invalid_argument("unsupported germ: no compact Newton edge (w^" + std::to_string(d) +
                                    " divides the germ, non-isolated singularity)");
    const Pt a = V[0], b = V[1];
    // Line through (0, d) and (b.first, b.second): i / e + j / d = 1 with e = b.first d / (d - b.second).
    const Rational e = Rational(b.first) * Rational(d) / Rational(d - b.second);
    const Rational c0 = Rational(1, d) + Rational(1) / e;
    // The diagonal must cross this first edge: the crossing point t = 1/c0 lies within [0, b.first].
    if (Rational(1) / c0 > Rational(b.first))
        throw std::invalid_argument("unsupported germ: the diagonal crosses a later Newton edge; the first edge "
                                    "does not determine the singularity exponent");
    // Non-degeneracy of the first edge: its quasi-homogeneous part has no repeated factor.
    const int di = b.first - a.first, dj = a.second - b.second;
    const int gstep = std::gcd(di, dj);
    const int si = di / gstep, sj = dj / gstep;
    std::vector<Rational> edge;
    for (int k = 0; k <= gstep; ++k) edge.push_back(h.coeff(a.first + k * si, a.second - k * sj));
    if (!is_squarefree(Poly<Rational>(edge)))
        throw std::invalid_argument("unsupported germ: the first Newton edge is degenerate (repeated factor); "
                                    "a Puiseux expansion beyond the first edge would be needed");
    g.family = GermFamily::newton_edge;
    g.e = e;
    g.puiseux_ratio = e / Rational(d);
    g.c0 = c0;
    return g;
}

OpenInterval admissible_angle_range(const CurveGerm& g) { return {Rational(1) - g.c0, Rational(1)}; }

OpenInterval flat_cone_angle_window(int m, int n) {
    if (!(2 <= m && m < n)) throw std::invalid_argument("flat cone window needs 2 <= m < n");
    if (std::gcd(m, n) != 1) throw std::invalid_argument("m and n must be co-prime; factor the germ first");
    return {Rational(1) - Rational(1, m) - Rational(1, n), Rational(1) - Rational(1, m) + Rational(1, n)};
}

RescalingResult rescaling_exponent(int m, int n, const Rational& beta) {
    if (!(2 <= m && m < n)) throw std::invalid_argument("rescaling exponent needs 2 <= m < n");
    RescalingResult r;
    r.gamma = collision_angle(m, beta);
    r.exponent = Rational(n) - Rational(m) / r.gamma;
    int s = r.exponent.sign();
    r.verdict = s > 0 ? TangentConeVerdict::product : s == 0 ? TangentConeVerdict::boundary
                                                             : TangentConeVerdict::non_product;
    return r;
}

}  // namespace conekit
