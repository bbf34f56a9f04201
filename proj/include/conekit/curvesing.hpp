#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "conekit/polynomial.hpp"
#include "conekit/rational.hpp"

namespace conekit {

enum class GermFamily {
    smooth,          // order 1
    ordinary,        // d distinct tangent lines
    newton_edge,     // single tangent line, non-degenerate first Newton edge
};

std::string to_string(GermFamily f);

struct CurveGerm {
    BiPoly f;
    BiPoly normalized;     // f after the linear change making {w = 0} the tangent line
    std::string normalization;  // description of the linear change
    int order = 0;         // d
    GermFamily family = GermFamily::smooth;
    std::vector<std::pair<int, int>> newton_vertices;  // of the normalized germ, (z-exponent, w-exponent)
    std::optional<Rational> e;               // e, with e/d the first Puiseux exponent
    std::optional<Rational> puiseux_ratio;   // e/d
    Rational c0;                             // complex singularity exponent
};

// Throws std::invalid_argument with a diagnostic for germs outside the supported families.
CurveGerm analyze_germ(const BiPoly& f);
inline CurveGerm analyze_germ(const std::string& f) { return analyze_germ(parse_bipoly(f)); }

struct OpenInterval {
    Rational lo;
    Rational hi;
    bool contains(const Rational& x) const { return lo < x && x < hi; }
};

// (1 - c0, 1).
OpenInterval admissible_angle_range(const CurveGerm& g);

// (1 - 1/m - 1/n, 1 - 1/m + 1/n) for co-prime 2 <= m < n.
OpenInterval flat_cone_angle_window(int m, int n);

enum class TangentConeVerdict { product, boundary, non_product };
std::string to_string(TangentConeVerdict v);

struct RescalingResult {
    Rational gamma;     // m beta + 1 - m
    Rational exponent;  // n - m / gamma
    TangentConeVerdict verdict = TangentConeVerdict::boundary;
};

// Exponent of lambda in front of z^n after D_lambda(z, w) = (lambda z, lambda^{1/gamma} w)
// applied to |w^m - z^n|^{2 beta - 2}|dw|^2 and rescaled by lambda^{-2}.
RescalingResult rescaling_exponent(int m, int n, const Rational& beta);

}  // namespace conekit
