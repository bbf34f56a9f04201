#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "conekit/polynomial.hpp"
#include "conekit/spherical.hpp"

namespace conekit {

using ExactPoly = Poly<QSqrtM3>;

// A fixed line (or orbit of lines) of a reflection group, with cone angle 2 pi beta in the quotient.
struct SingularLine {
    std::string description;
    int count;
    Rational beta;
};

struct GroupSpec {
    std::string family;  // "G(m,p,2)", "tetrahedral", "octahedral", "icosahedral", "C_m", "D_2m", "T", "O", "I"
    int m = 0;
    int p = 0;
    long order = 0;
    long center_order = 0;
    std::vector<int> invariant_degrees;
    std::optional<int> schwarz_degree;  // order / |center| when the quotient map is a map of CP^1
    std::vector<Rational> triangle;     // triangle angles in units of pi
    std::vector<Rational> cone_angles;  // beta of the quotient spherical metric, twice the triangle angles
    std::vector<SingularLine> lines;
    std::string quotient_curve;  // singular curve of the quotient and its angle, when there is one
    std::optional<Rational> quotient_curve_beta;
    std::string du_val_type;     // A_{m-1}, D_{m+2}, E_6, E_7, E_8
    std::string du_val_surface;  // S = {p(z,w,t) = 0}
    std::string branch_curve;
};

// family: "G(m,p,2)" (m, p), "tetrahedral", "octahedral", "icosahedral", or a Du Val
// subgroup of SU(2): "C_m" (order m), "D_2m" (binary dihedral of order 4m), "T", "O", "I".
GroupSpec catalog(const std::string& family, int m = 0, int p = 0);

// eta -> N(eta^s) / D(eta^s) with exact coefficients in Q(i sqrt 3).
struct RationalMap {
    std::string name;
    ExactPoly num, den;  // in t = eta^power
    int power = 1;
    int declared_degree = 0;

    ExactPoly num_eta() const { return num.substitute_power(power); }
    ExactPoly den_eta() const { return den.substitute_power(power); }
    int degree() const;
    bool coprime() const;  // gcd(num, den) = 1

    cdouble operator()(cdouble eta) const;  // infinity reported as inf
    cdouble derivative(cdouble eta) const;
    // The map followed by a Moebius scaling x -> x / s.
    RationalMap divided_by(const QSqrtM3& s) const;
    RationalMap reciprocal() const;
};

// "G(2m,2,2)" (m), "tetrahedral", "octahedral", "icosahedral".
RationalMap schwarz_map(const std::string& family, int m = 0);
// Same map composed with a scaling that puts the critical values at 0, 1, infinity
// (the tetrahedral map is divided by 12 i sqrt 3; the others already are).
RationalMap normalized_schwarz_map(const std::string& family, int m = 0);

struct DegreeReport {
    int degree = 0;                // common count, -1 if the trials disagree
    std::vector<QSqrtM3> values;   // values actually used
    std::vector<int> exact_counts;
    std::vector<int> certified_counts;  // from isolated inclusion discs, -1 if not certified
    int retries = 0;               // values skipped because they were critical
    bool agree = false;
};

// Counts preimages of generic values: distinct roots of num - v den (plus eta = infinity when the degree
// drops), exactly by square-free decomposition and numerically by certified root inclusion.
DegreeReport degree_by_preimages(const RationalMap& f, std::vector<QSqrtM3> values = {}, int trials = 3);

// Preimages of a value (nullopt = infinity): multiplicity -> number of preimages, including eta = infinity.
std::map<int, int> ramification_profile(const RationalMap& f, const std::optional<QSqrtM3>& value);

struct CriticalPoint {
    std::optional<cdouble> point;  // nullopt = eta at infinity
    int order = 0;                 // local degree minus one
};

// Critical points from the exact Wronskian num' den - num den'.
std::vector<CriticalPoint> critical_points(const RationalMap& f);

// The quotient cone configuration: critical values with beta = 1 / local degree, normalized so that the
// values are (0, 1, infinity). Requires exactly three critical values.
struct SchwarzTriangle {
    ConeConfig config;
    std::vector<int> local_degrees;
};
SchwarzTriangle schwarz_triangle(const RationalMap& f);

// Spherical metric of curvature 4 whose pullback by f is the round metric (1 + |eta|^2)^{-2}|d eta|^2.
// The cone points are the critical values of f, which must be (0, 1, infinity) up to the listed config.
ConformalMetric schwarz_metric(const RationalMap& f, const ConeConfig& config);
ConformalMetric schwarz_metric(const RationalMap& f);  // uses schwarz_triangle(f)

// Pullback ratio e^{2 phi(f(eta))} |f'(eta)|^2 (1 + |eta|^2)^2; equals 1 for the Schwarz metric.
double pullback_ratio(const ConformalMetric& g, const RationalMap& f, cdouble eta);

// The closed-form G(2,2,2)-type metric with cone angle pi at 0, 1, infinity and curvature 4.
ConformalMetric base_metric_G222();
// xi = (1 + eta^2)^2 / (4 eta^2), under which base_metric_G222 pulls back to the round metric.
RationalMap base_map_G222();

// Quotient potential of G(2m,2,2) in the invariants u = (x1 x2)^m, v = (x1^m + x2^m)^2 / 4.
struct QuotientPotential {
    int m = 2;
    bool displayed_m2_form = false;  // (|u| + |v| + |u - v|)^{1/2} instead of the general formula
    double a = 1.0;                  // normalizing constant

    double unnormalized(cdouble u, cdouble v) const;
    double operator()(cdouble u, cdouble v) const { return a * unnormalized(u, v); }
    double cone_number() const { return 1.0 / (2.0 * m); }
};

// a is recovered from the volume normalization (see recover_normalization).
QuotientPotential quotient_potential_G2m22(int m, bool displayed_m2_form = true);

std::pair<cdouble, cdouble> invariant_map_G2m22(int m, cdouble x1, cdouble x2);
cdouble invariant_jacobian_G2m22(int m, cdouble x1, cdouble x2);
// prod |l_j|^{2 beta_j - 2} for the lines u = 0 (beta 1/m), v = 0 and u = v (beta 1/2).
double quotient_density_G2m22(int m, cdouble u, cdouble v);

struct NormalizationRecovery {
    double a = 0.0;               // mean of sqrt(density |J|^2) / ratio over the samples
    double max_deviation = 0.0;   // max |a_sample - a|
    double ratio = 0.0;           // potential(Psi(x)) / |x|^2 (unnormalized), should be constant
    double ratio_spread = 0.0;    // max deviation of that ratio
    int samples = 0;
};
NormalizationRecovery recover_normalization(const QuotientPotential& pot, int samples = 200,
                                            std::uint64_t seed = 0x5EED);

// Exact invariance checks. Polynomials are in x1 (written z) and x2 (written w).
bool invariant_under_diagonal(const BiPoly& f, int k1, int k2, int N);  // diag(zeta^k1, zeta^k2), zeta^N = 1
bool invariant_under_swap(const BiPoly& f);

struct InvarianceReport {
    std::string group;
    std::vector<std::string> invariants;
    std::vector<std::string> generators;
    bool invariant = false;
    bool relation = false;  // w^2 + t^2 = z^m for G(m,m,2)
};
// "G(m,m,2)": z = x1 x2, w = (x1^m + x2^m)/2. "G(2m,2,2)": u = z^m, v = w^2.
InvarianceReport verify_invariants(const std::string& group, int m);

}  // namespace conekit
