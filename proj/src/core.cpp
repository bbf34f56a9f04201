#include "conekit/core.hpp"

#include <cmath>

namespace conekit {

ConeConfig::ConeConfig(std::vector<MarkedPoint> points, std::vector<Angle> angles, AngleContext context)
    : points_(std::move(points)), angles_(std::move(angles)), context_(context) {
    if (points_.size() != angles_.size()) throw std::invalid_argument("points and angles differ in length");
    if (points_.size() < 2) throw std::invalid_argument("a cone configuration needs at least two points");
    for (std::size_t i = 0; i < points_.size(); ++i)
        for (std::size_t j = i + 1; j < points_.size(); ++j) {
            const auto& a = points_[i];
            const auto& b = points_[j];
            bool same = a.is_infinity() && b.is_infinity();
            if (!a.is_infinity() && !b.is_infinity()) same = std::abs(a.value() - b.value()) == 0.0;
            if (same) throw std::invalid_argument("marked points must be pairwise distinct");
        }
    AdmissibilityOptions opt;
    opt.context = context_;
    auto b = betas();
    detail::validate_angles(std::span<const double>(b), opt);
    for (const auto& a : angles_)
        if (a.exact && (*a.exact <= Rational(0) || *a.exact > Rational(1)))
            throw std::invalid_argument("cone angle outside (0,1]");
}

std::vector<double> ConeConfig::betas() const {
    std::vector<double> b;
    b.reserve(angles_.size());
    for (const auto& a : angles_) b.push_back(a.value);
    return b;
}

bool ConeConfig::is_exact() const {
    return std::all_of(angles_.begin(), angles_.end(), [](const Angle& a) { return a.exact.has_value(); });
}

std::vector<Rational> ConeConfig::exact_betas() const {
    if (!is_exact()) throw std::logic_error("configuration has floating-point angles");
    std::vector<Rational> b;
    for (const auto& a : angles_) b.push_back(*a.exact);
    return b;
}

double ConeConfig::cone_number() const { return conekit::cone_number(betas()); }

std::optional<Rational> ConeConfig::exact_cone_number() const {
    if (!is_exact()) return std::nullopt;
    return conekit::cone_number(exact_betas());
}

TroyanovReport<double> ConeConfig::troyanov(double tol) const {
    AdmissibilityOptions opt;
    opt.tolerance = tol;
    opt.context = context_;
    auto b = betas();
    return check_troyanov(std::span<const double>(b), opt);
}

std::optional<std::size_t> ConeConfig::infinity_index() const {
    for (std::size_t i = 0; i < points_.size(); ++i)
        if (points_[i].is_infinity()) return i;
    return std::nullopt;
}

namespace {

// Moebius map M(z) = (a z + b) / (c z + d) acting on CP^1.
struct Moebius {
    cdouble a, b, c, d;

    MarkedPoint operator()(const MarkedPoint& p) const {
        if (p.is_infinity()) {
            if (c == 0.0) return MarkedPoint::infinity();
            return MarkedPoint(a / c);
        }
        cdouble z = p.value();
        cdouble den = c * z + d;
        if (std::abs(den) == 0.0) return MarkedPoint::infinity();
        return MarkedPoint((a * z + b) / den);
    }
};

// Map sending p -> 0, q -> 1, r -> infinity.
Moebius three_point(const MarkedPoint& p, const MarkedPoint& q, const MarkedPoint& r) {
    if (r.is_infinity()) {
        cdouble P = p.value(), Q = q.value();
        return {1.0, -P, 0.0, Q - P};
    }
    if (p.is_infinity()) {
        cdouble Q = q.value(), R = r.value();
        return {0.0, Q - R, 1.0, -R};
    }
    if (q.is_infinity()) {
        cdouble P = p.value(), R = r.value();
        return {1.0, -P, 1.0, -R};
    }
    cdouble P = p.value(), Q = q.value(), R = r.value();
    // (z - P)(Q - R) / ((z - R)(Q - P))
    return {Q - R, -P * (Q - R), Q - P, -R * (Q - P)};
}

}  // namespace

ConeConfig ConeConfig::normalized() const {
    const std::size_t d = points_.size();
    Moebius m;
    if (d == 2) {
        const auto& p = points_[0];
        const auto& r = points_[1];
        if (r.is_infinity()) m = {1.0, p.is_infinity() ? 0.0 : -p.value(), 0.0, 1.0};
        else if (p.is_infinity()) m = {0.0, 1.0, 1.0, -r.value()};
        else m = {1.0, -p.value(), 1.0, -r.value()};
    } else {
        m = three_point(points_[d - 3], points_[d - 2], points_[d - 1]);
    }
    std::vector<MarkedPoint> pts;
    for (const auto& p : points_) pts.push_back(m(p));
    // Snap the three anchors so that they are exact.
    if (d == 2) {
        pts[0] = MarkedPoint(0.0);
        pts[1] = MarkedPoint::infinity();
    } else {
        pts[d - 3] = MarkedPoint(0.0);
        pts[d - 2] = MarkedPoint(1.0);
        pts[d - 1] = MarkedPoint::infinity();
    }
    return ConeConfig(std::move(pts), angles_, context_);
}

}  // namespace conekit
