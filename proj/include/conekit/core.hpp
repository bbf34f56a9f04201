#pragma once

#include <algorithm>
#include <complex>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

#include "conekit/rational.hpp"

namespace conekit {

using cdouble = std::complex<double>;

template <typename Scalar>
inline constexpr bool is_exact_v = std::is_same_v<Scalar, Rational>;

// A marked point of CP^1 in the xi-chart, or the point at infinity.
class MarkedPoint {
public:
    MarkedPoint(cdouble z) : z_(z) {}  // NOLINT: implicit from finite values
    MarkedPoint(double x) : z_(cdouble(x, 0.0)) {}  // NOLINT
    static MarkedPoint infinity() { return MarkedPoint(); }

    bool is_infinity() const { return !z_.has_value(); }
    cdouble value() const {
        if (!z_) throw std::logic_error("value() of the point at infinity");
        return *z_;
    }
    friend bool operator==(const MarkedPoint&, const MarkedPoint&) = default;

private:
    MarkedPoint() = default;
    std::optional<cdouble> z_;
};

// A cone angle beta, stored as a double and, when supplied that way, as an exact rational.
struct Angle {
    double value = 1.0;
    std::optional<Rational> exact;

    Angle() = default;
    Angle(double v) : value(v) {}  // NOLINT
    Angle(const Rational& r) : value(r.to_double()), exact(r) {}  // NOLINT
    Angle(long n, long d) : Angle(Rational(n, d)) {}
};

// Prop1: every beta in (0,1). Prop2: the last two slots (the Seifert axes) may equal 1.
enum class AngleContext { prop1, prop2 };

struct AdmissibilityOptions {
    double tolerance = 1e-12;
    AngleContext context = AngleContext::prop1;
};

template <typename Scalar>
struct TroyanovReport {
    bool pass = false;
    // d >= 3: 2 - d + sum(beta), and 2 min(beta) - (2 - d + sum(beta)). Both must be positive.
    // d == 2: beta_1 + beta_2 and -|beta_1 - beta_2|; the second must vanish.
    Scalar lower_slack{};
    Scalar upper_slack{};
    std::string reason;
};

namespace detail {

template <typename Scalar>
void validate_angles(std::span<const Scalar> beta, const AdmissibilityOptions& opt) {
    if (beta.size() < 2) throw std::invalid_argument("need at least two cone angles");
    const std::size_t d = beta.size();
    for (std::size_t i = 0; i < d; ++i) {
        const Scalar& b = beta[i];
        bool axis_slot = opt.context == AngleContext::prop2 && i + 2 >= d;
        bool ok = b > Scalar(0) && (b < Scalar(1) || (axis_slot && b == Scalar(1)));
        if (!ok) throw std::invalid_argument("cone angle outside (0,1)");
    }
}

template <typename Scalar>
bool strictly_positive(const Scalar& x, double tol) {
    if constexpr (is_exact_v<Scalar>) {
        (void)tol;
        return x > Scalar(0);
    } else {
        return x > tol;
    }
}

template <typename Scalar>
bool equal_within(const Scalar& a, const Scalar& b, double tol) {
    if constexpr (is_exact_v<Scalar>) {
        (void)tol;
        return a == b;
    } else {
        using std::abs;
        return abs(a - b) <= tol;
    }
}

}  // namespace detail

template <typename Scalar>
Scalar angle_sum(std::span<const Scalar> beta) {
    Scalar s(0);
    for (const auto& b : beta) s += b;
    return s;
}

// c = 1 - d/2 + sum(beta)/2.
template <typename Scalar>
Scalar cone_number(std::span<const Scalar> beta) {
    const Scalar d(static_cast<long>(beta.size()));
    return Scalar(1) - d / Scalar(2) + angle_sum(beta) / Scalar(2);
}

template <typename Scalar>
Scalar cone_number(const std::vector<Scalar>& beta) {
    return cone_number(std::span<const Scalar>(beta));
}

template <typename Scalar>
TroyanovReport<Scalar> check_troyanov(std::span<const Scalar> beta, const AdmissibilityOptions& opt = {}) {
    detail::validate_angles(beta, opt);
    TroyanovReport<Scalar> r;
    const std::size_t d = beta.size();
    if (d == 2) {
        using std::abs;
        Scalar diff = beta[0] - beta[1];
        if (diff < Scalar(0)) diff = -diff;
        r.lower_slack = beta[0] + beta[1];
        r.upper_slack = -diff;
        r.pass = detail::equal_within(beta[0], beta[1], opt.tolerance);
        if (!r.pass) r.reason = "d = 2 requires equal angles";
        return r;
    }
    const Scalar s = Scalar(2) - Scalar(static_cast<long>(d)) + angle_sum(beta);
    const Scalar bmin = *std::min_element(beta.begin(), beta.end());
    r.lower_slack = s;
    r.upper_slack = Scalar(2) * bmin - s;
    const bool lo = detail::strictly_positive(r.lower_slack, opt.tolerance);
    const bool hi = detail::strictly_positive(r.upper_slack, opt.tolerance);
    r.pass = lo && hi;
    if (!lo) r.reason = "2 - d + sum(beta) is not positive";
    else if (!hi) r.reason = "2 - d + sum(beta) is not below 2 min(beta)";
    return r;
}

template <typename Scalar>
TroyanovReport<Scalar> check_troyanov(const std::vector<Scalar>& beta, const AdmissibilityOptions& opt = {}) {
    return check_troyanov(std::span<const Scalar>(beta), opt);
}

template <typename Scalar>
struct TriangleReport {
    bool pass = false;
    std::optional<double> area;  // pi (sum(beta) - 1) on pass
    std::string reason;
};

template <typename Scalar>
TriangleReport<Scalar> check_spherical_triangle(const Scalar& b1, const Scalar& b2, const Scalar& b3,
                                                double tol = 1e-12) {
    const Scalar b[3] = {b1, b2, b3};
    for (const auto& x : b)
        if (!(x > Scalar(0) && x < Scalar(1))) throw std::invalid_argument("triangle angle outside (0,1)");
    TriangleReport<Scalar> r;
    const Scalar s = b1 + b2 + b3;
    if (!detail::strictly_positive(Scalar(s - Scalar(1)), tol)) {
        r.reason = "angle sum not above 1";
        return r;
    }
    for (int i = 0; i < 3; ++i) {
        Scalar others(0);
        for (int j = 0; j < 3; ++j)
            if (j != i) others += Scalar(1) - b[j];
        if (!detail::strictly_positive(Scalar(others - (Scalar(1) - b[i])), tol)) {
            r.reason = "polar triangle inequality fails";
            return r;
        }
    }
    r.pass = true;
    r.area = 3.14159265358979323846 * (to_double(s) - 1.0);
    return r;
}

// gamma = k beta + 1 - k, the angle left when k cone points of angle beta collide.
template <typename Scalar>
Scalar collision_angle(int k, const Scalar& beta) {
    if (k < 1) throw std::invalid_argument("collision multiplicity must be positive");
    if (!(beta > Scalar(0) && beta < Scalar(1))) throw std::invalid_argument("beta outside (0,1)");
    const Scalar K(static_cast<long>(k));
    Scalar g = K * beta + Scalar(1) - K;
    if (!(g > Scalar(0))) throw std::domain_error("collision angle is not positive (beta <= 1 - 1/k)");
    return g;
}

class ConeConfig {
public:
    ConeConfig() = default;
    ConeConfig(std::vector<MarkedPoint> points, std::vector<Angle> angles,
               AngleContext context = AngleContext::prop1);

    std::size_t size() const { return points_.size(); }
    const std::vector<MarkedPoint>& points() const { return points_; }
    const std::vector<Angle>& angles() const { return angles_; }
    AngleContext context() const { return context_; }

    std::vector<double> betas() const;
    bool is_exact() const;
    std::vector<Rational> exact_betas() const;  // throws unless is_exact()

    double cone_number() const;
    std::optional<Rational> exact_cone_number() const;
    TroyanovReport<double> troyanov(double tol = 1e-12) const;

    // Index of the marked point at infinity, if any.
    std::optional<std::size_t> infinity_index() const;

    // Moebius-normalized copy: the last three points go to 0, 1, infinity (d >= 3),
    // or the two points go to 0, infinity (d = 2).
    ConeConfig normalized() const;

private:
    std::vector<MarkedPoint> points_;
    std::vector<Angle> angles_;
    AngleContext context_ = AngleContext::prop1;
};

}  // namespace conekit
