#pragma once

#include <complex>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "conekit/rational.hpp"

namespace conekit {

// Element a + b s of Q(s), s^2 = -3 (so s = i sqrt(3)). With b = 0 this is plain Q.
class QSqrtM3 {
public:
    QSqrtM3() = default;
    QSqrtM3(const Rational& a, const Rational& b = Rational(0)) : a_(a), b_(b) {}  // NOLINT
    QSqrtM3(long a) : a_(a) {}  // NOLINT
    QSqrtM3(int a) : a_(a) {}   // NOLINT

    const Rational& rational_part() const { return a_; }
    const Rational& s_part() const { return b_; }
    bool is_rational() const { return b_ == Rational(0); }
    bool is_zero() const { return a_ == Rational(0) && b_ == Rational(0); }
    std::complex<double> to_complex() const;
    std::string str() const;

    QSqrtM3& operator+=(const QSqrtM3& o) { a_ += o.a_; b_ += o.b_; return *this; }
    QSqrtM3& operator-=(const QSqrtM3& o) { a_ -= o.a_; b_ -= o.b_; return *this; }
    QSqrtM3& operator*=(const QSqrtM3& o);
    QSqrtM3& operator/=(const QSqrtM3& o);
    friend QSqrtM3 operator+(QSqrtM3 x, const QSqrtM3& y) { return x += y; }
    friend QSqrtM3 operator-(QSqrtM3 x, const QSqrtM3& y) { return x -= y; }
    friend QSqrtM3 operator*(QSqrtM3 x, const QSqrtM3& y) { return x *= y; }
    friend QSqrtM3 operator/(QSqrtM3 x, const QSqrtM3& y) { return x /= y; }
    QSqrtM3 operator-() const { return {-a_, -b_}; }
    friend bool operator==(const QSqrtM3& x, const QSqrtM3& y) { return x.a_ == y.a_ && x.b_ == y.b_; }

private:
    Rational a_;
    Rational b_;
};

namespace detail {
template <typename F> bool is_zero(const F& x) { return x == F(0); }
inline bool is_zero(const QSqrtM3& x) { return x.is_zero(); }
inline std::complex<double> to_complex(const QSqrtM3& x) { return x.to_complex(); }
inline std::complex<double> to_complex(const Rational& x) { return {x.to_double(), 0.0}; }
inline std::complex<double> to_complex(const std::complex<double>& x) { return x; }
}  // namespace detail

// Dense univariate polynomial, coefficients stored from the constant term up.
template <typename F>
class Poly {
public:
    Poly() = default;
    Poly(std::vector<F> c) : c_(std::move(c)) { trim(); }  // NOLINT
    Poly(const F& constant) : c_{constant} { trim(); }     // NOLINT

    static Poly monomial(const F& coeff, int degree) {
        std::vector<F> c(static_cast<std::size_t>(degree) + 1, F(0));
        c.back() = coeff;
        return Poly(std::move(c));
    }
    static Poly x() { return monomial(F(1), 1); }

    // Degree of the zero polynomial is -1.
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<F>& coeffs() const { return c_; }
    F coeff(int i) const { return i >= 0 && i <= degree() ? c_[static_cast<std::size_t>(i)] : F(0); }
    F leading() const { return is_zero() ? F(0) : c_.back(); }

    template <typename T>
    T operator()(const T& x) const {
        T acc(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + convert<T>(*it);
        return acc;
    }

    Poly derivative() const {
        if (degree() < 1) return Poly();
        std::vector<F> d;
        for (int i = 1; i <= degree(); ++i) d.push_back(F(static_cast<long>(i)) * c_[static_cast<std::size_t>(i)]);
        return Poly(std::move(d));
    }

    // p(x^s).
    Poly substitute_power(int s) const {
        if (s < 1) throw std::invalid_argument("power substitution needs s >= 1");
        if (is_zero()) return Poly();
        std::vector<F> d(static_cast<std::size_t>(degree() * s) + 1, F(0));
        for (int i = 0; i <= degree(); ++i) d[static_cast<std::size_t>(i * s)] = c_[static_cast<std::size_t>(i)];
        return Poly(std::move(d));
    }

    Poly monic() const {
        if (is_zero()) return Poly();
        F inv = F(1) / leading();
        std::vector<F> d = c_;
        for (auto& x : d) x = x * inv;
        return Poly(std::move(d));
    }

    Poly& operator+=(const Poly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), F(0));
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
        trim();
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), F(0));
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
        trim();
        return *this;
    }
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly();
        std::vector<F> d(a.c_.size() + b.c_.size() - 1, F(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (detail::is_zero(a.c_[i])) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) d[i + j] += a.c_[i] * b.c_[j];
        }
        return Poly(std::move(d));
    }
    friend Poly operator*(const F& s, const Poly& p) { return Poly(s) * p; }
    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

    friend Poly pow(const Poly& p, int e) {
        Poly out(F(1));
        for (int i = 0; i < e; ++i) out = out * p;
        return out;
    }

    // Euclidean division over a field.
    friend std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
        if (b.is_zero()) throw std::domain_error("polynomial division by zero");
        Poly r = a;
        std::vector<F> q(std::max(0, a.degree() - b.degree() + 1), F(0));
        const F inv = F(1) / b.leading();
        while (!r.is_zero() && r.degree() >= b.degree()) {
            int shift = r.degree() - b.degree();
            F f = r.leading() * inv;
            q[static_cast<std::size_t>(shift)] = f;
            std::vector<F> rc = r.c_;
            for (int i = 0; i <= b.degree(); ++i)
                rc[static_cast<std::size_t>(i + shift)] -= f * b.c_[static_cast<std::size_t>(i)];
            rc.pop_back();  // leading term cancels exactly
            r = Poly(std::move(rc));
        }
        return {Poly(std::move(q)), r};
    }

    friend Poly gcd(Poly a, Poly b) {
        while (!b.is_zero()) {
            Poly r = divmod(a, b).second;
            a = std::move(b);
            b = r.monic();
        }
        return a.monic();
    }

private:
    template <typename T>
    static T convert(const F& x) {
        if constexpr (std::is_same_v<T, F>) return x;
        else return T(detail::to_complex(x));
    }
    void trim() {
        while (!c_.empty() && detail::is_zero(c_.back())) c_.pop_back();
    }
    std::vector<F> c_;
};

// Square-free decomposition p = lc * prod_k f_k^k (Yun). Returns (f_k, k) with f_k monic, nonconstant.
template <typename F>
std::vector<std::pair<Poly<F>, int>> squarefree_decomposition(const Poly<F>& p) {
    std::vector<std::pair<Poly<F>, int>> out;
    if (p.degree() < 1) return out;
    Poly<F> a = p.monic();
    Poly<F> b = gcd(a, a.derivative());
    Poly<F> c = divmod(a, b).first;
    Poly<F> d = divmod(a.derivative(), b).first - c.derivative();
    for (int k = 1; c.degree() >= 1; ++k) {
        Poly<F> g = gcd(c, d);
        if (g.degree() >= 1) out.emplace_back(g, k);
        c = divmod(c, g).first;
        d = divmod(d, g).first - c.derivative();
    }
    return out;
}

template <typename F>
bool is_squarefree(const Poly<F>& p) {
    return p.degree() < 1 || gcd(p, p.derivative()).degree() == 0;
}

// Number of distinct complex roots, exactly: deg p - deg gcd(p, p').
template <typename F>
int distinct_root_count(const Poly<F>& p) {
    if (p.degree() < 1) return 0;
    return p.degree() - gcd(p, p.derivative()).degree();
}

using CPoly = Poly<std::complex<double>>;

struct RootCertificate {
    std::vector<std::complex<long double>> roots;
    std::vector<long double> radii;  // inclusion radii
    bool isolated = false;           // discs pairwise disjoint: exactly one root in each
    int iterations = 0;
};

// Aberth-Ehrlich iteration in long double, followed by inclusion discs
// r_i = n |p(z_i)| / |a_n prod_{j != i}(z_i - z_j)|. When these discs are pairwise
// disjoint each one holds exactly one root.
RootCertificate certified_roots(const std::vector<std::complex<long double>>& coeffs, int max_iter = 500);

template <typename F>
RootCertificate certified_roots(const Poly<F>& p, int max_iter = 500) {
    std::vector<std::complex<long double>> c;
    for (const auto& x : p.coeffs()) {
        auto z = detail::to_complex(x);
        c.emplace_back(static_cast<long double>(z.real()), static_cast<long double>(z.imag()));
    }
    return certified_roots(c, max_iter);
}

// Exact bivariate polynomial in z, w over Q. Keys are (exponent of z, exponent of w).
class BiPoly {
public:
    using Key = std::pair<int, int>;
    BiPoly() = default;
    explicit BiPoly(std::map<Key, Rational> terms);
    static BiPoly constant(const Rational& c);
    static BiPoly z();
    static BiPoly w();

    const std::map<Key, Rational>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }
    // Lowest total degree of a term; -1 for zero.
    int order() const;
    int total_degree() const;
    BiPoly homogeneous_part(int deg) const;
    Rational coeff(int i, int j) const;

    BiPoly& operator+=(const BiPoly& o);
    BiPoly& operator-=(const BiPoly& o);
    friend BiPoly operator+(BiPoly a, const BiPoly& b) { return a += b; }
    friend BiPoly operator-(BiPoly a, const BiPoly& b) { return a -= b; }
    friend BiPoly operator*(const BiPoly& a, const BiPoly& b);
    friend bool operator==(const BiPoly& a, const BiPoly& b) { return a.t_ == b.t_; }
    BiPoly pow(int e) const;

    // f(z + s w, w) and f(w, z).
    BiPoly shear(const Rational& s) const;
    BiPoly swapped() const;
    // f(a z + b w, c z + d w).
    BiPoly linear_change(const Rational& a, const Rational& b, const Rational& c, const Rational& d) const;

    std::complex<double> operator()(std::complex<double> z, std::complex<double> w) const;
    std::string str() const;

private:
    void prune();
    std::map<Key, Rational> t_;
};

// Parses the expression grammar of docs/grammar.md (rationals, z, w, + - * ^, parentheses).
BiPoly parse_bipoly(const std::string& text);

}  // namespace conekit
