#pragma once

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace conekit {

// Exact rational number, always kept in lowest terms with a positive
// denominator. Thin value wrapper over mpq_class.
class Rational {
public:
    Rational() = default;
    Rational(long n) : q_(n) {}                     // NOLINT: implicit from integers
    Rational(int n) : q_(static_cast<long>(n)) {}   // NOLINT
    Rational(long n, long d);
    explicit Rational(const mpz_class& n, const mpz_class& d = 1);
    explicit Rational(mpq_class q);

    // Accepts "p/q", "p", and finite decimals such as "-0.75" or "1e-3".
    static Rational parse(std::string_view text);
    // Exact value of a binary double.
    static Rational from_double(double x);

    mpz_class num() const { return q_.get_num(); }
    mpz_class den() const { return q_.get_den(); }
    const mpq_class& raw() const { return q_; }

    bool is_integer() const { return q_.get_den() == 1; }
    int sign() const { return sgn(q_); }
    double to_double() const { return q_.get_d(); }
    // "p/q", or "p" for integers.
    std::string str() const { return q_.get_str(); }

    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
    Rational operator-() const { return Rational(mpq_class(-q_)); }

    friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
    friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
        int c = cmp(a.q_, b.q_);
        return c < 0 ? std::strong_ordering::less
             : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
    mpq_class q_{0};
};

Rational abs(const Rational& r);
Rational pow(const Rational& r, int e);
Rational min(const Rational& a, const Rational& b);
Rational max(const Rational& a, const Rational& b);

inline double to_double(const Rational& r) { return r.to_double(); }
inline double to_double(double x) { return x; }

}  // namespace conekit
