#include "conekit/rational.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

namespace conekit {

Rational::Rational(long n, long d) : q_(n, d) {
    if (d == 0) throw std::domain_error("rational with zero denominator");
    q_.canonicalize();
}

Rational::Rational(const mpz_class& n, const mpz_class& d) : q_(n, d) {
    if (d == 0) throw std::domain_error("rational with zero denominator");
    q_.canonicalize();
}

Rational::Rational(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

Rational& Rational::operator/=(const Rational& o) {
    if (o.q_ == 0) throw std::domain_error("division by zero rational");
    q_ /= o.q_;
    return *this;
}

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

mpz_class parse_int(std::string_view s) {
    bool neg = false;
    if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
        neg = s[0] == '-';
        s.remove_prefix(1);
    }
    if (!all_digits(s)) throw std::invalid_argument("not an integer: '" + std::string(s) + "'");
    mpz_class z(std::string(s), 10);
    return neg ? mpz_class(-z) : z;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

}  // namespace

Rational Rational::parse(std::string_view text) {
    std::string_view s = trim(text);
    if (s.empty()) throw std::invalid_argument("empty rational");

    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        mpz_class n = parse_int(trim(s.substr(0, slash)));
        mpz_class d = parse_int(trim(s.substr(slash + 1)));
        return Rational(n, d);
    }

    // Decimal with optional exponent.
    bool neg = false;
    if (s[0] == '+' || s[0] == '-') {
        neg = s[0] == '-';
        s.remove_prefix(1);
    }
    int exp10 = 0;
    if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
        mpz_class ez = parse_int(s.substr(e + 1));
        if (!ez.fits_sint_p() || abs(ez) > 4000) throw std::invalid_argument("exponent out of range");
        exp10 = static_cast<int>(ez.get_si());
        s = s.substr(0, e);
    }
    std::string digits;
    if (auto dot = s.find('.'); dot != std::string_view::npos) {
        std::string_view ip = s.substr(0, dot), fp = s.substr(dot + 1);
        if ((ip.empty() && fp.empty()) || (!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp)))
            throw std::invalid_argument("malformed decimal: '" + std::string(text) + "'");
        digits = std::string(ip) + std::string(fp);
        exp10 -= static_cast<int>(fp.size());
    } else {
        if (!all_digits(s)) throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
        digits = std::string(s);
    }
    mpz_class n(digits, 10);
    if (neg) n = -n;
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(std::abs(exp10)));
    return exp10 >= 0 ? Rational(mpz_class(n * p), 1) : Rational(n, p);
}

Rational Rational::from_double(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("non-finite double");
    return Rational(mpq_class(x));
}

Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

Rational pow(const Rational& r, int e) {
    Rational base = e < 0 ? Rational(1) / r : r;
    Rational out(1);
    for (int i = 0; i < std::abs(e); ++i) out *= base;
    return out;
}

Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }
Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

}  // namespace conekit
