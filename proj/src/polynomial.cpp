#include "conekit/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <sstream>

namespace conekit {

QSqrtM3& QSqrtM3::operator*=(const QSqrtM3& o) {
    Rational a = a_ * o.a_ - Rational(3) * b_ * o.b_;
    Rational b = a_ * o.b_ + b_ * o.a_;
    a_ = std::move(a);
    b_ = std::move(b);
    return *this;
}

QSqrtM3& QSqrtM3::operator/=(const QSqrtM3& o) {
    Rational n = o.a_ * o.a_ + Rational(3) * o.b_ * o.b_;
    if (n == Rational(0)) throw std::domain_error("division by zero in Q(i sqrt 3)");
    *this *= QSqrtM3(o.a_ / n, -o.b_ / n);
    return *this;
}

std::complex<double> QSqrtM3::to_complex() const {
    return {a_.to_double(), b_.to_double() * std::sqrt(3.0)};
}

std::string QSqrtM3::str() const {
    if (is_rational()) return a_.str();
    return a_.str() + " + (" + b_.str() + ")*i*sqrt(3)";
}

RootCertificate certified_roots(const std::vector<std::complex<long double>>& coeffs_in, int max_iter) {
    using C = std::complex<long double>;
    std::vector<C> a = coeffs_in;
    while (!a.empty() && a.back() == C(0)) a.pop_back();
    RootCertificate cert;
    const int n = static_cast<int>(a.size()) - 1;
    if (n < 1) {
        cert.isolated = true;
        return cert;
    }
    auto eval = [&](C z, C& p, C& dp) {
        p = a[static_cast<std::size_t>(n)];
        dp = 0;
        for (int k = n - 1; k >= 0; --k) {
            dp = dp * z + p;
            p = p * z + a[static_cast<std::size_t>(k)];
        }
    };
    // Initial points on a circle sized by the Fujiwara bound, slightly rotated.
    long double bound = 0;
    for (int k = 0; k < n; ++k)
        bound = std::max(bound, std::pow(std::abs(a[static_cast<std::size_t>(k)] / a[static_cast<std::size_t>(n)]),
                                         1.0L / static_cast<long double>(n - k)));
    bound = 2 * bound + 1e-6L;
    std::vector<C> z(static_cast<std::size_t>(n));
    const long double pi = std::numbers::pi_v<long double>;
    for (int i = 0; i < n; ++i)
        z[static_cast<std::size_t>(i)] = std::polar(0.5L * bound, 2 * pi * i / n + 0.4L);

    for (cert.iterations = 0; cert.iterations < max_iter; ++cert.iterations) {
        long double biggest = 0;
        for (int i = 0; i < n; ++i) {
            C p, dp;
            C zi = z[static_cast<std::size_t>(i)];
            eval(zi, p, dp);
            if (p == C(0)) continue;
            C ratio = p / dp;
            C sum = 0;
            for (int j = 0; j < n; ++j)
                if (j != i) sum += C(1) / (zi - z[static_cast<std::size_t>(j)]);
            C step = ratio / (C(1) - ratio * sum);
            z[static_cast<std::size_t>(i)] = zi - step;
            biggest = std::max(biggest, std::abs(step) / std::max(1.0L, std::abs(zi)));
        }
        if (biggest < 1e-17L) break;
    }

    cert.roots = z;
    cert.radii.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        C p, dp;
        eval(z[static_cast<std::size_t>(i)], p, dp);
        // Account for rounding in the evaluation of p.
        long double absz = std::abs(z[static_cast<std::size_t>(i)]);
        long double scale = 0, pw = 1;
        for (int k = 0; k <= n; ++k) {
            scale += std::abs(a[static_cast<std::size_t>(k)]) * pw;
            pw *= absz;
        }
        long double perr = std::abs(p) + 4 * n * std::numeric_limits<long double>::epsilon() * scale;
        C prod = a[static_cast<std::size_t>(n)];
        for (int j = 0; j < n; ++j)
            if (j != i) prod *= z[static_cast<std::size_t>(i)] - z[static_cast<std::size_t>(j)];
        cert.radii[static_cast<std::size_t>(i)] = n * perr / std::abs(prod);
    }
    cert.isolated = true;
    for (int i = 0; i < n && cert.isolated; ++i)
        for (int j = i + 1; j < n; ++j)
            if (std::abs(z[static_cast<std::size_t>(i)] - z[static_cast<std::size_t>(j)]) <=
                cert.radii[static_cast<std::size_t>(i)] + cert.radii[static_cast<std::size_t>(j)]) {
                cert.isolated = false;
                break;
            }
    return cert;
}

// ---------------------------------------------------------------------------

BiPoly::BiPoly(std::map<Key, Rational> terms) : t_(std::move(terms)) { prune(); }

BiPoly BiPoly::constant(const Rational& c) { return BiPoly(std::map<Key, Rational>{{Key{0, 0}, c}}); }
BiPoly BiPoly::z() { return BiPoly(std::map<Key, Rational>{{Key{1, 0}, Rational(1)}}); }
BiPoly BiPoly::w() { return BiPoly(std::map<Key, Rational>{{Key{0, 1}, Rational(1)}}); }

void BiPoly::prune() {
    for (auto it = t_.begin(); it != t_.end();) {
        if (it->second == Rational(0)) it = t_.erase(it);
        else ++it;
    }
}

int BiPoly::order() const {
    int o = -1;
    for (const auto& [k, c] : t_) {
        int deg = k.first + k.second;
        if (o < 0 || deg < o) o = deg;
    }
    return o;
}

int BiPoly::total_degree() const {
    int o = -1;
    for (const auto& [k, c] : t_) o = std::max(o, k.first + k.second);
    return o;
}

BiPoly BiPoly::homogeneous_part(int deg) const {
    std::map<Key, Rational> out;
    for (const auto& [k, c] : t_)
        if (k.first + k.second == deg) out[k] = c;
    return BiPoly(std::move(out));
}

Rational BiPoly::coeff(int i, int j) const {
    auto it = t_.find({i, j});
    return it == t_.end() ? Rational(0) : it->second;
}

BiPoly& BiPoly::operator+=(const BiPoly& o) {
    for (const auto& [k, c] : o.t_) t_[k] += c;
    prune();
    return *this;
}

BiPoly& BiPoly::operator-=(const BiPoly& o) {
    for (const auto& [k, c] : o.t_) t_[k] -= c;
    prune();
    return *this;
}

BiPoly operator*(const BiPoly& a, const BiPoly& b) {
    std::map<BiPoly::Key, Rational> out;
    for (const auto& [ka, ca] : a.t_)
        for (const auto& [kb, cb] : b.t_) out[{ka.first + kb.first, ka.second + kb.second}] += ca * cb;
    return BiPoly(std::move(out));
}

BiPoly BiPoly::pow(int e) const {
    if (e < 0) throw std::invalid_argument("negative exponent");
    BiPoly out = constant(Rational(1));
    for (int i = 0; i < e; ++i) out = out * *this;
    return out;
}

BiPoly BiPoly::linear_change(const Rational& a, const Rational& b, const Rational& c, const Rational& d) const {
    BiPoly Z({{{1, 0}, a}, {{0, 1}, b}});
    BiPoly W({{{1, 0}, c}, {{0, 1}, d}});
    BiPoly out;
    for (const auto& [k, coef] : t_) out += constant(coef) * Z.pow(k.first) * W.pow(k.second);
    return out;
}

BiPoly BiPoly::shear(const Rational& s) const { return linear_change(Rational(1), s, Rational(0), Rational(1)); }

BiPoly BiPoly::swapped() const {
    std::map<Key, Rational> out;
    for (const auto& [k, c] : t_) out[{k.second, k.first}] = c;
    return BiPoly(std::move(out));
}

std::complex<double> BiPoly::operator()(std::complex<double> z, std::complex<double> w) const {
    std::complex<double> s = 0;
    for (const auto& [k, c] : t_) s += c.to_double() * std::pow(z, k.first) * std::pow(w, k.second);
    return s;
}

std::string BiPoly::str() const {
    if (t_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = t_.rbegin(); it != t_.rend(); ++it) {
        const auto& [k, c] = *it;
        Rational mag = abs(c);
        if (first) {
            if (c.sign() < 0) os << "-";
        } else {
            os << (c.sign() < 0 ? " - " : " + ");
        }
        first = false;
        bool unit = mag == Rational(1);
        bool constant_term = k.first == 0 && k.second == 0;
        if (!unit || constant_term) os << mag.str();
        bool need_star = !unit || constant_term;
        auto var = [&](const char* name, int e) {
            if (e == 0) return;
            if (need_star) os << "*";
            os << name;
            if (e > 1) os << "^" << e;
            need_star = true;
        };
        var("z", k.first);
        var("w", k.second);
    }
    return os.str();
}

namespace {

class Parser {
public:
    explicit Parser(const std::string& s) : s_(s) {}

    BiPoly parse() {
        BiPoly e = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected character");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const {
        throw std::invalid_argument("polynomial parse error at column " + std::to_string(pos_ + 1) + ": " + msg);
    }
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool accept(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    std::string digits() {
        skip();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        return s_.substr(start, pos_ - start);
    }

    BiPoly expr() {
        BiPoly acc;
        bool negate = false;
        if (accept('-')) negate = true;
        else accept('+');
        acc = term();
        if (negate) acc = BiPoly() - acc;
        for (;;) {
            if (accept('+')) acc += term();
            else if (accept('-')) acc -= term();
            else break;
        }
        return acc;
    }
    BiPoly term() {
        BiPoly acc = factor();
        while (accept('*')) acc = acc * factor();
        return acc;
    }
    BiPoly factor() {
        BiPoly base = atom();
        if (accept('^')) {
            std::string d = digits();
            if (d.empty()) fail("expected an unsigned integer exponent");
            if (d.size() > 4) fail("exponent too large");
            base = base.pow(std::stoi(d));
        }
        return base;
    }
    BiPoly atom() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        char c = s_[pos_];
        if (c == 'z') {
            ++pos_;
            return BiPoly::z();
        }
        if (c == 'w') {
            ++pos_;
            return BiPoly::w();
        }
        if (c == '(') {
            ++pos_;
            BiPoly e = expr();
            if (!accept(')')) fail("expected ')'");
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string num = digits();
            std::size_t save = pos_;
            if (accept('/')) {
                std::string den = digits();
                if (den.empty()) {
                    pos_ = save;
                    fail("expected a denominator after '/'");
                }
                return BiPoly::constant(Rational::parse(num + "/" + den));
            }
            return BiPoly::constant(Rational::parse(num));
        }
        fail(std::string("unexpected '") + c + "'");
    }

    const std::string& s_;
    std::size_t pos_ = 0;
};

}  // namespace

BiPoly parse_bipoly(const std::string& text) { return Parser(text).parse(); }

}  // namespace conekit
