#include "conekit/energy.hpp"

#include <stdexcept>

namespace conekit {

Rational ke_energy(long chi_X, long chi_D, const Rational& beta) {
    return Rational(chi_X) + (beta - Rational(1)) * Rational(chi_D);
}

Rational ale_energy(long chi_M, long group_order) {
    if (group_order < 1) throw std::invalid_argument("group order must be positive");
    return Rational(chi_M) - Rational(1, group_order);
}

Rational rf_cone_energy(long chi_C, const Rational& beta, const Rational& nu) {
    if (nu <= Rational(0) || nu > Rational(1)) throw std::invalid_argument("volume ratio outside (0,1]");
    return Rational(1) + (beta - Rational(1)) * Rational(chi_C) - nu;
}

BubbleEnergy bubble_energy(int r, const Rational& beta) {
    if (r < 2) throw std::invalid_argument("bubble multiplicity must be at least 2");
    BubbleEnergy b;
    const Rational R(r);
    b.cone_number = Rational(1) - R / Rational(2) + R * beta / Rational(2);
    if (b.cone_number <= Rational(0)) throw std::domain_error("cone number of the r-fold point is not positive");
    // Equal angles: 2 - r + r beta must lie in (0, 2 beta).
    if (r >= 3) {
        Rational s = Rational(2) - R + R * beta;
        b.troyanov_ok = s > Rational(0) && s < Rational(2) * beta;
    }
    b.value = rf_cone_energy(affine_curve_euler(r), beta, b.cone_number * b.cone_number);
    return b;
}

void ArrangementSpec::validate() const {
    Rational lhs = Rational(k) * Rational(k - 1) / Rational(2);
    Rational rhs(0);
    for (auto [r, tr] : t) rhs += Rational(tr) * Rational(r) * Rational(r - 1) / Rational(2);
    if (lhs != rhs)
        throw std::invalid_argument(name + ": pairwise intersection count " + lhs.str() + " != " + rhs.str());
}

EnergyLedger arrangement_ledger(const ArrangementSpec& spec) {
    spec.validate();
    EnergyLedger L;
    L.name = spec.name;
    L.total = ke_energy(3, plane_curve_euler(spec.k), spec.beta);
    for (auto [r, tr] : spec.t) {
        BubbleEnergy b = bubble_energy(r, spec.beta);
        if (!b.troyanov_ok)
            L.warnings.push_back("r = " + std::to_string(r) + ": equal-angle configuration fails the Troyanov test");
        L.bubbles[r] = b.value;
        L.bubble_sum += Rational(tr) * b.value;
    }
    L.residual = L.total - L.bubble_sum;
    return L;
}

ArrangementSpec arrangement_A0(int m) {
    if (m < 2) throw std::invalid_argument("A0(m) needs m >= 2");
    ArrangementSpec s;
    s.name = "A0(" + std::to_string(m) + ")";
    s.k = 3L * m;
    s.t[3] += static_cast<long>(m) * m;
    s.t[m] += 3;
    s.beta = Rational(m - 1, m);
    s.expected_energy = Rational(9L * m - 6);
    return s;
}

ArrangementSpec arrangement_A3(int m) {
    if (m < 2) throw std::invalid_argument("A3(m) needs m >= 2");
    ArrangementSpec s;
    s.name = "A3(" + std::to_string(m) + ")";
    s.k = 3L * m + 3;
    s.t[2] += 3L * m;
    s.t[3] += static_cast<long>(m) * m;
    s.t[m + 2] += 3;
    s.beta = Rational(m, m + 1);
    s.expected_energy = Rational(3) + Rational((3L * m + 2) * (3L * m + 1) - 2, m + 1);
    return s;
}

ArrangementSpec arrangement_hesse() {
    return {"Hesse", 12, {{2, 12}, {4, 9}}, Rational(3, 4), Rational(30)};
}

ArrangementSpec arrangement_extended_hesse() {
    return {"extended Hesse", 21, {{2, 36}, {4, 9}, {5, 12}}, Rational(6, 7), Rational(57)};
}

ArrangementSpec arrangement_icosahedral() {
    return {"icosahedral", 15, {{2, 15}, {3, 10}, {5, 6}}, Rational(4, 5), Rational(39)};
}

ArrangementSpec arrangement_G168() {
    return {"G168", 21, {{3, 28}, {4, 21}}, Rational(6, 7), Rational(57)};
}

ArrangementSpec arrangement_A6() {
    return {"A6", 45, {{3, 120}, {4, 45}, {5, 36}}, Rational(14, 15), Rational(129)};
}

ArrangementSpec arrangement_by_name(const std::string& family, int m) {
    if (family == "A0") return arrangement_A0(m);
    if (family == "A3") return arrangement_A3(m);
    if (family == "hesse") return arrangement_hesse();
    if (family == "extended-hesse") return arrangement_extended_hesse();
    if (family == "icosahedral") return arrangement_icosahedral();
    if (family == "G168") return arrangement_G168();
    if (family == "A6") return arrangement_A6();
    throw std::invalid_argument("unknown arrangement family '" + family + "'");
}

BishopGromovResult bishop_gromov_check(const Rational& beta, const Rational& nu, const ChernSquares& c) {
    if (nu <= Rational(0) || nu > Rational(1)) throw std::invalid_argument("volume ratio outside (0,1]");
    if (beta <= Rational(0) || beta > Rational(1)) throw std::invalid_argument("beta outside (0,1]");
    const Rational s = Rational(1) - beta;
    BishopGromovResult r;
    r.nu = nu;
    r.bound = (c.c1X_sq - Rational(2) * s * c.c1X_dot_L + s * s * c.L_sq) / Rational(9);
    r.pass = nu >= r.bound;
    r.equality = nu == r.bound;
    return r;
}

BishopGromovResult bishop_gromov_cuspidal_cubic(const Rational& beta) {
    // c1(CP^2) = 3H and the cubic is L = 3H.
    if (beta <= Rational(1, 2) || beta > Rational(1))
        throw std::invalid_argument("cuspidal cubic needs 1/2 < beta <= 1 (volume ratio 2 beta - 1)");
    return bishop_gromov_check(beta, Rational(2) * beta - Rational(1), {Rational(9), Rational(9), Rational(9)});
}

Bookkeeping elliptic_bookkeeping(const Rational& beta) {
    if (beta <= Rational(0) || beta > Rational(1)) throw std::invalid_argument("beta outside (0,1]");
    Bookkeeping b;
    b.sequence = ke_energy(3, 0, beta);
    b.limit = Rational(3) * beta * beta;
    // Three Donaldson bubbles, each of energy 1 - beta^2.
    b.bubbles = Rational(3) * rf_cone_energy(0, beta, beta * beta);
    b.balanced = b.sequence - b.limit == b.bubbles;
    return b;
}

Bookkeeping quartic_bookkeeping(const Rational& beta) {
    if (beta <= Rational(0) || beta > Rational(1)) throw std::invalid_argument("beta outside (0,1]");
    Bookkeeping b;
    b.sequence = ke_energy(3, plane_curve_euler(4), beta);
    b.limit = Rational(4) * beta - Rational(1);
    b.bubbles = Rational(8) * (Rational(1) - beta);
    b.balanced = b.sequence - b.limit == b.bubbles;
    return b;
}

}  // namespace conekit
