#pragma once

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "conekit/rational.hpp"

namespace conekit {

// chi(X) + (beta - 1) chi(D).
Rational ke_energy(long chi_X, long chi_D, const Rational& beta);

// chi(M) - 1/|Gamma|.
Rational ale_energy(long chi_M, long group_order);

// 1 + (beta - 1) chi(C) - nu, with nu the volume ratio of the link.
Rational rf_cone_energy(long chi_C, const Rational& beta, const Rational& nu);

// Euler characteristic of a smooth affine curve of degree r with r distinct asymptotic lines.
inline long affine_curve_euler(int r) { return 2L * r - static_cast<long>(r) * r; }

// Euler characteristic of a smooth plane curve of degree k.
inline long plane_curve_euler(long k) { return 2 - (k - 1) * (k - 2); }

struct BubbleEnergy {
    Rational value;
    Rational cone_number;   // 1 - r/2 + r beta/2
    bool troyanov_ok = true;  // equal-angle r-fold configuration admissible
};

BubbleEnergy bubble_energy(int r, const Rational& beta);
inline Rational bubble_energy_Er(int r, const Rational& beta) { return bubble_energy(r, beta).value; }

struct ArrangementSpec {
    std::string name;
    long k = 0;
    std::map<int, long> t;  // multiplicity r -> number of r-fold points
    Rational beta;
    Rational expected_energy;  // value printed for the family

    // Throws if the pairwise-intersection identity k(k-1)/2 = sum t_r r(r-1)/2 fails.
    void validate() const;
};

struct EnergyLedger {
    std::string name;
    Rational total;                   // ke_energy of the smoothing curve
    std::map<int, Rational> bubbles;  // r -> E_r
    Rational bubble_sum;              // sum t_r E_r
    Rational residual;                // total - bubble_sum
    std::vector<std::string> warnings;
};

EnergyLedger arrangement_ledger(const ArrangementSpec& spec);

ArrangementSpec arrangement_A0(int m);
ArrangementSpec arrangement_A3(int m);
ArrangementSpec arrangement_hesse();
ArrangementSpec arrangement_extended_hesse();
ArrangementSpec arrangement_icosahedral();
ArrangementSpec arrangement_G168();
ArrangementSpec arrangement_A6();

// Lookup by CLI family name: "A0", "A3" (need m), "hesse", "extended-hesse",
// "icosahedral", "G168", "A6".
ArrangementSpec arrangement_by_name(const std::string& family, int m = 0);

// Intersection numbers entering (c1(X) - (1 - beta) c1(L))^2.
struct ChernSquares {
    Rational c1X_sq;
    Rational c1X_dot_L;
    Rational L_sq;
};

struct BishopGromovResult {
    bool pass = false;
    bool equality = false;
    Rational nu;
    Rational bound;  // (1/9)(c1(X) - (1 - beta) c1(L))^2
};

// nu >= (1/9)(c1(X) - (1-beta) c1(L))^2, exactly.
BishopGromovResult bishop_gromov_check(const Rational& beta, const Rational& nu, const ChernSquares& c);

// Cuspidal cubic in CP^2: nu = 2 beta - 1 and the bound is beta^2.
BishopGromovResult bishop_gromov_cuspidal_cubic(const Rational& beta);

struct Bookkeeping {
    Rational sequence;  // E(g_eps)
    Rational limit;     // E(g_0)
    Rational bubbles;   // total bubble energy
    bool balanced = false;
};

// Smooth cubics degenerating to three lines: (3, 3 beta^2, 3(1 - beta^2)).
Bookkeeping elliptic_bookkeeping(const Rational& beta);
// Quartics: (7 - 4 beta, 4 beta - 1, 8 (1 - beta)).
Bookkeeping quartic_bookkeeping(const Rational& beta);

}  // namespace conekit
