#include <doctest.h>

#include "conekit/energy.hpp"

using namespace conekit;

namespace {
// E_r written out: 1 + (beta - 1)(2r - r^2) - (1 - r/2 + r beta/2)^2.
Rational bubble_by_hand(int r, const Rational& b) {
    const Rational c = Rational(1) - Rational(r, 2) + Rational(r) * b / Rational(2);
    return Rational(1) + (b - Rational(1)) * Rational(2 * r - r * r) - c * c;
}
}  // namespace

TEST_CASE("bubble energies") {
    for (int r = 2; r <= 8; ++r)
        for (const auto& b : {Rational(7, 8), Rational(9, 10), Rational(19, 20)})
            CHECK(bubble_energy_Er(r, b) == bubble_by_hand(r, b));
    // Nodes of a cubic at beta: E_2 = 1 - beta^2.
    CHECK(bubble_energy_Er(2, Rational(1, 3)) == Rational(8, 9));
}

TEST_CASE("arrangement ledgers balance") {
    std::vector<ArrangementSpec> all = {arrangement_hesse(), arrangement_extended_hesse(), arrangement_icosahedral(),
                                        arrangement_G168(), arrangement_A6()};
    for (int m = 2; m <= 20; ++m) {
        all.push_back(arrangement_A0(m));
        all.push_back(arrangement_A3(m));
    }
    for (const auto& s : all) {
        CAPTURE(s.name);
        const auto L = arrangement_ledger(s);
        CHECK(L.total == s.expected_energy);
        CHECK(L.residual == Rational(0));
    }
}

TEST_CASE("Hesse total by hand") {
    // chi(D) = 2 - 11 * 10 = -108, beta = 3/4: 3 + 108/4 = 30.
    CHECK(arrangement_ledger(arrangement_hesse()).total == Rational(30));
}

TEST_CASE("inconsistent arrangement is rejected") {
    ArrangementSpec s{"bad", 4, {{2, 5}}, Rational(1, 2), Rational(0)};
    CHECK_THROWS_AS(arrangement_ledger(s), std::invalid_argument);
}

TEST_CASE("degeneration bookkeeping") {
    for (const auto& b : {Rational(1, 3), Rational(1, 2), Rational(5, 7), Rational(1)}) {
        const auto e = elliptic_bookkeeping(b);
        CHECK(e.balanced);
        CHECK(e.bubbles == Rational(3) * (Rational(1) - b * b));
        const auto q = quartic_bookkeeping(b);
        CHECK(q.balanced);
        CHECK(q.sequence == Rational(7) - Rational(4) * b);
    }
}

TEST_CASE("cuspidal cubic obstruction") {
    CHECK(bishop_gromov_cuspidal_cubic(Rational(1)).pass);
    for (const auto& b : {Rational(3, 5), Rational(2, 3), Rational(99, 100)}) {
        const auto r = bishop_gromov_cuspidal_cubic(b);
        CHECK(r.bound == b * b);
        CHECK_FALSE(r.pass);
    }
    CHECK_THROWS(bishop_gromov_cuspidal_cubic(Rational(1, 2)));
    CHECK(ale_energy(1, 24) == Rational(23, 24));
}
