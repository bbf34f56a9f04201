#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "conekit/curvesing.hpp"
#include "conekit/energy.hpp"
#include "conekit/flatcone.hpp"
#include "conekit/lift.hpp"
#include "conekit/reflection.hpp"
#include "conekit/report.hpp"
#include "conekit/spherical.hpp"

namespace conekit {

// Uniformly distributed points of CP^1 (each in the chart where |z| <= 1), at least min_distance from
// every puncture in that chart.
std::vector<SamplePoint> sample_sphere_points(const ChartAtlas& atlas, int count, std::uint64_t seed,
                                              double min_distance = 0.02);

// Curvature at seeded points (max |K / kappa - 1| <= tol), area and Gauss-Bonnet within 1e-3.
VerificationReport check_spherical(const ConformalMetric& g, std::uint64_t seed = kDefaultSeed, int samples = 100,
                                   double tol = 1e-4);
// d = 2 grid solution against the rugby ball: sup |u_grid - u_exact| over all grid nodes.
double rugby_sup_error(const ConformalMetric& grid_metric);

// Hopf lift: volume 2 pi^2 c^2, total curvature 1, holonomy table, horizontal lifts.
VerificationReport check_lift(const ConformalMetric& g, std::uint64_t seed = kDefaultSeed);
VerificationReport check_seifert(const ConformalMetric& g, int p, int q);

// Volume identity at seeded points, scaling for lambda in {0.5, 2, e}, closedness, cone angles.
VerificationReport check_flat_cone(const FlatConeMetric& F, std::uint64_t seed = kDefaultSeed, int samples = 50,
                                   double tol = 1e-3);
std::string volume_samples_csv(const FlatConeMetric& F, std::uint64_t seed = kDefaultSeed, int samples = 50);

json catalog_to_json(const GroupSpec& g);
// family: "G222", "G(2m,2,2)" (m), "G(m,m,2)" (m), "tetrahedral", "octahedral", "icosahedral".
VerificationReport check_reflection(const std::string& family, int m = 0, std::uint64_t seed = kDefaultSeed);

json germ_to_json(const CurveGerm& g);
VerificationReport germ_report(const std::string& poly);

json ledger_to_json(const EnergyLedger& l);
VerificationReport energy_ledger_report(const std::string& family, int m = 0);
VerificationReport bishop_gromov_report(const std::string& which, const Rational& beta);

}  // namespace conekit
