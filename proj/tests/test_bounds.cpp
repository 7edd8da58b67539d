#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "supneg/bounds.hpp"
#include "supneg/states.hpp"
#include "supneg/sweep.hpp"

using namespace supneg;

namespace {

const double kS = 1.0 / std::numbers::sqrt2;
const double kSqrt6 = std::sqrt(6.0);

SuperpositionSpec random_spec(std::uint64_t seed) {
  Rng rng(seed);
  const std::size_t d = 2 + seed % 2;
  const auto p1 = haar_random({d, d, d}, rng), p2 = haar_random({d, d, d}, rng);
  const double t = std::acos(std::sqrt(rng.uniform()));
  return SuperpositionSpec(std::polar(std::cos(t), rng.uniform() * 6.283), p1,
                           std::polar(std::sin(t), rng.uniform() * 6.283), p2);
}

}  // namespace

TEST(CrossTerms, IdenticalGhz) {
  const auto t = cross_terms(SuperpositionSpec(kS, ghz(2), kS, ghz(2)));
  for (std::size_t k = 0; k < 3; ++k) EXPECT_NEAR(t.raw[2][k], 1.0, 1e-15);
  EXPECT_NEAR(t.f12, 0.5, 1e-15);
  EXPECT_NEAR(t.g12, 0.5, 1e-15);
}

TEST(CrossTerms, BasisStates) {
  const auto t = cross_terms(SuperpositionSpec(0.6, basis_state({2, 2, 2}, 0), 0.8, basis_state({2, 2, 2}, 7)));
  for (std::size_t k = 0; k < 3; ++k) {
    EXPECT_EQ(t.raw[0][k], 0.0);
    EXPECT_EQ(t.raw[1][k], 0.0);
    EXPECT_NEAR(t.raw[2][k], 1.0, 1e-15);
  }
}

TEST(CrossTerms, ZeroSecondCoefficient) {
  const auto t = cross_terms(SuperpositionSpec(1.0, ghz(2), 0.0, w_state()));
  EXPECT_EQ(t.F22, 0.0);
  EXPECT_EQ(t.F12, 0.0);
  EXPECT_EQ(t.f22, 0.0);
  EXPECT_EQ(t.f12, 0.0);
  EXPECT_EQ(t.g22, 0.0);
  EXPECT_EQ(t.g12, 0.0);
}

TEST(CrossTerms, Invariants) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto spec = random_spec(seed);
    const auto t = cross_terms(spec);
    EXPECT_LE(t.g11, t.f11);
    EXPECT_LE(t.g22, t.f22);
    EXPECT_LE(t.g12, t.f12);
    for (const auto& row : t.raw)
      for (double v : row) EXPECT_GE(v, 0.0);
    EXPECT_NEAR(t.F11, std::norm(spec.a1) * multipartite_negativity(spec.psi1), 1e-10);
  }
}

TEST(SuperpositionSpec, CoefficientCheck) {
  EXPECT_THROW(SuperpositionSpec(0.5, ghz(2), 0.5, ghz(2)), CoefficientError);
  EXPECT_THROW(SuperpositionSpec(kS, ghz(2), kS, ghz(3)), DimensionError);
  EXPECT_NO_THROW(SuperpositionSpec(0.5, ghz(2), 0.5, ghz(2), false));
}

TEST(Theorem1, DegenerateIsExact) {
  const auto b = theorem1_bounds(SuperpositionSpec(1.0, ghz(2), 0.0, w_state()));
  EXPECT_NEAR(b.upper, 6.0, 1e-14);
  EXPECT_NEAR(b.lower, 6.0, 1e-14);
}

TEST(Theorem1, BasisStatesTight) {
  const auto r = bounds_report(SuperpositionSpec(kS, basis_state({2, 2, 2}, 0), kS, basis_state({2, 2, 2}, 7)));
  EXPECT_NEAR(r.terms.F12, 3.0, 1e-14);
  EXPECT_NEAR(r.t1.upper, 6.0, 1e-14);
  EXPECT_NEAR(r.n_exact, 6.0, 1e-14);
  EXPECT_NEAR(r.t1.lower_raw, 6.0, 1e-14);  // -F11 - F22 + 2 F12
}

TEST(Theorem2, DegenerateIsExact) {
  const auto b = theorem2_bounds(SuperpositionSpec(1.0, ghz(2), 0.0, w_state()));
  EXPECT_NEAR(b.upper, 1.0, 1e-14);
  EXPECT_NEAR(b.lower, 1.0, 1e-14);
}

TEST(Theorem2, BasisStatesTight) {
  const auto r = bounds_report(SuperpositionSpec(kS, basis_state({2, 2, 2}, 0), kS, basis_state({2, 2, 2}, 7)));
  EXPECT_NEAR(r.t2.upper, 1.0, 1e-14);
  EXPECT_NEAR(r.ngme_exact, 1.0, 1e-14);
}

TEST(Theorems, SandwichOnRandomSpecs) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto r = bounds_report(random_spec(seed));
    EXPECT_LE(r.t1.lower_raw, r.n_exact + 1e-9);
    EXPECT_LE(r.n_exact, r.t1.upper + 1e-9);
    EXPECT_LE(r.t2.lower_raw, r.ngme_exact + 1e-9);
    EXPECT_LE(r.ngme_exact, r.t2.upper + 1e-9);
    EXPECT_GE(r.t1.lower, 0.0);
    EXPECT_GE(r.t2.lower, std::max(r.t2.lower_raw, 0.0));
  }
}

TEST(Theorems, BoundsIgnoreCoefficientPhases) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto s = random_spec(seed);
    const SuperpositionSpec rot(s.a1 * std::polar(1.0, 0.7), s.psi1, s.a2 * std::polar(1.0, -2.1), s.psi2);
    const auto t0 = cross_terms(s), t1 = cross_terms(rot);
    for (auto [b0, b1] : {std::pair{theorem1_bounds(t0), theorem1_bounds(t1)},
                          std::pair{theorem2_bounds(t0), theorem2_bounds(t1)}}) {
      EXPECT_NEAR(b0.upper, b1.upper, 1e-12);
      EXPECT_NEAR(b0.lower_raw, b1.lower_raw, 1e-12);
    }
  }
}

TEST(Theorems, ExchangeSymmetry) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto s = random_spec(seed);
    const SuperpositionSpec swapped(s.a2, s.psi2, s.a1, s.psi1);
    const auto b = theorem1_bounds(s), c = theorem1_bounds(swapped);
    EXPECT_NEAR(b.upper, c.upper, 1e-12);
    EXPECT_NEAR(b.lower_raw, c.lower_raw, 1e-12);
    const auto b2 = theorem2_bounds(s), c2 = theorem2_bounds(swapped);
    EXPECT_NEAR(b2.upper, c2.upper, 1e-12);
    EXPECT_NEAR(b2.lower_raw, c2.lower_raw, 1e-12);
  }
}

TEST(Theorems, VanishingSuperpositionRefusesExactValues) {
  const auto psi = haar_random({2, 2, 2}, 3);
  const SuperpositionSpec spec(kS, psi, -kS, psi);
  EXPECT_THROW(bounds_report(spec), NearZeroNorm);
  EXPECT_NO_THROW(theorem1_bounds(spec));
  EXPECT_NEAR(theorem1_bounds(spec).lower_raw, 0.0, 1e-12);  // -F11 - F22 + 2 F12 with all equal
}

TEST(Lemma, SymmetricEquality) {
  const Triple one{1, 1, 1};
  EXPECT_TRUE(min_combine_upper(one, one, one));
  EXPECT_TRUE(min_combine_lower(one, one, one));
}

TEST(Lemma, MixedTriples) {
  // min(6,6,6) = 6 <= 1 + 3 + 3; min(-4,-2,0) = -4 >= 1 - 3 - 3
  EXPECT_TRUE(min_combine_upper({1, 2, 3}, {3, 1, 2}, {2, 3, 1}));
  EXPECT_TRUE(min_combine_lower({1, 2, 3}, {3, 1, 2}, {2, 3, 1}));
}

TEST(Lemma, RejectsNonPositive) {
  EXPECT_THROW(min_combine_upper({0, 1, 1}, {1, 1, 1}, {1, 1, 1}), std::invalid_argument);
  EXPECT_THROW(min_combine_lower({1, 1, 1}, {1, -1, 1}, {1, 1, 1}), std::invalid_argument);
}

TEST(Lemma, RandomTriples) {
  Rng rng(2024);
  int violations = 0;
  for (int n = 0; n < 20000; ++n) {
    Triple b, c, d;
    for (auto* t : {&b, &c, &d})
      for (auto& v : *t) v = 1e-6 + rng.uniform() * (n % 2 ? 1.0 : 1e3);
    violations += !min_combine_upper(b, c, d) + !min_combine_lower(b, c, d);
  }
  EXPECT_EQ(violations, 0);
}

TEST(ZFamily, Endpoints) {
  const auto rows = z_family_sweep({0.0, 1.0}, 0.0, 1);
  EXPECT_NEAR(rows[0].report.n_exact, 8.0, 1e-13);
  EXPECT_NEAR(rows[0].report.ngme_exact, 4.0 / 3.0, 1e-14);
  EXPECT_NEAR(rows[1].report.n_exact, 6.0, 1e-13);
  EXPECT_NEAR(rows[1].report.ngme_exact, 1.0, 1e-14);
}

// Frozen from a dense-generator numpy evaluation at p = 1/2, phi = 0:
// N = 7 + 2 sqrt6, N_GME = 7/6 + sqrt6/3, S_gamma(GHZ, W) = sqrt6/3.
TEST(ZFamily, GoldenHalf) {
  const auto r = bounds_report(z_family({0.5, 0.0}));
  EXPECT_NEAR(r.norm_sq, 1.0, 1e-15);
  EXPECT_NEAR(r.n_exact, 11.89897948556636, 1e-12);
  EXPECT_NEAR(r.ngme_exact, 1.9831632475943932, 1e-12);
  EXPECT_NEAR(r.terms.raw[2][0], 0.816496580927726, 1e-12);
  EXPECT_NEAR(r.t1.upper, 11.898979485566358, 1e-12);
  EXPECT_NEAR(r.t1.lower_raw, -2.101020514433645, 1e-12);
  EXPECT_NEAR(r.t2.upper, 1.9831632475943932, 1e-12);
  EXPECT_NEAR(r.t2.lower_raw, -0.3501700857389407, 1e-12);
  EXPECT_NEAR(r.n_exact, 7.0 + 2.0 * kSqrt6, 1e-12);
  EXPECT_NEAR(r.ngme_exact, 7.0 / 6.0 + kSqrt6 / 3.0, 1e-12);
}

TEST(ZFamily, PhaseLeavesEndpointsAndBoundsAlone) {
  const auto a = bounds_report(z_family({0.0, 1.3}));
  EXPECT_NEAR(a.ngme_exact, 4.0 / 3.0, 1e-14);
  const auto b = bounds_report(z_family({0.3, 0.0})), c = bounds_report(z_family({0.3, 2.0}));
  EXPECT_NEAR(b.t2.upper, c.t2.upper, 1e-12);
  EXPECT_NEAR(b.t1.upper, c.t1.upper, 1e-12);
}

TEST(ZFamily, RangeChecked) {
  EXPECT_THROW(z_family({1.5, 0.0}), std::domain_error);
  EXPECT_THROW(z_family_sweep({0.2, -0.1}, 0.0), std::domain_error);
}

TEST(ZFamily, CoefficientsUnitForAllP) {
  for (double p : linear_grid(0, 1, 101)) {
    const auto s = z_family({p, 0.4});
    EXPECT_NEAR(std::norm(s.a1) + std::norm(s.a2), 1.0, 1e-15);
  }
}

TEST(Sweep, OrderAndThreadIndependence) {
  const auto grid = linear_grid(0, 1, 11);
  const auto serial = z_family_sweep(grid, 0.0, 1), parallel = z_family_sweep(grid, 0.0, 4);
  ASSERT_EQ(serial.size(), 11u);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    EXPECT_EQ(serial[i].p, grid[i]);
    EXPECT_EQ(serial[i].report.n_exact, parallel[i].report.n_exact);
    EXPECT_EQ(serial[i].report.t2.upper, parallel[i].report.t2.upper);
    EXPECT_GE(serial[i].report.t2_gap(), -1e-9);
  }
}

TEST(Fit, RecoversExactThreeTermCurve) {
  std::vector<double> ps, ys;
  for (double p : linear_grid(0, 1, 21)) {
    ps.push_back(p);
    ys.push_back(0.3 * (1 - p) - 1.7 * std::sqrt(p * (1 - p)) + 2.5 * p);
  }
  const auto fit = fit_three_term(ps, ys);
  EXPECT_NEAR(fit.c[0], 0.3, 1e-12);
  EXPECT_NEAR(fit.c[1], -1.7, 1e-12);
  EXPECT_NEAR(fit.c[2], 2.5, 1e-12);
  EXPECT_LT(fit.max_residual, 1e-12);
  EXPECT_THROW(fit_three_term({0, 1}, {0, 1}), std::invalid_argument);
}

TEST(Fit, GmeCurveIsExactlyThreeTerm) {
  const auto grid = linear_grid(0, 1, 21);
  std::vector<double> ys;
  for (const auto& r : z_family_sweep(grid, 0.0)) ys.push_back(r.report.ngme_exact);
  const auto fit = fit_three_term(grid, ys);
  EXPECT_NEAR(fit.c[0], 4.0 / 3.0, 1e-10);
  EXPECT_NEAR(fit.c[1], 4.0 / kSqrt6, 1e-10);
  EXPECT_NEAR(fit.c[2], 1.0, 1e-10);
  EXPECT_LT(fit.max_residual, 1e-12);
}

TEST(LinearGrid, Shapes) {
  EXPECT_EQ(linear_grid(0, 1, 1), std::vector<double>{0.0});
  EXPECT_EQ(linear_grid(0, 1, 3), (std::vector<double>{0.0, 0.5, 1.0}));
  EXPECT_THROW(linear_grid(0, 1, 0), std::invalid_argument);
}
