#include <gtest/gtest.h>

#include <cmath>

#include "mpgn/error.hpp"
#include "mpgn/exponents.hpp"

using namespace mpgn;

TEST(Psi, IntegerLatticeFirstExponent) {
  Lattice z = make_test_lattice(TestLatticeKind::Integer, {4});
  PsiValues v = psi_values(z, TauVector({3.0, -1.0, -1.5, -0.5}), GaugeFunction::sup_plus());
  EXPECT_NEAR(v.psi[0], -1.0, 1e-15);
  EXPECT_NEAR(v.Psi[3], 0.0, 1e-15);
  EXPECT_THROW(psi_values(z, TauVector::zero(4), GaugeFunction::sup_plus()), ZeroGauge);
}

TEST(Schedule, ParseAndRadii) {
  RadiusSchedule s = RadiusSchedule::parse("1:2:4");
  auto r = s.radii();
  ASSERT_EQ(r.size(), 4u);
  EXPECT_DOUBLE_EQ(r[3], 8.0);
  EXPECT_THROW(RadiusSchedule::parse("1:2"), BadParams);
  RadiusSchedule d;
  EXPECT_NEAR(d.radii().back(), 12.0, 0.01);
}

TEST(Directions, UnitAndClosedUnderNegation) {
  auto dirs = scan_directions(3, 24);
  for (const auto& u : dirs) {
    EXPECT_NEAR(u.sup_norm(), 1.0, 1e-12);
    bool found = false;
    for (const auto& v : dirs) found = found || v == -u;
    EXPECT_TRUE(found);
  }
  EXPECT_EQ(scan_directions(3, 24), scan_directions(3, 24));
}

TEST(Scan, IntegerLatticeExponents) {
  Lattice z = make_test_lattice(TestLatticeKind::Integer, {3});
  EstimateSet est = estimate_exponents(z, GaugeFunction::sup_plus(), ScanConfig::standard(3, 8));
  EXPECT_NEAR(est.value(ExponentKind::PsiLower, 1), -1.0, 1e-12);
  EXPECT_NEAR(est.value(ExponentKind::PsiSumLower, 1), -1.0, 1e-12);
  EXPECT_NEAR(est.value(ExponentKind::PsiSumUpper, 3), 0.0, 1e-12);
  EXPECT_EQ(est.items.size(), 12u);
  EXPECT_THROW(est.get(ExponentKind::PsiLower, 4), MissingEstimates);
  // Lower traces are tail infima, hence nondecreasing.
  for (const auto& e : est.items) {
    for (std::size_t i = 1; i < e.trace.size(); ++i) {
      if (is_lower(e.kind))
        EXPECT_GE(e.trace[i].value, e.trace[i - 1].value);
      else
        EXPECT_LE(e.trace[i].value, e.trace[i - 1].value);
    }
  }
}

TEST(Scan, DeterministicOrder) {
  Lattice l = make_test_lattice(TestLatticeKind::RandomUnimodular, {3, 2});
  ScanConfig cfg = ScanConfig::standard(3, 4, RadiusSchedule::parse("1:1.5:4"));
  auto a = scan_profiles(l, cfg);
  cfg.threads = 1;
  auto b = scan_profiles(l, cfg);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].radius_index, b[i].radius_index);
    EXPECT_EQ(a[i].direction_index, b[i].direction_index);
    EXPECT_EQ(a[i].profile.lambdas, b[i].profile.lambdas);
  }
}

TEST(Scan, ShellTooSmall) {
  Lattice z = make_test_lattice(TestLatticeKind::Integer, {3});
  ScanConfig cfg = ScanConfig::standard(3, 1, RadiusSchedule::parse("1:2:2"));
  cfg.directions.resize(1);
  EXPECT_THROW(estimate_exponents(z, GaugeFunction::sup_plus(), cfg), InsufficientSamples);
}

TEST(VectorScan, IntegerLatticeIsDegenerate) {
  Lattice z = make_test_lattice(TestLatticeKind::Integer, {3});
  ExponentEstimate e = estimate_psi1_vector_scan(z, std::exp(5.0));
  EXPECT_DOUBLE_EQ(e.value, -1.0);
  EXPECT_TRUE(estimate_omega(z, std::exp(5.0)).is_positive_infinity());
}

TEST(VectorScan, CubicLatticeNearZero) {
  Lattice c = make_test_lattice(TestLatticeKind::TotallyRealCubic, {});
  ExponentEstimate e = estimate_psi1_vector_scan(c, std::exp(7.0));
  EXPECT_LT(e.value, 0.0);
  EXPECT_GT(e.value, -0.5);
  EXPECT_THROW(estimate_psi1_vector_scan(c, 0.5), BadParams);
}

TEST(Conversion, OmegaAndPsi) {
  using CD = ConversionDirection;
  EXPECT_DOUBLE_EQ(omega_psi_convert(ExtendedReal::positive_infinity(), CD::OmegaToPsi).value(), -1.0);
  EXPECT_DOUBLE_EQ(omega_psi_convert(ExtendedReal::finite(1.0), CD::OmegaToPsi).value(), -0.5);
  EXPECT_DOUBLE_EQ(omega_psi_convert(ExtendedReal::finite(2.0), CD::OmegaToPsi).value(), -2.0 / 3.0);
  EXPECT_TRUE(omega_psi_convert(ExtendedReal::finite(-1.0), CD::PsiToOmega).is_positive_infinity());
  EXPECT_DOUBLE_EQ(omega_psi_convert(ExtendedReal::finite(-0.5), CD::PsiToOmega).value(), 1.0);
  EXPECT_DOUBLE_EQ(omega_psi_convert(ExtendedReal::finite(0.0), CD::PsiToOmega).value(), 0.0);
  EXPECT_THROW(omega_psi_convert(ExtendedReal::finite(0.5), CD::PsiToOmega), OutOfDomain);
  EXPECT_THROW(omega_psi_convert(ExtendedReal::finite(-0.1), CD::OmegaToPsi), OutOfDomain);
  // Round trip.
  for (double w : {0.0, 0.25, 1.0, 3.0}) {
    auto psi = omega_psi_convert(ExtendedReal::finite(w), CD::OmegaToPsi);
    EXPECT_NEAR(omega_psi_convert(psi, CD::PsiToOmega).value(), w, 1e-12);
  }
}
