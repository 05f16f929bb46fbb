#include <gtest/gtest.h>

#include <cmath>

#include "mpgn/error.hpp"
#include "mpgn/gauge.hpp"
#include "mpgn/lattice.hpp"
#include "mpgn/tau.hpp"

using namespace mpgn;

TEST(Tau, RejectsNonzeroSum) {
  EXPECT_THROW(TauVector({1.0, 0.0, 0.0}), BadParams);
  EXPECT_NO_THROW(TauVector({1.0, -1.0, 0.0}));
}

TEST(Tau, ProjectionSubtractsMean) {
  TauVector t = TauVector::projected({3.0, 0.0, 0.0});
  EXPECT_DOUBLE_EQ(t[0], 2.0);
  EXPECT_DOUBLE_EQ(t[1], -1.0);
  EXPECT_DOUBLE_EQ(gauge_plus(t), 2.0);
  EXPECT_DOUBLE_EQ(gauge_minus(t), 1.0);
  EXPECT_DOUBLE_EQ(t.sup_norm(), 2.0);
}

TEST(Gauge, ValuesAndConjugates) {
  TauVector t({2.0, -0.5, -1.5});
  EXPECT_DOUBLE_EQ(GaugeFunction::sup_plus()(t), 2.0);
  EXPECT_DOUBLE_EQ(GaugeFunction::sup_minus()(t), 1.5);
  EXPECT_DOUBLE_EQ(GaugeFunction::sup()(t), 2.0);
  EXPECT_EQ(GaugeFunction::sup_plus().conjugate(), GaugeFunction::sup_minus());
  EXPECT_EQ(GaugeFunction::sup().conjugate(), GaugeFunction::sup());
  GaugeFunction w = GaugeFunction::parse("weighted:1,2,3");
  EXPECT_DOUBLE_EQ(w(t), 2.0);
  EXPECT_DOUBLE_EQ(w.conjugate()(t), 3.0 * 1.5);
  EXPECT_EQ(GaugeFunction::parse(w.conjugate().name()), w.conjugate());
  EXPECT_THROW(GaugeFunction::parse("cube"), BadParams);
}

TEST(Lattice, NormalizesToUnimodular) {
  Matrix b(2, 2);
  b << 2, 0, 0, 2;
  Lattice l(b);
  EXPECT_NEAR(std::abs(l.det()), 1.0, 1e-12);
  EXPECT_NEAR(l.basis()(0, 0), 1.0, 1e-15);
}

TEST(Lattice, SingularBasisThrows) {
  Matrix b(2, 2);
  b << 1, 2, 2, 4;
  EXPECT_THROW(Lattice{b}, SingularBasis);
}

TEST(Lattice, DualPairsToIdentity) {
  for (auto kind : {TestLatticeKind::TotallyRealCubic, TestLatticeKind::RandomUnimodular}) {
    Lattice l = make_test_lattice(kind, {3, 4});
    Lattice d = dual_lattice(l);
    Matrix prod = l.basis().transpose() * d.basis();
    EXPECT_LT((prod - Matrix::Identity(3, 3)).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Lattice, GeneratorsAreDeterministicAndUnimodular) {
  for (auto kind : {TestLatticeKind::Integer, TestLatticeKind::TotallyRealCubic, TestLatticeKind::Unipotent,
                    TestLatticeKind::RandomUnimodular, TestLatticeKind::AxisSublattice}) {
    Lattice a = make_test_lattice(kind, {3, 7});
    Lattice b = make_test_lattice(kind, {3, 7});
    EXPECT_EQ(a.basis(), b.basis());
    EXPECT_NEAR(std::abs(a.basis().determinant()), 1.0, 1e-9) << to_string(kind);
    EXPECT_EQ(parse_test_lattice_kind(to_string(kind)), kind);
  }
  EXPECT_THROW(make_test_lattice(TestLatticeKind::TotallyRealCubic, {4}), BadParams);
}

TEST(Lattice, ProductFormAndGauge) {
  const double v[3] = {2.0, -0.5, 1.0};
  EXPECT_NEAR(product_form(v), 1.0, 1e-15);
  const double z[3] = {2.0, 0.0, 1.0};
  EXPECT_EQ(product_form(z), 0.0);
  TauVector t({1.0, -1.0, 0.0});
  EXPECT_DOUBLE_EQ(cube_gauge(t, v), std::max({2.0 / std::exp(1.0), 0.5 * std::exp(1.0), 1.0}));
}

TEST(Lattice, CoeffsOrder) {
  EXPECT_TRUE(coeffs_less({0, 1}, {1, 0}));
  EXPECT_TRUE(coeffs_less({-1, 0}, {1, 0}));
  EXPECT_FALSE(coeffs_less({1, 0}, {1, 0}));
}

TEST(EnumeratePoints, IntegerCube) {
  Lattice z = make_test_lattice(TestLatticeKind::Integer, {3});
  auto pts = enumerate_points(z, TauVector::zero(3), 1.0);
  EXPECT_EQ(pts.size(), 26u);
  auto few = enumerate_points(z, TauVector({1.0, -1.0, 0.0}), 0.5);
  ASSERT_EQ(few.size(), 2u);  // +-e_1
  EXPECT_EQ(std::abs(few[0].coeffs[0]), 1);
  EXPECT_THROW(enumerate_points(z, TauVector::zero(3), 100.0, 1000), BudgetExceeded);
}
