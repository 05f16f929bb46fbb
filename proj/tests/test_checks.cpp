#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "mpgn/checks.hpp"
#include "mpgn/error.hpp"

using namespace mpgn;

TEST(Samples, SeededAndBounded) {
  auto a = random_tau_samples(4, 50, 3.0, 11);
  auto b = random_tau_samples(4, 50, 3.0, 11);
  EXPECT_EQ(a, b);
  for (const auto& t : a) {
    EXPECT_LE(t.sup_norm(), 3.0 + 1e-12);
    double sum = 0.0;
    for (double x : t.components()) sum += x;
    EXPECT_NEAR(sum, 0.0, 1e-12);
  }
  EXPECT_NE(random_tau_samples(4, 5, 3.0, 12), random_tau_samples(4, 5, 3.0, 11));
}

TEST(Report, RecordKeepsMinimumAndMerge) {
  CheckReport r;
  r.record("x", 0.5);
  r.record("x", 0.1);
  r.record("x", 0.3);
  EXPECT_DOUBLE_EQ(r.worst_slack.at("x"), 0.1);
  EXPECT_TRUE(r.passed());
  CheckReport s;
  s.record("x", -0.2);
  s.sample_count = 3;
  r.merge(s);
  EXPECT_FALSE(r.passed());
  EXPECT_EQ(r.failures(), std::vector<std::string>{"x"});
  EXPECT_EQ(r.sample_count, 3u);
  CheckReport tiny;
  tiny.record("rounding", -1e-12);
  EXPECT_TRUE(tiny.passed());
}

class LocalSuite : public ::testing::TestWithParam<TestLatticeKind> {};

TEST_P(LocalSuite, PassesOnBundledLattice) {
  Lattice l = make_test_lattice(GetParam(), {3, 5});
  auto taus = random_tau_samples(3, 60, 8.0, 3);
  CheckReport r = check_all_local(l, taus);
  for (const auto& f : r.failures()) ADD_FAILURE() << f << " slack " << r.worst_slack.at(f);
  EXPECT_EQ(r.sample_count, 60u);
  EXPECT_NEAR(r.constants.at("log d!"), std::log(6.0), 1e-15);
}

INSTANTIATE_TEST_SUITE_P(Bundled, LocalSuite,
                         ::testing::Values(TestLatticeKind::Integer, TestLatticeKind::TotallyRealCubic,
                                           TestLatticeKind::Unipotent, TestLatticeKind::RandomUnimodular,
                                           TestLatticeKind::AxisSublattice),
                         [](const auto& info) {
                           std::string name = to_string(info.param);
                           std::erase(name, '-');
                           return name;
                         });

TEST(Checks, HigherDimensions) {
  for (int d : {2, 4, 5}) {
    Lattice l = make_test_lattice(TestLatticeKind::RandomUnimodular, {d, 8});
    CheckReport r = check_all_local(l, random_tau_samples(d, 25, 6.0, 4));
    EXPECT_TRUE(r.passed()) << d;
  }
}

TEST(Checks, DualityOnIntegerLatticeIsTight) {
  Lattice z = make_test_lattice(TestLatticeKind::Integer, {3});
  CheckReport r = check_duality(z, random_tau_samples(3, 30, 5.0, 9));
  // L_k(tau) + L_{d+1-k}(-tau) = 0 on Z^3, so the lower slack is log 3.
  EXPECT_NEAR(r.worst_slack.at("L_k + L*_{d+1-k} >= -log d, k=1"), std::log(3.0), 1e-12);
}

TEST(Checks, MutationIsDetected) {
  Lattice z = make_test_lattice(TestLatticeKind::Integer, {3});
  EngineOptions bad;
  bad.perturb_index = 2;
  bad.perturb_factor = 1.01;
  auto taus = random_tau_samples(3, 40, 8.0, 2);
  EXPECT_TRUE(check_all_local(z, taus).passed());
  EXPECT_FALSE(check_all_local(z, taus, bad).passed());
}

TEST(Checks, Deterministic) {
  Lattice l = make_test_lattice(TestLatticeKind::RandomUnimodular, {3, 1});
  auto taus = random_tau_samples(3, 30, 8.0, 5);
  EXPECT_EQ(check_all_local(l, taus).worst_slack, check_all_local(l, taus).worst_slack);
}

namespace {

struct Sets {
  EstimateSet est, dual_f, dual_conj;
};

Sets scan_sets(const Lattice& l) {
  ScanConfig cfg = ScanConfig::standard(3, 12);
  Lattice dual = dual_lattice(l);
  GaugeFunction f = GaugeFunction::sup_plus();
  return {estimate_exponents(l, f, cfg), estimate_exponents(dual, f, cfg), estimate_exponents(dual, f.conjugate(), cfg)};
}

}  // namespace

TEST(Relations, IntegerLattice) {
  Sets s = scan_sets(make_test_lattice(TestLatticeKind::Integer, {3}));
  CheckReport r = check_exponent_relations(s.est, s.dual_f, s.dual_conj);
  EXPECT_TRUE(r.passed());
  EXPECT_NEAR(r.constants.at("tol"), 0.0, 1e-12);
  // psi_lower_1 = -1 forces psi_upper_3 of the dual under f* to be 1.
  EXPECT_NEAR(s.dual_conj.value(ExponentKind::PsiUpper, 3), 1.0, 1e-12);
}

TEST(Relations, InfiniteToleranceAlwaysPasses) {
  Sets s = scan_sets(make_test_lattice(TestLatticeKind::RandomUnimodular, {3, 2}));
  RelationOptions o;
  o.tol = std::numeric_limits<double>::infinity();
  EXPECT_TRUE(check_exponent_relations(s.est, s.dual_f, s.dual_conj, o).passed());
  EXPECT_TRUE(check_split_chain(s.est, s.dual_f, s.dual_conj).passed());
}

TEST(Relations, RejectsWrongGauge) {
  Sets s = scan_sets(make_test_lattice(TestLatticeKind::Integer, {3}));
  EXPECT_THROW(check_exponent_relations(s.est, s.dual_f, s.dual_f), BadParams);
}
