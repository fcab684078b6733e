#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "specgap/constants.hpp"
#include "specgap/errors.hpp"

namespace {

using namespace specgap;
constexpr double kPi = std::numbers::pi;

TEST(Constants, COffSolvesUnitIntegral) {
  const double c = solve_c_off();
  EXPECT_NEAR(c, published::kCOff, 1e-6);
  EXPECT_NEAR(gap_integral(0.0, c), 1.0, 1e-10);
  EXPECT_NEAR(oracle::gap_integral(0.0, c), 1.0, 1e-9);
  EXPECT_LT(c, kGapLimit);
}

TEST(Constants, Lambda0SolvesOneThird) {
  const double l0 = solve_lambda0();
  EXPECT_NEAR(ms_bound(0.0, l0), 1.0 / 3.0, 1e-10);
  EXPECT_GT(l0, published::kTauLowerBounds[0]);
  EXPECT_LT(l0, solve_c_off());
}

TEST(Constants, LambdaStar) {
  const double ls = lambda_star();
  EXPECT_NEAR(ls, published::kLambdaStar, 1e-7);
  EXPECT_NEAR(2.0 * std::asin(kPi * ls), kPi / 2.0 - 1.0 / 3.0, 1e-12);
  EXPECT_LE(ls, 1.0 / kPi);
}

TEST(Constants, TauChainExceedsPublishedLowerBounds) {
  const auto& pc = gap_constants();
  for (std::size_t j = 0; j < 5; ++j) {
    EXPECT_GT(pc.tau[j] - published::kTauLowerBounds[j], kStrictMargin) << "tau_" << j + 1;
  }
  EXPECT_EQ(pc.tau[0], pc.lambda0);
  EXPECT_EQ(pc.c_off_star, pc.tau[4]);
  EXPECT_LT(pc.tau[4], kGapLimit);
}

TEST(Constants, TauChainRecursion) {
  const auto tau = tau_chain(0.2, 0.15);
  EXPECT_EQ(tau[0], 0.2);
  for (std::size_t j = 0; j + 1 < 5; ++j) {
    EXPECT_NEAR(tau[j + 1], tau[j] + 0.15 * gap_shrink(tau[j]), 1e-15);
  }
  const auto flat = tau_chain(0.3, 0.0);
  for (double t : flat) EXPECT_EQ(t, 0.3);
}

TEST(Constants, TauChainDomainError) {
  EXPECT_THROW((void)tau_chain(kGapLimit, 0.1), DomainError);
  EXPECT_THROW((void)tau_chain(0.2, -0.1), DomainError);
}

TEST(Constants, Ordering) {
  const auto& pc = gap_constants();
  EXPECT_LT(pc.reference.c_crit, pc.c_off);
  EXPECT_LT(pc.c_off, pc.reference.am14_bound);
  EXPECT_LT(pc.reference.am14_bound, pc.c_off_star);
  EXPECT_LT(pc.c_off_star, kGapLimit);
  for (std::size_t j = 0; j + 1 < 5; ++j) EXPECT_LT(pc.tau[j], pc.tau[j + 1]);
}

TEST(Constants, MemoizedAndDeterministic) {
  const auto& a = gap_constants();
  const auto& b = gap_constants();
  EXPECT_EQ(&a, &b);
  const auto fresh = compute_gap_constants();
  EXPECT_EQ(fresh.c_off, a.c_off);
  EXPECT_EQ(fresh.tau, a.tau);
}

class NOffStar : public ::testing::Test {
protected:
  const GapConstants& pc = gap_constants();
  PiecewiseBound pw = make_piecewise_bound(pc);
};

TEST_F(NOffStar, Endpoints) {
  EXPECT_EQ(n_off_star(0.0, pw), 0.0);
  EXPECT_NEAR(n_off_star(pc.tau[0], pw), 1.0 / 3.0, 1e-10);
  EXPECT_NEAR(n_off_star(pw.domain_end, pw), kPi / 2.0, 1e-10);
  EXPECT_THROW((void)n_off_star(pw.domain_end + 1e-6, pw), DomainError);
  EXPECT_THROW((void)n_off_star(-1e-6, pw), DomainError);
}

TEST_F(NOffStar, SegmentOffsets) {
  for (std::size_t j = 0; j < 4; ++j) {
    EXPECT_NEAR(pw.segment_offsets[j], 1.0 / 3.0 + j * (3.0 * kPi - 2.0) / 24.0, 1e-15);
    EXPECT_NEAR(n_off_star(pc.tau[j], pw), pw.segment_offsets[j], 1e-10);
  }
}

TEST_F(NOffStar, ContinuousAcrossSupportingPoints) {
  for (std::size_t j = 1; j < 4; ++j) {
    const double t = pc.tau[j];
    const double left = n_off_star(std::nextafter(t, 0.0), pw);
    const double right = n_off_star(t, pw);
    EXPECT_LE(std::abs(right - left), 1e-10) << "tau_" << j + 1;
  }
}

TEST_F(NOffStar, StrictlyIncreasing) {
  double prev = -1.0;
  for (int k = 0; k <= 5000; ++k) {
    const double v = n_off_star(pw.domain_end * k / 5000.0, pw);
    ASSERT_GT(v, prev) << k;
    prev = v;
  }
}

TEST_F(NOffStar, MatchesTwoPointPartitionFormula) {
  // One arcsin step from tau_1 to tau_2 costs exactly (3 pi - 2)/24.
  EXPECT_NEAR(n_off_star(pc.tau[1], pw), 1.0 / 3.0 + (3.0 * kPi - 2.0) / 24.0, 1e-10);
}

TEST(CompareBounds, NoViolationsAndExpectedOrder) {
  const auto& pc = gap_constants();
  const auto pts = compare_bounds(1e-3, pc);
  ASSERT_FALSE(pts.empty());
  EXPECT_EQ(pts.front().t, 0.0);
  EXPECT_EQ(pts.back().t, pc.c_off);
  for (const auto& p : pts) {
    EXPECT_FALSE(p.violation) << p.t;
    EXPECT_LE(p.n_off_star, p.ms_bound + 1e-9);
    if (p.t > pc.tau[0]) EXPECT_LT(p.n_off_star, p.ms_bound) << p.t;
    EXPECT_EQ(p.general_bound.has_value(), p.t <= 1.0 / kPi);
    if (p.general_bound && p.t > 0.0) EXPECT_LT(p.ms_bound, *p.general_bound);
  }
}

TEST(CompareBounds, SpotValues) {
  const auto& pc = gap_constants();
  const auto pw = make_piecewise_bound(pc);
  EXPECT_NEAR(n_off_star(0.1, pw), ms_bound(0.0, 0.1), 1e-12);
  EXPECT_LT(n_off_star(0.3, pw), ms_bound(0.0, 0.3));
  EXPECT_LT(ms_bound(0.0, 0.25), step_bound(0.25));
}

} // namespace
