#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "bridge/errors.hpp"
#include "bridge/profile.hpp"
#include "bridge/variation.hpp"

using bridge::SolverConfig;
using bridge::VariationState;

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

struct Point {
  double sigma;
  double T;
  double Tprime;
};

// T and a central-difference slope from fresh solves.
Point point_at(double sigma, const SolverConfig& cfg) {
  const double h = 1e-4;
  return {sigma, bridge::solve_T(sigma, cfg).T,
          (bridge::solve_T(sigma + h, cfg).T - bridge::solve_T(sigma - h, cfg).T) / (2.0 * h)};
}

}  // namespace

TEST(VariationRhs, AtVerticalAngle) {
  const double sigma = 0.8;
  const double T = 0.9;
  const VariationState y{sigma, T, 1.3, 0.4};
  const auto d = bridge::variation_rhs(kHalfPi, y);
  EXPECT_NEAR(d[2], 0.0, 1e-16);
  const double den = sigma * T + 1.0;
  EXPECT_NEAR(d[3], (0.4 * sigma * sigma - 1.3) / (den * den), 1e-15);
}

TEST(VariationRhs, AtZeroAngle) {
  const auto d = bridge::variation_rhs(0.0, VariationState{1.5, 1.2, 0.9, 0.3});
  EXPECT_EQ(d[1], 0.0);
  EXPECT_EQ(d[3], 0.0);
}

TEST(VariationRhs, LinearInVariationBlock) {
  const VariationState y{1.1, 0.7, 0.6, -0.2};
  const VariationState z{1.1, 0.7, 3.0 * 0.6, 3.0 * -0.2};
  const auto a = bridge::variation_rhs(0.9, y);
  const auto b = bridge::variation_rhs(0.9, z);
  EXPECT_NEAR(b[2], 3.0 * a[2], 1e-15);
  EXPECT_NEAR(b[3], 3.0 * a[3], 1e-15);
  EXPECT_EQ(a[0], b[0]);
}

TEST(VariationRhs, SingularDenominator) {
  EXPECT_THROW((void)bridge::variation_rhs(0.0, VariationState{1.0, -0.5, 1.0, 0.0}), bridge::SingularityError);
}

TEST(IntegrateVariation, InitialStateAndSignsAtUnitSigma) {
  const SolverConfig cfg;
  const Point p = point_at(1.0, cfg);
  const auto tr = bridge::integrate_variation(p.sigma, p.T, p.Tprime, cfg);
  ASSERT_GE(tr.phis.size(), cfg.dense_samples);
  EXPECT_EQ(tr.phis.front(), kHalfPi);
  EXPECT_EQ(tr.phis.back(), 0.0);
  for (std::size_t i = 1; i < tr.phis.size(); ++i) EXPECT_LT(tr.phis[i], tr.phis[i - 1]);
  EXPECT_EQ(tr.r.front(), p.sigma);
  EXPECT_EQ(tr.u.front(), p.T);
  EXPECT_EQ(tr.rdot.front(), 1.0);
  EXPECT_EQ(tr.udot.front(), p.Tprime);
  EXPECT_GT(tr.rdot_at_0, 0.0);
  for (std::size_t i = 0; i + 1 < tr.phis.size(); ++i) EXPECT_GT(tr.udot[i], 0.0);
  for (std::size_t i = 0; i < tr.phis.size(); ++i) EXPECT_GT(tr.r[i] * tr.u[i] + std::sin(tr.phis[i]), 0.0);
  EXPECT_TRUE(bridge::rdot_positivity_persists(tr));
}

TEST(IntegrateVariation, MatchesDifferenceOfNeighbouringProfiles) {
  // rdot is d r(phi; sigma) / d sigma; compare with top portions at sigma +- h.
  const SolverConfig cfg;
  const double sigma = 0.6;
  const double h = 1e-4;
  const Point p = point_at(sigma, cfg);
  const auto tr = bridge::integrate_variation(p.sigma, p.T, p.Tprime, cfg);
  const auto up = bridge::top_portion(sigma + h, bridge::solve_T(sigma + h, cfg).T, cfg);
  const auto dn = bridge::top_portion(sigma - h, bridge::solve_T(sigma - h, cfg).T, cfg);
  for (double phi : {1.2, 0.8, 0.4, 0.0}) {
    const auto y = tr.dense(phi);
    EXPECT_NEAR(y[2], (up(phi)[0] - dn(phi)[0]) / (2.0 * h), 1e-5) << phi;
    EXPECT_NEAR(y[3], (up(phi)[1] - dn(phi)[1]) / (2.0 * h), 1e-5) << phi;
  }
}

TEST(IntegrateVariation, ToleranceRobustness) {
  SolverConfig cfg;
  const Point p = point_at(0.3, cfg);
  const auto fine = bridge::integrate_variation(p.sigma, p.T, p.Tprime, cfg);
  cfg.ode_tol = 1e-9;
  const auto coarse = bridge::integrate_variation(p.sigma, p.T, p.Tprime, cfg);
  EXPECT_LT(std::abs(fine.min_rdot - coarse.min_rdot), 1e-6);
}

TEST(PositivityPersists, FabricatedTrajectories) {
  bridge::VariationTrajectory t;
  t.phis = {1.5, 1.0, 0.5, 0.0};
  t.rdot = {1.0, 0.5, -0.1, -0.3};
  EXPECT_TRUE(bridge::rdot_positivity_persists(t));
  t.rdot = {1.0, -0.2, 0.4, 0.3};
  EXPECT_FALSE(bridge::rdot_positivity_persists(t));
}

TEST(SweepVariation, SingleRowMatchesDirectCall) {
  const SolverConfig cfg;
  const Point p = point_at(0.9, cfg);
  bridge::TTable t;
  bridge::TSample row;
  row.sigma = p.sigma;
  row.T = p.T;
  row.Tprime = p.Tprime;
  t.samples.push_back(row);
  const auto rep = bridge::sweep_variation(t, cfg);
  const auto direct = bridge::integrate_variation(p.sigma, p.T, p.Tprime, cfg);
  ASSERT_EQ(rep.trajectories.size(), 1u);
  EXPECT_EQ(rep.trajectories[0].min_rdot, direct.min_rdot);
  EXPECT_EQ(rep.global_min_rdot, direct.min_rdot);
  EXPECT_TRUE(rep.all_positive);
  EXPECT_EQ(rep.failed_rows(), 0u);
}

TEST(SweepVariation, RowWithoutTprimeIsRecorded) {
  const SolverConfig cfg;
  bridge::TTable t;
  bridge::TSample a;
  a.sigma = 1.0;
  a.T = bridge::solve_T(1.0, cfg).T;
  t.samples.push_back(a);
  const auto rep = bridge::sweep_variation(t, cfg);
  EXPECT_EQ(rep.failed_rows(), 1u);
  EXPECT_FALSE(rep.row_errors[0].empty());
  EXPECT_FALSE(rep.all_positive);
}

TEST(SweepVariation, NegativeSlopeRowStillRuns) {
  const SolverConfig cfg;
  bridge::TTable t;
  bridge::TSample a;
  a.sigma = 1.0;
  a.T = bridge::solve_T(1.0, cfg).T;
  a.Tprime = -0.5;
  t.samples.push_back(a);
  const auto rep = bridge::sweep_variation(t, cfg);
  EXPECT_EQ(rep.failed_rows(), 0u);
  EXPECT_EQ(rep.trajectories[0].udot.front(), -0.5);
}

TEST(LowerPortion, VariationContinuesPastVertical) {
  const SolverConfig cfg;
  const Point p = point_at(1.0, cfg);
  const auto lower = bridge::integrate_variation_lower(p.sigma, p.T, p.Tprime, 2.0, cfg);
  EXPECT_EQ(lower.t_begin(), kHalfPi);
  EXPECT_GT(lower.t_end(), kHalfPi);
  EXPECT_GE(lower.step_states().back()[0], 2.0);
}

TEST(HeightVariation, StartsFromUnitHeightPerturbation) {
  const SolverConfig cfg;
  const auto top = bridge::top_portion(1.0, bridge::solve_T(1.0, cfg).T, cfg);
  const auto y0 = top(0.0);
  const auto sol = bridge::integrate_height_variation(0.0, y0[0], y0[1], 1.0, cfg);
  EXPECT_EQ(sol.step_states().front()[2], 0.0);
  EXPECT_EQ(sol.step_states().front()[3], 1.0);
  EXPECT_EQ(sol.t_end(), 1.0);
}
