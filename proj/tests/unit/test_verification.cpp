#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "bridge/errors.hpp"
#include "bridge/profile.hpp"
#include "bridge/verification.hpp"

using bridge::SolverConfig;

namespace {

constexpr double kPi = std::numbers::pi;

struct Fixture {
  double sigma;
  double T;
  double r_at_0;
  bridge::PhiProfile profile;
};

Fixture make(double sigma) {
  SolverConfig cfg;
  cfg.ode_tol = 1e-13;
  const double T = bridge::solve_T(sigma, SolverConfig{}).T;
  const double r0 = bridge::top_portion(sigma, T, cfg)(0.0)[0];
  return {sigma, T, r0, bridge::phi_profile(sigma, T, 1.05 * r0 + 0.1, cfg)};
}

}  // namespace

TEST(VolumeClosedForm, VanishesAtAnchor) {
  const Fixture f = make(1.0);
  const double phi0 = kPi / 6.0;
  const double rho0 = f.profile(phi0)[0];
  EXPECT_NEAR(bridge::volume_closed_form(f.profile, phi0, rho0, phi0), 0.0, 1e-14);
  EXPECT_NEAR(bridge::volume_quadrature(f.profile, phi0, rho0, phi0), 0.0, 1e-14);
}

TEST(VolumeClosedForm, ReducesToAnnulusTermAtReturnAngle) {
  const Fixture f = make(1.0);
  const auto vc = bridge::volume_check(f.profile, 0.0);
  EXPECT_GT(vc.phi_minus, kPi / 2.0);
  EXPECT_NEAR(vc.V_closed, 2.0 * kPi * vc.rho0 * std::sin(vc.phi_minus), 1e-9);
  EXPECT_GT(vc.Delta_at_phi_minus, 0.0);
}

TEST(VolumeClosedForm, AnchorMustLieOnProfile) {
  const Fixture f = make(1.0);
  EXPECT_THROW((void)bridge::volume_closed_form(f.profile, 2.0, 0.5, 0.0), bridge::InvalidArgument);
  EXPECT_THROW((void)bridge::volume_closed_form(f.profile, 3.2, f.r_at_0, 0.0), bridge::OutOfDomain);
  EXPECT_THROW((void)bridge::volume_check(f.profile, kPi / 2.0), bridge::InvalidArgument);
}

class VolumeIdentity : public ::testing::TestWithParam<double> {};

TEST_P(VolumeIdentity, ClosedFormMatchesWashers) {
  const Fixture f = make(GetParam());
  for (double phi0 : {0.0, kPi / 8.0, kPi / 4.0, 3.0 * kPi / 8.0}) {
    const auto vc = bridge::volume_check(f.profile, phi0);
    EXPECT_LT(vc.relative_error(), 1e-8) << "phi0 = " << phi0;
  }
}

INSTANTIATE_TEST_SUITE_P(Radii, VolumeIdentity, ::testing::Values(0.1, 1.0, 2.0));

TEST(VolumeQuadrature, OrderRefinementIsStable) {
  const Fixture f = make(1.0);
  const double phi0 = kPi / 4.0;
  const double rho0 = f.profile(phi0)[0];
  const double phi = f.profile.lower_angle_at_radius(rho0);
  const double a = bridge::volume_quadrature(f.profile, phi, rho0, phi0, 128);
  const double b = bridge::volume_quadrature(f.profile, phi, rho0, phi0, 256);
  EXPECT_LT(std::abs(a - b), 1e-10);
}

TEST(VprimeCriterion, SignFollowsRadialVariation) {
  EXPECT_GT(bridge::vprime_criterion(2.0, 1.5, 0.2, 0.3), 0.0);
  EXPECT_LT(bridge::vprime_criterion(2.0, 1.5, 0.2, -0.3), 0.0);
  EXPECT_EQ(bridge::vprime_criterion(2.0, 1.5, 0.2, 0.0), 0.0);
  EXPECT_NEAR(bridge::vprime_criterion(2.0, 1.5, 0.2, 1.0), 2.0 * kPi * (0.3 + std::sin(2.0)), 1e-14);
  EXPECT_THROW((void)bridge::vprime_criterion(3.0, 1.0, -1.0, 1.0), bridge::SingularityError);
}

TEST(VprimeCriterion, OnLowerPortionAtUnitSigma) {
  const SolverConfig cfg;
  const double h = 1e-4;
  const double T = bridge::solve_T(1.0, cfg).T;
  const double Tp = (bridge::solve_T(1.0 + h, cfg).T - bridge::solve_T(1.0 - h, cfg).T) / (2.0 * h);
  const auto top = bridge::top_portion(1.0, T, cfg);
  const double rho0 = top(0.0)[0];
  const auto lower = bridge::integrate_variation_lower(1.0, T, Tp, 1.05 * rho0, cfg);
  const auto prof = bridge::phi_profile(1.0, T, 1.05 * rho0, cfg);
  const double phi_minus = prof.lower_angle_at_radius(rho0);
  const auto y = lower(phi_minus);
  const double v = bridge::vprime_criterion(phi_minus, y[0], y[1], y[2]);
  EXPECT_TRUE(std::isfinite(v));
  EXPECT_EQ(v > 0.0, y[2] > 0.0);
}

TEST(VogelBounds, SandwichAndSlack) {
  const double sigma = 0.5;
  const double T = 0.8;
  const double lo = std::sqrt(sigma / T + sigma * sigma);
  const double hi = std::sqrt(2.0 * sigma / T + sigma * sigma);
  EXPECT_TRUE(bridge::vogel_bounds_check(sigma, T, 0.5 * (lo + hi)));
  EXPECT_TRUE(bridge::vogel_bounds_check(sigma, T, lo));
  EXPECT_TRUE(bridge::vogel_bounds_check(sigma, T, hi));
  EXPECT_FALSE(bridge::vogel_bounds_check(sigma, T, 0.99 * lo));
  EXPECT_FALSE(bridge::vogel_bounds_check(sigma, T, 1.01 * hi));
  const Fixture f = make(1.0);
  EXPECT_TRUE(bridge::vogel_bounds_check(1.0, f.T, f.r_at_0));
}

TEST(TopHeight, InvertsRadius) {
  const SolverConfig cfg;
  const double T = bridge::solve_T(0.5, cfg).T;
  const auto top = bridge::top_portion(0.5, T, cfg);
  const auto y = top(0.7);
  EXPECT_NEAR(bridge::top_height_at_radius(top, y[0]), y[1], 1e-12);
  EXPECT_EQ(bridge::top_height_at_radius(top, 0.5), T);
  EXPECT_THROW((void)bridge::top_height_at_radius(top, 0.4), bridge::OutOfDomain);
}

TEST(VerifySigma, AllChecksPassAtUnitSigma) {
  const auto rep = bridge::verify_sigma(1.0, SolverConfig{});
  std::ostringstream os;
  rep.write(os);
  EXPECT_TRUE(rep.all_passed()) << os.str();
  EXPECT_GE(rep.checks.size(), 10u);
}

TEST(VerificationReport, WriteFormat) {
  bridge::VerificationReport rep;
  rep.add("alpha", true, 1.0, 2.0);
  rep.add("beta", false, 3.0, 0.5);
  EXPECT_FALSE(rep.all_passed());
  std::ostringstream os;
  rep.write(os);
  EXPECT_EQ(os.str(), "alpha PASS 1.000000e+00 2.000000e+00\nbeta FAIL 3.000000e+00 5.000000e-01\n");
}
