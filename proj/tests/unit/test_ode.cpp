#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "bridge/errors.hpp"
#include "bridge/ode.hpp"

using bridge::OdeState;

TEST(Dopri5, ExponentialDecay) {
  auto rhs = [](double, const OdeState<1>& y) { return OdeState<1>{-y[0]}; };
  const auto sol = bridge::integrate_dopri5<1>(rhs, 0.0, OdeState<1>{1.0}, 5.0, bridge::OdeOptions{});
  EXPECT_EQ(sol.t_end(), 5.0);
  EXPECT_NEAR(sol(5.0)[0], std::exp(-5.0), 1e-11);
}

TEST(Dopri5, DenseOutputBetweenSteps) {
  auto rhs = [](double, const OdeState<2>& y) { return OdeState<2>{y[1], -y[0]}; };
  const auto sol = bridge::integrate_dopri5<2>(rhs, 0.0, OdeState<2>{0.0, 1.0}, 10.0, bridge::OdeOptions{});
  for (int i = 0; i <= 997; ++i) {
    const double t = 10.0 * i / 997.0;
    EXPECT_NEAR(sol(t)[0], std::sin(t), 1e-9) << t;
    EXPECT_NEAR(sol(t)[1], std::cos(t), 1e-9) << t;
  }
  EXPECT_THROW((void)sol(10.5), bridge::OutOfDomain);
}

TEST(Dopri5, BackwardIntegration) {
  auto rhs = [](double t, const OdeState<1>&) { return OdeState<1>{std::cos(t)}; };
  const double half_pi = std::numbers::pi / 2.0;
  const auto sol = bridge::integrate_dopri5<1>(rhs, half_pi, OdeState<1>{1.0}, 0.0, bridge::OdeOptions{});
  EXPECT_EQ(sol.t_end(), 0.0);
  EXPECT_NEAR(sol(0.0)[0], 0.0, 1e-11);
  EXPECT_NEAR(sol(0.4)[0], std::sin(0.4), 1e-10);
}

TEST(Dopri5, StopPredicateEndsEarly) {
  auto rhs = [](double, const OdeState<1>&) { return OdeState<1>{1.0}; };
  const auto sol = bridge::integrate_dopri5<1>(
      rhs, 0.0, OdeState<1>{0.0}, 100.0, bridge::OdeOptions{.max_step = 0.5},
      [](double, const OdeState<1>& y) { return y[0] >= 3.0; });
  EXPECT_GE(sol.step_states().back()[0], 3.0);
  EXPECT_LT(sol.t_end(), 4.0);
}

TEST(Dopri5, BlowUpExhaustsStepSize) {
  // y' = y^2, y(0) = 1 blows up at t = 1.
  auto rhs = [](double, const OdeState<1>& y) { return OdeState<1>{y[0] * y[0]}; };
  EXPECT_THROW((void)bridge::integrate_dopri5<1>(rhs, 0.0, OdeState<1>{1.0}, 2.0, bridge::OdeOptions{}),
               bridge::ConvergenceError);
}
