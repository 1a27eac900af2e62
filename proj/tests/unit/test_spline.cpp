#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "bridge/chebyshev.hpp"
#include "bridge/errors.hpp"

TEST(CubicSpline, ReproducesLinearData) {
  const std::vector<double> x{0.0, 0.3, 1.1, 1.7, 2.0, 3.5};
  std::vector<double> y;
  for (double xi : x) y.push_back(2.5 * xi - 1.0);
  std::vector<double> q;
  for (int i = 0; i <= 70; ++i) q.push_back(3.5 * i / 70.0);
  const auto s = bridge::cubic_spline(x, y, q);
  for (std::size_t i = 0; i < q.size(); ++i) EXPECT_NEAR(s[i], 2.5 * q[i] - 1.0, 1e-13);
}

TEST(CubicSpline, InterpolatesKnotsExactly) {
  const std::vector<double> x{1.0, 2.0, 4.0, 4.5, 7.0};
  const std::vector<double> y{0.3, -1.0, 2.0, 2.2, 0.0};
  const bridge::NaturalCubicSpline s(x, y);
  for (std::size_t i = 0; i < x.size(); ++i) EXPECT_NEAR(s(x[i]), y[i], 1e-15);
}

TEST(CubicSpline, NaturalEndsAndSecondDerivativeContinuity) {
  const std::vector<double> x{0.0, 0.5, 1.5, 2.0, 3.0, 4.0};
  const std::vector<double> y{1.0, 0.2, 0.7, -0.4, 0.1, 0.9};
  const bridge::NaturalCubicSpline s(x, y);
  EXPECT_NEAR(s.second_derivative(x.front()), 0.0, 1e-13);
  EXPECT_NEAR(s.second_derivative(x.back()), 0.0, 1e-13);
  const double e = 1e-9;
  for (std::size_t i = 1; i + 1 < x.size(); ++i) {
    EXPECT_NEAR(s(x[i] - e), s(x[i] + e), 1e-8);
    EXPECT_NEAR(s.derivative(x[i] - e), s.derivative(x[i] + e), 1e-7);
    EXPECT_NEAR(s.second_derivative(x[i] - e), s.second_derivative(x[i] + e), 1e-6);
  }
}

TEST(CubicSpline, ConvergesOnSmoothFunction) {
  auto err = [](int knots) {
    std::vector<double> x, y;
    for (int i = 0; i < knots; ++i) {
      x.push_back(i / static_cast<double>(knots - 1));
      y.push_back(std::sin(3.0 * x.back()));
    }
    const bridge::NaturalCubicSpline s(x, y);
    double e = 0.0;
    // Interior probe keeps the natural end condition's O(h^2) layer out.
    for (int i = 0; i <= 200; ++i) {
      const double q = 0.25 + 0.5 * i / 200.0;
      e = std::max(e, std::abs(s(q) - std::sin(3.0 * q)));
    }
    return e;
  };
  EXPECT_LT(err(81), err(41) / 8.0);
}

TEST(CubicSpline, RejectsBadInput) {
  const std::vector<double> three{0.0, 1.0, 2.0};
  EXPECT_THROW(bridge::NaturalCubicSpline(three, three), bridge::InvalidArgument);
  const std::vector<double> unsorted{0.0, 2.0, 1.0, 3.0};
  const std::vector<double> y{0.0, 0.0, 0.0, 0.0};
  EXPECT_THROW(bridge::NaturalCubicSpline(unsorted, y), bridge::InvalidArgument);
  const std::vector<double> x{0.0, 1.0, 2.0, 3.0};
  const std::vector<double> short_y{0.0, 1.0};
  EXPECT_THROW(bridge::NaturalCubicSpline(x, short_y), bridge::InvalidArgument);
  const bridge::NaturalCubicSpline s(x, y);
  EXPECT_THROW((void)s(3.5), bridge::OutOfDomain);
  EXPECT_THROW((void)s(-0.1), bridge::OutOfDomain);
}
