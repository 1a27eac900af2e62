#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "bridge/chebyshev.hpp"
#include "bridge/errors.hpp"

using bridge::Interval;

namespace {

// T_k and its derivatives on [-1, 1] via the trigonometric form, for checks
// that do not go through the library's own interpolation.
double cheb_t(int k, double t) { return std::cos(k * std::acos(std::clamp(t, -1.0, 1.0))); }

double cheb_t_prime(int k, double t) {
  if (std::abs(t) >= 1.0) {
    const double s = t > 0 ? 1.0 : (k % 2 == 0 ? -1.0 : 1.0);
    return s * k * k;
  }
  const double th = std::acos(t);
  return k * std::sin(k * th) / std::sin(th);
}

// Random combination of T_0 .. T_{deg} mapped to `iv`, with its derivative.
struct Poly {
  std::vector<double> c;
  Interval iv;
  double operator()(double x) const {
    const double t = (x - iv.mid()) / iv.half_width();
    double s = 0.0;
    for (std::size_t k = 0; k < c.size(); ++k) s += c[k] * cheb_t(static_cast<int>(k), t);
    return s;
  }
  double prime(double x) const {
    const double t = (x - iv.mid()) / iv.half_width();
    double s = 0.0;
    for (std::size_t k = 0; k < c.size(); ++k) s += c[k] * cheb_t_prime(static_cast<int>(k), t);
    return s / iv.half_width();
  }
};

Poly random_poly(std::size_t degree, Interval iv, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Poly p{std::vector<double>(degree + 1), iv};
  for (auto& c : p.c) c = u(rng);
  return p;
}

Eigen::VectorXd sample(const Poly& p, std::span<const double> x) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(x.size()));
  for (std::size_t i = 0; i < x.size(); ++i) v(static_cast<Eigen::Index>(i)) = p(x[i]);
  return v;
}

}  // namespace

TEST(ChebPoints, TwoPointsAreTheEndpoints) {
  const auto x = bridge::cheb_points(2, Interval{0.5, 3.0});
  ASSERT_EQ(x.size(), 2u);
  EXPECT_EQ(x[0], 0.5);
  EXPECT_EQ(x[1], 3.0);
}

TEST(ChebPoints, FivePointsOnUnitInterval) {
  const auto x = bridge::cheb_points(5, Interval{-1.0, 1.0});
  const double h = std::numbers::sqrt2 / 2.0;
  const std::vector<double> expect{-1.0, -h, 0.0, h, 1.0};
  for (std::size_t i = 0; i < 5; ++i) EXPECT_NEAR(x[i], expect[i], 1e-15);
}

TEST(ChebPoints, AscendingWithExactEndpoints) {
  const Interval iv{0.085, 2.0};
  const auto x = bridge::cheb_points(100, iv);
  EXPECT_EQ(x.front(), iv.lo);
  EXPECT_EQ(x.back(), iv.hi);
  for (std::size_t i = 1; i < x.size(); ++i) EXPECT_LT(x[i - 1], x[i]);
}

TEST(ChebPoints, RejectsBadArguments) {
  EXPECT_THROW((void)bridge::cheb_points(1, Interval{}), bridge::InvalidArgument);
  EXPECT_THROW((void)bridge::cheb_points(4, Interval{1.0, 1.0}), bridge::InvalidArgument);
  EXPECT_THROW((void)bridge::cheb_points(4, Interval{2.0, 1.0}), bridge::InvalidArgument);
}

TEST(ChebWeights, HalfEndpointsAndAlternatingSigns) {
  const auto w = bridge::cheb_bary_weights(6);
  EXPECT_DOUBLE_EQ(std::abs(w.front()), 0.5);
  EXPECT_DOUBLE_EQ(std::abs(w.back()), 0.5);
  for (std::size_t i = 1; i + 1 < w.size(); ++i) EXPECT_DOUBLE_EQ(std::abs(w[i]), 1.0);
  for (std::size_t i = 1; i < w.size(); ++i) EXPECT_LT(w[i - 1] * w[i], 0.0);
}

class SquareDiffExact : public ::testing::TestWithParam<std::size_t> {};

TEST_P(SquareDiffExact, ExactOnPolynomialsBelowGridDegree) {
  const std::size_t n = GetParam();
  for (const Interval iv : {Interval{-1.0, 1.0}, Interval{0.085, 2.0}}) {
    const auto d = bridge::diff_operator(n, n, 1, iv);
    const auto x = bridge::cheb_points(n, iv);
    for (unsigned seed = 1; seed <= 3; ++seed) {
      const Poly p = random_poly(n - 1, iv, seed);
      const Eigen::VectorXd dv = d.apply(sample(p, x));
      double scale = 1.0;
      for (double xi : x) scale = std::max(scale, std::abs(p.prime(xi)));
      for (std::size_t i = 0; i < n; ++i) {
        EXPECT_LE(std::abs(dv(static_cast<Eigen::Index>(i)) - p.prime(x[i])) / scale, 1e-11)
            << "n=" << n << " node " << i;
      }
    }
  }
}

INSTANTIATE_TEST_SUITE_P(GridSizes, SquareDiffExact, ::testing::Values(4, 9, 16, 33));

TEST(DiffOperator, ConstantsAndSquares) {
  const Interval iv{-1.0, 1.0};
  const auto x = bridge::cheb_points(6, iv);
  const Eigen::VectorXd ones = Eigen::VectorXd::Constant(6, 3.25);
  EXPECT_LT(bridge::diff_operator(6, 6, 1, iv).apply(ones).cwiseAbs().maxCoeff(), 1e-12);
  const Eigen::VectorXd down = bridge::diff_operator(5, 6, 0, iv).apply(ones);
  EXPECT_LT((down.array() - 3.25).abs().maxCoeff(), 1e-14);
  Eigen::VectorXd sq(6);
  for (int i = 0; i < 6; ++i) sq(i) = x[i] * x[i];
  const Eigen::VectorXd d = bridge::diff_operator(6, 6, 1, iv).apply(sq);
  for (int i = 0; i < 6; ++i) EXPECT_NEAR(d(i), 2.0 * x[i], 1e-12);
}

TEST(DiffOperator, DownSamplingIsExactOnCoarsePolynomials) {
  const std::size_t n = 20;
  const Interval iv{-1.0, 1.0};
  const auto p0 = bridge::diff_operator(n - 1, n, 0, iv);
  const auto xf = bridge::cheb_points(n, iv);
  const auto xc = bridge::cheb_points(n - 1, iv);
  const Poly p = random_poly(n - 1, iv, 7);
  const Eigen::VectorXd down = p0.apply(sample(p, xf));
  ASSERT_EQ(down.size(), static_cast<Eigen::Index>(n - 1));
  for (std::size_t i = 0; i < n - 1; ++i) EXPECT_NEAR(down(static_cast<Eigen::Index>(i)), p(xc[i]), 1e-13);
}

TEST(DiffOperator, RectangularDerivativeLandsOnCoarseGrid) {
  const std::size_t n = 24;
  const Interval iv{1.0, 5.0};
  const auto pd = bridge::diff_operator(n - 1, n, 1, iv);
  const auto xf = bridge::cheb_points(n, iv);
  const auto xc = bridge::cheb_points(n - 1, iv);
  const Poly p = random_poly(n - 1, iv, 11);
  const Eigen::VectorXd dv = pd.apply(sample(p, xf));
  for (std::size_t i = 0; i < n - 1; ++i) {
    EXPECT_NEAR(dv(static_cast<Eigen::Index>(i)), p.prime(xc[i]), 1e-11 * std::max(1.0, std::abs(p.prime(xc[i]))));
  }
}

TEST(DiffOperator, RejectsUnsupportedShapes) {
  EXPECT_THROW((void)bridge::diff_operator(5, 8, 1, Interval{}), bridge::InvalidArgument);
  EXPECT_THROW((void)bridge::diff_operator(1, 1, 1, Interval{}), bridge::InvalidArgument);
  EXPECT_THROW((void)bridge::diff_operator(6, 6, 2, Interval{}), bridge::InvalidArgument);
}

TEST(InterpolationMatrix, UnitRowsAtCoincidentNodes) {
  const bridge::ChebGrid g(9, Interval{0.0, 1.0});
  const std::vector<double> to{g[0], 0.3, g[4], g[8]};
  const Eigen::MatrixXd m = bridge::interpolation_matrix(g, to);
  EXPECT_EQ(m(0, 0), 1.0);
  EXPECT_EQ(m.row(0).sum(), 1.0);
  EXPECT_EQ(m(2, 4), 1.0);
  EXPECT_EQ(m.row(2).cwiseAbs().sum(), 1.0);
  EXPECT_EQ(m(3, 8), 1.0);
  EXPECT_NEAR(m.row(1).sum(), 1.0, 1e-14);
}

TEST(BaryEval, ExactAtNodesAndNoExtrapolation) {
  const bridge::ChebGrid g(10, Interval{-2.0, 3.0});
  std::vector<double> v(10);
  for (std::size_t i = 0; i < 10; ++i) v[i] = std::sin(g[i]);
  for (std::size_t i = 0; i < 10; ++i) EXPECT_EQ(bridge::bary_eval(g, v, g[i]), v[i]);
  EXPECT_THROW((void)bridge::bary_eval(g, v, 3.0001), bridge::OutOfDomain);
  EXPECT_THROW((void)bridge::bary_eval(g, v, -2.5), bridge::OutOfDomain);
}

TEST(BaryEval, ExponentialInterpolationErrorDecaysGeometrically) {
  const Interval iv{-1.0, 1.0};
  std::vector<double> probe(401);
  for (std::size_t i = 0; i < probe.size(); ++i) probe[i] = -1.0 + 2.0 * static_cast<double>(i) / 400.0;
  std::vector<double> errors;
  for (std::size_t n : {4u, 6u, 8u, 10u, 12u}) {
    const bridge::ChebGrid g(n, iv);
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = std::exp(g[i]);
    const auto f = bridge::bary_eval(g, v, probe);
    double e = 0.0;
    for (std::size_t i = 0; i < probe.size(); ++i) e = std::max(e, std::abs(f[i] - std::exp(probe[i])));
    errors.push_back(e);
  }
  // Each two extra nodes should buy at least two digits.
  for (std::size_t k = 1; k < errors.size(); ++k) EXPECT_LT(errors[k], 1e-2 * errors[k - 1]) << k;
  const bridge::ChebGrid g(20, iv);
  std::vector<double> v(20);
  for (std::size_t i = 0; i < 20; ++i) v[i] = std::exp(g[i]);
  const auto f = bridge::bary_eval(g, v, probe);
  for (std::size_t i = 0; i < probe.size(); ++i) EXPECT_NEAR(f[i], std::exp(probe[i]), 1e-14);
}

TEST(ClenshawCurtis, WeightsSumToWidthAndIntegratePolynomials) {
  const Interval iv{0.5, 2.5};
  const auto w = bridge::clenshaw_curtis_weights(17, iv);
  double sum = 0.0;
  for (double wi : w) sum += wi;
  EXPECT_NEAR(sum, iv.width(), 1e-14);
  for (int k = 0; k <= 15; ++k) {
    const double exact = (std::pow(iv.hi, k + 1) - std::pow(iv.lo, k + 1)) / (k + 1);
    const double q = bridge::clenshaw_curtis([k](double x) { return std::pow(x, k); }, iv, 17);
    EXPECT_NEAR(q, exact, 1e-12 * std::max(1.0, std::abs(exact))) << k;
  }
}

TEST(ClenshawCurtis, SmoothIntegrand) {
  const double q = bridge::clenshaw_curtis([](double x) { return std::exp(x); }, Interval{-1.0, 1.0}, 24);
  EXPECT_NEAR(q, std::exp(1.0) - std::exp(-1.0), 1e-14);
}
