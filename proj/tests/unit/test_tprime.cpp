#include <gtest/gtest.h>

#include <cmath>

#include "bridge/chebyshev.hpp"
#include "bridge/errors.hpp"
#include "bridge/tprime.hpp"

namespace {

template <class F>
bridge::TTable table_of(F f, std::size_t n = 40, bridge::Interval iv = {0.085, 2.0}) {
  bridge::TTable t;
  for (double s : bridge::cheb_points(n, iv)) {
    bridge::TSample row;
    row.sigma = s;
    row.T = f(s);
    t.samples.push_back(row);
  }
  t.grid_meta = {iv.lo, iv.hi, n};
  return t;
}

}  // namespace

TEST(ChebyshevGridCheck, AcceptsGridRejectsOthers) {
  const auto x = bridge::cheb_points(30, bridge::Interval{0.085, 2.0});
  EXPECT_TRUE(bridge::is_chebyshev_grid(x));
  auto y = x;
  y[7] += 1e-6;
  EXPECT_FALSE(bridge::is_chebyshev_grid(y));
  std::vector<double> even;
  for (int i = 0; i < 30; ++i) even.push_back(0.085 + i * (2.0 - 0.085) / 29.0);
  EXPECT_FALSE(bridge::is_chebyshev_grid(even));
}

TEST(DifferentiateT, ConstantAndLinearColumns) {
  const auto c = bridge::differentiate_T(table_of([](double) { return 0.75; }));
  for (const auto& s : c.samples) EXPECT_NEAR(*s.Tprime, 0.0, 1e-11);
  const auto l = bridge::differentiate_T(table_of([](double s) { return s; }));
  for (const auto& s : l.samples) EXPECT_NEAR(*s.Tprime, 1.0, 1e-10);
}

TEST(DifferentiateT, SmoothColumnSpectralAccuracy) {
  const auto t = bridge::differentiate_T(table_of([](double s) { return std::log(1.0 + s); }));
  for (std::size_t i = 2; i + 2 < t.samples.size(); ++i) {
    EXPECT_NEAR(*t.samples[i].Tprime, 1.0 / (1.0 + t.samples[i].sigma), 1e-11);
  }
}

TEST(DifferentiateT, OffGridAndFailedRows) {
  auto t = table_of([](double s) { return s; });
  t.samples[3].sigma += 1e-5;
  EXPECT_THROW((void)bridge::differentiate_T(t), bridge::GridMismatch);
  auto f = table_of([](double s) { return s; });
  f.samples[2].converged = false;
  EXPECT_THROW((void)bridge::differentiate_T(f), bridge::InvalidArgument);
}

TEST(IntegrateTprime, RecoversColumn) {
  const auto t = bridge::differentiate_T(table_of([](double s) { return std::sin(2.0 * s); }));
  for (std::size_t i : {5u, 17u, 39u}) {
    const double s = t.samples[i].sigma;
    EXPECT_NEAR(bridge::integrate_Tprime(t, s), std::sin(2.0 * s) - std::sin(2.0 * 0.085), 1e-12);
  }
  EXPECT_THROW((void)bridge::integrate_Tprime(t, 2.5), bridge::OutOfDomain);
}
