#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace bridge {

/// Closed interval [lo, hi] with lo < hi.
struct Interval {
  double lo = -1.0;
  double hi = 1.0;

  [[nodiscard]] double mid() const { return 0.5 * (lo + hi); }
  [[nodiscard]] double half_width() const { return 0.5 * (hi - lo); }
  [[nodiscard]] double width() const { return hi - lo; }
  [[nodiscard]] bool contains(double x) const { return x >= lo && x <= hi; }
};

/// Chebyshev points of the second kind on [lo, hi], ascending, with the
/// endpoints stored exactly.
[[nodiscard]] std::vector<double> cheb_points(std::size_t n, Interval interval);

/// Barycentric weights for the second-kind points, ascending order.
/// Endpoints carry weight 1/2 and signs alternate.
[[nodiscard]] std::vector<double> cheb_bary_weights(std::size_t n);

/// Collocation grid: node count, interval and the nodes themselves.
class ChebGrid {
 public:
  ChebGrid(std::size_t n, Interval interval);

  [[nodiscard]] std::size_t size() const { return nodes_.size(); }
  [[nodiscard]] const Interval& interval() const { return interval_; }
  [[nodiscard]] std::span<const double> nodes() const { return nodes_; }
  [[nodiscard]] std::span<const double> weights() const { return weights_; }
  [[nodiscard]] double operator[](std::size_t i) const { return nodes_[i]; }

 private:
  Interval interval_;
  std::vector<double> nodes_;
  std::vector<double> weights_;
};

/// Dense collocation operator mapping samples on a `cols`-point grid to
/// samples of the `order`-th derivative of their interpolant on a `rows`-point
/// grid (rows == cols or rows == cols - 1).
struct DiffOperator {
  std::size_t rows = 0;
  std::size_t cols = 0;
  int order = 0;
  Interval interval;
  Eigen::MatrixXd entries;

  [[nodiscard]] Eigen::VectorXd apply(const Eigen::VectorXd& samples) const {
    return entries * samples;
  }
};

[[nodiscard]] DiffOperator diff_operator(std::size_t rows, std::size_t cols, int order,
                                         Interval interval);

/// Interpolation matrix from `from` nodes onto arbitrary `to` points.  Rows for
/// points that coincide with a node are exact unit rows.
[[nodiscard]] Eigen::MatrixXd interpolation_matrix(const ChebGrid& from,
                                                   std::span<const double> to);

/// Barycentric evaluation of the interpolant through (grid nodes, values).
/// Throws OutOfDomain for points outside the grid interval; no extrapolation.
[[nodiscard]] std::vector<double> bary_eval(const ChebGrid& grid, std::span<const double> values,
                                            std::span<const double> points);
[[nodiscard]] double bary_eval(const ChebGrid& grid, std::span<const double> values, double point);

/// Clenshaw-Curtis quadrature weights on the second-kind grid over `interval`.
[[nodiscard]] std::vector<double> clenshaw_curtis_weights(std::size_t n, Interval interval);

/// Integrate `f` over `interval` with an n-point Clenshaw-Curtis rule.
template <class F>
[[nodiscard]] double clenshaw_curtis(F&& f, Interval interval, std::size_t n) {
  const auto x = cheb_points(n, interval);
  const auto w = clenshaw_curtis_weights(n, interval);
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += w[i] * f(x[i]);
  return sum;
}

/// Natural cubic spline through (x, y), evaluated at `queries`.
[[nodiscard]] std::vector<double> cubic_spline(std::span<const double> x, std::span<const double> y,
                                               std::span<const double> queries);

/// Reusable natural cubic spline.
class NaturalCubicSpline {
 public:
  NaturalCubicSpline(std::span<const double> x, std::span<const double> y);

  [[nodiscard]] double operator()(double q) const;
  [[nodiscard]] double derivative(double q) const;
  [[nodiscard]] double second_derivative(double q) const;
  [[nodiscard]] double front() const { return x_.front(); }
  [[nodiscard]] double back() const { return x_.back(); }

 private:
  [[nodiscard]] std::size_t segment(double q) const;

  std::vector<double> x_;
  std::vector<double> y_;
  std::vector<double> m_;  // second derivatives at the knots
};

}  // namespace bridge
