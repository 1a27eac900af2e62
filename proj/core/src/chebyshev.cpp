#include "bridge/chebyshev.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "bridge/errors.hpp"

namespace bridge {

namespace {

void require_interval(Interval interval) {
  if (!(interval.lo < interval.hi) || !std::isfinite(interval.lo) || !std::isfinite(interval.hi)) {
    throw InvalidArgument("degenerate interval [" + std::to_string(interval.lo) + ", " +
                          std::to_string(interval.hi) + "]");
  }
}

// x_i - x_j on the standard [-1, 1] second-kind grid of m+1 points, computed
// from the angle form to avoid cancellation near the endpoints.
double std_node_difference(std::size_t i, std::size_t j, std::size_t m) {
  const double pi = std::numbers::pi;
  const auto si = static_cast<double>(i);
  const auto sj = static_cast<double>(j);
  const auto sm = static_cast<double>(m);
  return 2.0 * std::cos(pi * (si + sj - sm) / (2.0 * sm)) * std::sin(pi * (si - sj) / (2.0 * sm));
}

Eigen::MatrixXd square_derivative(std::size_t n, Interval interval) {
  const auto w = cheb_bary_weights(n);
  const std::size_t m = n - 1;
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  const double half = interval.half_width();
  for (std::size_t i = 0; i < n; ++i) {
    double diag = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      const double entry = (w[j] / w[i]) / (half * std_node_difference(i, j, m));
      d(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = entry;
      diag -= entry;
    }
    // Negative-sum diagonal: rows annihilate constants to rounding.
    d(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = diag;
  }
  return d;
}

}  // namespace

std::vector<double> cheb_points(std::size_t n, Interval interval) {
  if (n < 2) throw InvalidArgument("cheb_points needs n >= 2, got " + std::to_string(n));
  require_interval(interval);
  const std::size_t m = n - 1;
  const double mid = interval.mid();
  const double half = interval.half_width();
  std::vector<double> x(n);
  for (std::size_t k = 0; k < n; ++k) {
    // sin form is exactly antisymmetric about the centre.
    const double s = std::sin(std::numbers::pi * (2.0 * static_cast<double>(k) - static_cast<double>(m)) /
                              (2.0 * static_cast<double>(m)));
    x[k] = mid + half * s;
  }
  x.front() = interval.lo;
  x.back() = interval.hi;
  return x;
}

std::vector<double> cheb_bary_weights(std::size_t n) {
  if (n < 2) throw InvalidArgument("cheb_bary_weights needs n >= 2");
  std::vector<double> w(n);
  for (std::size_t j = 0; j < n; ++j) w[j] = (j % 2 == 0) ? 1.0 : -1.0;
  w.front() *= 0.5;
  w.back() *= 0.5;
  return w;
}

ChebGrid::ChebGrid(std::size_t n, Interval interval)
    : interval_(interval), nodes_(cheb_points(n, interval)), weights_(cheb_bary_weights(n)) {}

Eigen::MatrixXd interpolation_matrix(const ChebGrid& from, std::span<const double> to) {
  const auto n = from.size();
  const auto x = from.nodes();
  const auto w = from.weights();
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(to.size()),
                                            static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < to.size(); ++i) {
    const double y = to[i];
    if (!from.interval().contains(y)) {
      throw OutOfDomain("interpolation point " + std::to_string(y) + " outside grid interval");
    }
    std::size_t exact = n;
    for (std::size_t j = 0; j < n; ++j) {
      if (y == x[j]) {
        exact = j;
        break;
      }
    }
    const auto row = static_cast<Eigen::Index>(i);
    if (exact < n) {
      p(row, static_cast<Eigen::Index>(exact)) = 1.0;
      continue;
    }
    double denom = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double t = w[j] / (y - x[j]);
      p(row, static_cast<Eigen::Index>(j)) = t;
      denom += t;
    }
    p.row(row) /= denom;
  }
  return p;
}

DiffOperator diff_operator(std::size_t rows, std::size_t cols, int order, Interval interval) {
  if (cols < 2) throw InvalidArgument("diff_operator needs cols >= 2");
  if (order != 0 && order != 1) throw InvalidArgument("diff_operator supports order 0 or 1 only");
  if (rows != cols && rows + 1 != cols) {
    throw InvalidArgument("diff_operator supports rows == cols or rows == cols - 1");
  }
  require_interval(interval);

  DiffOperator op;
  op.rows = rows;
  op.cols = cols;
  op.order = order;
  op.interval = interval;

  Eigen::MatrixXd base;
  if (order == 0) {
    base = Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(cols), static_cast<Eigen::Index>(cols));
  } else {
    base = square_derivative(cols, interval);
  }
  if (rows == cols) {
    op.entries = std::move(base);
    return op;
  }
  if (rows < 2) throw InvalidArgument("rectangular diff_operator needs rows >= 2");
  const ChebGrid fine(cols, interval);
  const auto coarse = cheb_points(rows, interval);
  const Eigen::MatrixXd down = interpolation_matrix(fine, coarse);
  op.entries = order == 0 ? down : Eigen::MatrixXd(down * base);
  return op;
}

double bary_eval(const ChebGrid& grid, std::span<const double> values, double point) {
  if (values.size() != grid.size()) {
    throw InvalidArgument("bary_eval: value count " + std::to_string(values.size()) +
                          " does not match grid size " + std::to_string(grid.size()));
  }
  if (!grid.interval().contains(point)) {
    throw OutOfDomain("bary_eval: point " + std::to_string(point) + " outside [" +
                      std::to_string(grid.interval().lo) + ", " + std::to_string(grid.interval().hi) + "]");
  }
  const auto x = grid.nodes();
  const auto w = grid.weights();
  double num = 0.0;
  double den = 0.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (point == x[j]) return values[j];
    const double t = w[j] / (point - x[j]);
    num += t * values[j];
    den += t;
  }
  return num / den;
}

std::vector<double> bary_eval(const ChebGrid& grid, std::span<const double> values,
                              std::span<const double> points) {
  std::vector<double> out;
  out.reserve(points.size());
  for (double p : points) out.push_back(bary_eval(grid, values, p));
  return out;
}

std::vector<double> clenshaw_curtis_weights(std::size_t n, Interval interval) {
  if (n < 2) throw InvalidArgument("clenshaw_curtis_weights needs n >= 2");
  require_interval(interval);
  const std::size_t big_n = n - 1;
  const auto nn = static_cast<double>(big_n);
  std::vector<double> w(n, 0.0);
  if (big_n % 2 == 0) {
    w.front() = w.back() = 1.0 / (nn * nn - 1.0);
  } else {
    w.front() = w.back() = 1.0 / (nn * nn);
  }
  for (std::size_t i = 1; i < big_n; ++i) {
    const double theta = std::numbers::pi * static_cast<double>(i) / nn;
    double v = 1.0;
    if (big_n % 2 == 0) {
      for (std::size_t k = 1; k < big_n / 2; ++k) {
        const auto kk = static_cast<double>(k);
        v -= 2.0 * std::cos(2.0 * kk * theta) / (4.0 * kk * kk - 1.0);
      }
      v -= std::cos(nn * theta) / (nn * nn - 1.0);
    } else {
      for (std::size_t k = 1; k <= (big_n - 1) / 2; ++k) {
        const auto kk = static_cast<double>(k);
        v -= 2.0 * std::cos(2.0 * kk * theta) / (4.0 * kk * kk - 1.0);
      }
    }
    w[i] = 2.0 * v / nn;
  }
  const double half = interval.half_width();
  for (auto& wi : w) wi *= half;
  return w;
}

}  // namespace bridge
