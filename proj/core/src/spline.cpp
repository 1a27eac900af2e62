#include <algorithm>
#include <cmath>
#include <string>

#include "bridge/chebyshev.hpp"
#include "bridge/errors.hpp"

namespace bridge {

NaturalCubicSpline::NaturalCubicSpline(std::span<const double> x, std::span<const double> y)
    : x_(x.begin(), x.end()), y_(y.begin(), y.end()) {
  if (x.size() != y.size()) throw InvalidArgument("cubic_spline: x and y lengths differ");
  if (x.size() < 4) throw InvalidArgument("cubic_spline: need at least 4 knots");
  for (std::size_t i = 1; i < x.size(); ++i) {
    if (!(x[i] > x[i - 1])) {
      throw InvalidArgument("cubic_spline: knots not strictly increasing at index " + std::to_string(i));
    }
  }

  // Tridiagonal system for interior second derivatives; m_0 = m_{n-1} = 0.
  const std::size_t n = x_.size();
  m_.assign(n, 0.0);
  const std::size_t k = n - 2;
  std::vector<double> diag(k), upper(k), rhs(k);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double h0 = x_[i] - x_[i - 1];
    const double h1 = x_[i + 1] - x_[i];
    diag[i - 1] = 2.0 * (h0 + h1);
    upper[i - 1] = h1;
    rhs[i - 1] = 6.0 * ((y_[i + 1] - y_[i]) / h1 - (y_[i] - y_[i - 1]) / h0);
  }
  // Thomas algorithm; the sub-diagonal entry of row r is h_{r} = x_{r+1} - x_r.
  for (std::size_t r = 1; r < k; ++r) {
    const double sub = x_[r + 1] - x_[r];
    const double f = sub / diag[r - 1];
    diag[r] -= f * upper[r - 1];
    rhs[r] -= f * rhs[r - 1];
  }
  for (std::size_t r = k; r-- > 0;) {
    double v = rhs[r];
    if (r + 1 < k) v -= upper[r] * m_[r + 2];
    m_[r + 1] = v / diag[r];
  }
}

std::size_t NaturalCubicSpline::segment(double q) const {
  if (!(q >= x_.front() && q <= x_.back())) {
    throw OutOfDomain("cubic_spline: query " + std::to_string(q) + " outside knot range");
  }
  auto it = std::upper_bound(x_.begin(), x_.end(), q);
  std::size_t i = static_cast<std::size_t>(it - x_.begin());
  if (i == 0) i = 1;
  if (i >= x_.size()) i = x_.size() - 1;
  return i - 1;
}

double NaturalCubicSpline::operator()(double q) const {
  const std::size_t i = segment(q);
  if (q == x_[i]) return y_[i];
  if (q == x_[i + 1]) return y_[i + 1];
  const double h = x_[i + 1] - x_[i];
  const double a = (x_[i + 1] - q) / h;
  const double b = (q - x_[i]) / h;
  return a * y_[i] + b * y_[i + 1] +
         ((a * a * a - a) * m_[i] + (b * b * b - b) * m_[i + 1]) * h * h / 6.0;
}

double NaturalCubicSpline::derivative(double q) const {
  const std::size_t i = segment(q);
  const double h = x_[i + 1] - x_[i];
  const double a = (x_[i + 1] - q) / h;
  const double b = (q - x_[i]) / h;
  return (y_[i + 1] - y_[i]) / h - (3.0 * a * a - 1.0) * h * m_[i] / 6.0 +
         (3.0 * b * b - 1.0) * h * m_[i + 1] / 6.0;
}

double NaturalCubicSpline::second_derivative(double q) const {
  const std::size_t i = segment(q);
  const double h = x_[i + 1] - x_[i];
  const double b = (q - x_[i]) / h;
  return (1.0 - b) * m_[i] + b * m_[i + 1];
}

std::vector<double> cubic_spline(std::span<const double> x, std::span<const double> y,
                                 std::span<const double> queries) {
  const NaturalCubicSpline spline(x, y);
  std::vector<double> out;
  out.reserve(queries.size());
  for (double q : queries) out.push_back(spline(q));
  return out;
}

}  // namespace bridge
