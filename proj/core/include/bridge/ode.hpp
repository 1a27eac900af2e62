#pragma once

// Dormand-Prince 5(4) with the continuous extension of Hairer, Norsett and
// Wanner and a proportional-integral step-size controller.  Integrates in
// either direction; every accepted step keeps its interpolation coefficients
// so the solution can be evaluated anywhere on the covered range.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "bridge/errors.hpp"

namespace bridge {

struct OdeOptions {
  double atol = 1e-11;
  double rtol = 1e-11;
  double initial_step = 0.0;  // 0 selects a step automatically
  double max_step = 0.0;      // 0 means |t1 - t0|
  std::size_t max_steps = 2'000'000;
};

template <std::size_t N>
using OdeState = std::array<double, N>;

template <std::size_t N>
struct DenseStep {
  double t0 = 0.0;
  double h = 0.0;
  std::array<OdeState<N>, 5> coeff{};

  [[nodiscard]] OdeState<N> eval(double t) const {
    const double theta = (t - t0) / h;
    const double theta1 = 1.0 - theta;
    OdeState<N> y{};
    for (std::size_t i = 0; i < N; ++i) {
      y[i] = coeff[0][i] +
             theta * (coeff[1][i] + theta1 * (coeff[2][i] + theta * (coeff[3][i] + theta1 * coeff[4][i])));
    }
    return y;
  }
};

/// Piecewise dense output of an accepted integration.  Step nodes are kept
/// with their exact states.
template <std::size_t N>
class DenseSolution {
 public:
  DenseSolution() = default;

  [[nodiscard]] double t_begin() const { return t_.front(); }
  [[nodiscard]] double t_end() const { return t_.back(); }
  [[nodiscard]] const std::vector<double>& step_times() const { return t_; }
  [[nodiscard]] const std::vector<OdeState<N>>& step_states() const { return y_; }
  [[nodiscard]] std::size_t step_count() const { return steps_.size(); }
  [[nodiscard]] bool covers(double t) const {
    const double a = std::min(t_begin(), t_end());
    const double b = std::max(t_begin(), t_end());
    return t >= a && t <= b;
  }

  [[nodiscard]] OdeState<N> operator()(double t) const {
    if (!covers(t)) {
      throw OutOfDomain("dense output queried at t = " + std::to_string(t) + " outside [" +
                        std::to_string(std::min(t_begin(), t_end())) + ", " +
                        std::to_string(std::max(t_begin(), t_end())) + "]");
    }
    if (steps_.empty()) return y_.front();
    // Step times are monotone in the direction of integration.
    const bool forward = t_end() > t_begin();
    std::size_t lo = 0;
    std::size_t hi = steps_.size();
    while (hi - lo > 1) {
      const std::size_t mid = (lo + hi) / 2;
      const bool before = forward ? (t < t_[mid]) : (t > t_[mid]);
      if (before) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    if (t == t_[lo]) return y_[lo];
    if (t == t_[lo + 1]) return y_[lo + 1];
    return steps_[lo].eval(t);
  }

  void start(double t0, const OdeState<N>& y0) {
    t_.assign(1, t0);
    y_.assign(1, y0);
    steps_.clear();
  }
  void push(const DenseStep<N>& step, double t1, const OdeState<N>& y1) {
    steps_.push_back(step);
    t_.push_back(t1);
    y_.push_back(y1);
  }

 private:
  std::vector<double> t_;
  std::vector<OdeState<N>> y_;
  std::vector<DenseStep<N>> steps_;
};

namespace dopri {
inline constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0, c5 = 8.0 / 9.0;
inline constexpr double a21 = 1.0 / 5.0;
inline constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
inline constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
inline constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0,
                        a54 = -212.0 / 729.0;
inline constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                        a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
inline constexpr double a71 = 35.0 / 384.0, a73 = 500.0 / 1113.0, a74 = 125.0 / 192.0,
                        a75 = -2187.0 / 6784.0, a76 = 11.0 / 84.0;
inline constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                        e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;
inline constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                        d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                        d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;
}  // namespace dopri

/// Integrate y' = rhs(t, y) from t0 to t1.  `stop(t, y)` is checked after each
/// accepted step; returning true ends the integration early (the last step is
/// kept, so event location can use the dense output).
template <std::size_t N, class Rhs, class Stop>
DenseSolution<N> integrate_dopri5(Rhs&& rhs, double t0, const OdeState<N>& y0, double t1,
                                  const OdeOptions& opts, Stop&& stop) {
  using State = OdeState<N>;
  namespace dp = dopri;

  DenseSolution<N> sol;
  sol.start(t0, y0);
  if (t0 == t1) return sol;

  const double dir = t1 > t0 ? 1.0 : -1.0;
  const double span = std::abs(t1 - t0);
  const double hmax = opts.max_step > 0.0 ? opts.max_step : span;
  const double uround = std::numeric_limits<double>::epsilon();

  auto axpy = [](const State& y, double h, std::initializer_list<std::pair<double, const State*>> terms) {
    State out = y;
    for (const auto& [c, k] : terms) {
      if (c == 0.0) continue;
      for (std::size_t i = 0; i < N; ++i) out[i] += h * c * (*k)[i];
    }
    return out;
  };
  auto scaled_norm = [&](const State& v, const State& ya, const State& yb) {
    double s = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const double sk = opts.atol + opts.rtol * std::max(std::abs(ya[i]), std::abs(yb[i]));
      s += (v[i] / sk) * (v[i] / sk);
    }
    return std::sqrt(s / static_cast<double>(N));
  };

  double t = t0;
  State y = y0;
  State k1 = rhs(t, y);

  double h = opts.initial_step;
  if (h <= 0.0) {
    // Hairer's starting-step heuristic.
    const double dnf = scaled_norm(k1, y, y);
    const double dny = scaled_norm(y, y, y);
    h = (dnf <= 1e-10 || dny <= 1e-10) ? 1e-6 : 0.01 * dny / dnf;
    h = std::min(h, hmax);
    const State y1 = axpy(y, dir * h, {{1.0, &k1}});
    const State k2 = rhs(t + dir * h, y1);
    State diff{};
    for (std::size_t i = 0; i < N; ++i) diff[i] = k2[i] - k1[i];
    const double der2 = scaled_norm(diff, y, y) / h;
    const double der12 = std::max(std::abs(der2), dnf);
    const double h1 = der12 <= 1e-15 ? std::max(1e-6, h * 1e-3) : std::pow(0.01 / der12, 0.2);
    h = std::min({100.0 * h, h1, hmax});
  }
  h = std::min(h, span);

  constexpr double beta = 0.04;
  constexpr double expo1 = 0.2 - beta * 0.75;
  constexpr double safe = 0.9;
  constexpr double facc1 = 1.0 / 0.2;   // max shrink 5x
  constexpr double facc2 = 1.0 / 10.0;  // max growth 10x
  double facold = 1e-4;
  bool last_rejected = false;

  for (std::size_t nstep = 0;; ++nstep) {
    if (nstep >= opts.max_steps) throw ConvergenceError("dopri5: step budget exhausted");
    const double remaining = std::abs(t1 - t);
    bool last = false;
    if (h >= remaining * (1.0 - 1e-14)) {
      h = remaining;
      last = true;
    }
    if (h < 10.0 * uround * std::max(1.0, std::abs(t))) {
      throw ConvergenceError("dopri5: step size underflow at t = " + std::to_string(t));
    }
    const double hs = dir * h;

    const State k2 = rhs(t + dp::c2 * hs, axpy(y, hs, {{dp::a21, &k1}}));
    const State k3 = rhs(t + dp::c3 * hs, axpy(y, hs, {{dp::a31, &k1}, {dp::a32, &k2}}));
    const State k4 = rhs(t + dp::c4 * hs, axpy(y, hs, {{dp::a41, &k1}, {dp::a42, &k2}, {dp::a43, &k3}}));
    const State k5 = rhs(t + dp::c5 * hs,
                         axpy(y, hs, {{dp::a51, &k1}, {dp::a52, &k2}, {dp::a53, &k3}, {dp::a54, &k4}}));
    const State ysti = axpy(y, hs, {{dp::a61, &k1}, {dp::a62, &k2}, {dp::a63, &k3}, {dp::a64, &k4},
                                    {dp::a65, &k5}});
    const double tph = last ? t1 : t + hs;
    const State k6 = rhs(tph, ysti);
    const State ynew =
        axpy(y, hs, {{dp::a71, &k1}, {dp::a73, &k3}, {dp::a74, &k4}, {dp::a75, &k5}, {dp::a76, &k6}});
    const State k7 = rhs(tph, ynew);

    State errv{};
    for (std::size_t i = 0; i < N; ++i) {
      errv[i] = hs * (dp::e1 * k1[i] + dp::e3 * k3[i] + dp::e4 * k4[i] + dp::e5 * k5[i] + dp::e6 * k6[i] +
                      dp::e7 * k7[i]);
    }
    const double err = scaled_norm(errv, y, ynew);
    if (!std::isfinite(err)) {
      h *= 0.25;
      last_rejected = true;
      continue;
    }

    const double fac11 = std::pow(err, expo1);
    double fac = fac11 / std::pow(facold, beta);
    fac = std::max(facc2, std::min(facc1, fac / safe));
    double hnew = h / fac;

    if (err <= 1.0) {
      facold = std::max(err, 1e-4);
      DenseStep<N> step;
      step.t0 = t;
      step.h = hs;
      for (std::size_t i = 0; i < N; ++i) {
        const double ydiff = ynew[i] - y[i];
        const double bspl = hs * k1[i] - ydiff;
        step.coeff[0][i] = y[i];
        step.coeff[1][i] = ydiff;
        step.coeff[2][i] = bspl;
        step.coeff[3][i] = ydiff - hs * k7[i] - bspl;
        step.coeff[4][i] = hs * (dp::d1 * k1[i] + dp::d3 * k3[i] + dp::d4 * k4[i] + dp::d5 * k5[i] +
                                 dp::d6 * k6[i] + dp::d7 * k7[i]);
      }
      t = tph;
      y = ynew;
      k1 = k7;
      sol.push(step, t, y);
      if (last || stop(t, y)) break;
      hnew = std::min(hnew, hmax);
      if (last_rejected) hnew = std::min(hnew, h);
      last_rejected = false;
      h = hnew;
    } else {
      hnew = h / std::min(facc1, fac11 / safe);
      last_rejected = true;
      h = hnew;
    }
  }
  return sol;
}

template <std::size_t N, class Rhs>
DenseSolution<N> integrate_dopri5(Rhs&& rhs, double t0, const OdeState<N>& y0, double t1,
                                  const OdeOptions& opts) {
  return integrate_dopri5<N>(std::forward<Rhs>(rhs), t0, y0, t1, opts,
                             [](double, const OdeState<N>&) { return false; });
}

}  // namespace bridge
