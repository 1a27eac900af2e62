#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace cli {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 440.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 20.0;
constexpr double kTop = 36.0;
constexpr double kBottom = 50.0;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", std::abs(v) < 1e-12 ? 0.0 : v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

double nice_step(double span) {
  const double raw = span / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double f = raw / mag;
  if (f < 1.5) return mag;
  if (f < 3.5) return 2.0 * mag;
  if (f < 7.5) return 5.0 * mag;
  return 10.0 * mag;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  void take(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void pad() {
    if (!std::isfinite(lo)) {
      lo = 0.0;
      hi = 1.0;
    }
    if (hi - lo < 1e-300) {
      lo -= 0.5;
      hi += 0.5;
    }
    const double m = 0.04 * (hi - lo);
    lo -= m;
    hi += m;
  }
};

}  // namespace

Plot::Plot(std::string title, std::string xlabel, std::string ylabel)
    : title_(std::move(title)), xlabel_(std::move(xlabel)), ylabel_(std::move(ylabel)) {}

std::string Plot::render() const {
  Range rx;
  Range ry;
  for (const auto& s : series_) {
    for (double v : s.x) rx.take(v);
    for (double v : s.y) ry.take(v);
  }
  for (const auto& r : hlines_) ry.take(r.at);
  for (const auto& r : vlines_) rx.take(r.at);
  rx.pad();
  ry.pad();

  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  if (equal_) {
    // Grow whichever range is too short for one unit to span equal pixels.
    const double sx = pw / (rx.hi - rx.lo);
    const double sy = ph / (ry.hi - ry.lo);
    if (sx < sy) {
      const double extra = ph / sx - (ry.hi - ry.lo);
      ry.lo -= 0.5 * extra;
      ry.hi += 0.5 * extra;
    } else {
      const double extra = pw / sy - (rx.hi - rx.lo);
      rx.lo -= 0.5 * extra;
      rx.hi += 0.5 * extra;
    }
  }
  auto X = [&](double x) { return kLeft + (x - rx.lo) / (rx.hi - rx.lo) * pw; };
  auto Y = [&](double y) { return kTop + (ry.hi - y) / (ry.hi - ry.lo) * ph; };

  std::string o;
  o += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) + "\" height=\"" + num(kHeight) +
       "\" viewBox=\"0 0 " + num(kWidth) + " " + num(kHeight) + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  o += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o += "<text x=\"" + num(kWidth / 2) + "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" + escape(title_) +
       "</text>\n";
  o += "<rect x=\"" + num(kLeft) + "\" y=\"" + num(kTop) + "\" width=\"" + num(pw) + "\" height=\"" + num(ph) +
       "\" fill=\"none\" stroke=\"black\"/>\n";

  const double stx = nice_step(rx.hi - rx.lo);
  for (double t = std::ceil(rx.lo / stx) * stx; t <= rx.hi; t += stx) {
    o += "<line x1=\"" + num(X(t)) + "\" y1=\"" + num(kTop + ph) + "\" x2=\"" + num(X(t)) + "\" y2=\"" +
         num(kTop + ph + 5) + "\" stroke=\"black\"/>\n";
    o += "<text x=\"" + num(X(t)) + "\" y=\"" + num(kTop + ph + 18) + "\" text-anchor=\"middle\">" +
         tick_label(t) + "</text>\n";
  }
  const double sty = nice_step(ry.hi - ry.lo);
  for (double t = std::ceil(ry.lo / sty) * sty; t <= ry.hi; t += sty) {
    o += "<line x1=\"" + num(kLeft - 5) + "\" y1=\"" + num(Y(t)) + "\" x2=\"" + num(kLeft) + "\" y2=\"" +
         num(Y(t)) + "\" stroke=\"black\"/>\n";
    o += "<text x=\"" + num(kLeft - 8) + "\" y=\"" + num(Y(t) + 4) + "\" text-anchor=\"end\">" + tick_label(t) +
         "</text>\n";
  }
  o += "<text x=\"" + num(kLeft + pw / 2) + "\" y=\"" + num(kHeight - 10) + "\" text-anchor=\"middle\">" +
       escape(xlabel_) + "</text>\n";
  o += "<text transform=\"translate(16 " + num(kTop + ph / 2) + ") rotate(-90)\" text-anchor=\"middle\">" +
       escape(ylabel_) + "</text>\n";

  o += "<defs><clipPath id=\"plot\"><rect x=\"" + num(kLeft) + "\" y=\"" + num(kTop) + "\" width=\"" + num(pw) +
       "\" height=\"" + num(ph) + "\"/></clipPath></defs>\n";
  o += "<g clip-path=\"url(#plot)\">\n";
  for (const auto& r : hlines_) {
    o += "<line x1=\"" + num(kLeft) + "\" y1=\"" + num(Y(r.at)) + "\" x2=\"" + num(kLeft + pw) + "\" y2=\"" +
         num(Y(r.at)) + "\" stroke=\"" + r.color + "\" stroke-dasharray=\"2 3\"/>\n";
  }
  for (const auto& r : vlines_) {
    o += "<line x1=\"" + num(X(r.at)) + "\" y1=\"" + num(kTop) + "\" x2=\"" + num(X(r.at)) + "\" y2=\"" +
         num(kTop + ph) + "\" stroke=\"" + r.color + "\" stroke-dasharray=\"2 3\"/>\n";
  }
  for (const auto& s : series_) {
    const std::size_t n = std::min(s.x.size(), s.y.size());
    if (s.markers) {
      for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
        o += "<circle cx=\"" + num(X(s.x[i])) + "\" cy=\"" + num(Y(s.y[i])) + "\" r=\"2.5\" fill=\"" + s.color +
             "\"/>\n";
      }
      continue;
    }
    // Non-finite samples break the line into separate pieces.
    std::string pts;
    auto flush = [&] {
      if (!pts.empty()) {
        o += "<polyline fill=\"none\" stroke=\"" + s.color + "\" stroke-width=\"1.5\"";
        if (s.stroke == Stroke::dashed) o += " stroke-dasharray=\"7 4\"";
        if (s.stroke == Stroke::dotted) o += " stroke-dasharray=\"1.5 3\"";
        o += " points=\"" + pts + "\"/>\n";
      }
      pts.clear();
    };
    for (std::size_t i = 0; i < n; ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) {
        flush();
        continue;
      }
      if (!pts.empty()) pts += ' ';
      pts += num(X(s.x[i])) + "," + num(Y(s.y[i]));
    }
    flush();
  }
  o += "</g>\n";

  double ly = kTop + 16;
  for (const auto& s : series_) {
    if (s.label.empty()) continue;
    o += "<text x=\"" + num(kLeft + pw - 8) + "\" y=\"" + num(ly) + "\" text-anchor=\"end\" fill=\"" + s.color +
         "\">" + escape(s.label) + "</text>\n";
    ly += 15;
  }
  o += "</svg>\n";
  return o;
}

}  // namespace cli
