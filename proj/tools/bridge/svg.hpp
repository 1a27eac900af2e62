#pragma once

#include <string>
#include <vector>

namespace cli {

enum class Stroke { solid, dashed, dotted };

struct Series {
  std::vector<double> x;
  std::vector<double> y;
  std::string color = "#1f4e9c";
  Stroke stroke = Stroke::solid;
  bool markers = false;  // circles at every point, no line
  std::string label;
};

/// Minimal line plot with linear axes, written as standalone SVG.
class Plot {
 public:
  Plot(std::string title, std::string xlabel, std::string ylabel);

  void add(Series s) { series_.push_back(std::move(s)); }
  void hline(double y, std::string color = "#888888") { hlines_.push_back({y, std::move(color)}); }
  void vline(double x, std::string color = "#888888") { vlines_.push_back({x, std::move(color)}); }
  /// Force equal data units on both axes (profile pictures).
  void equal_aspect() { equal_ = true; }

  [[nodiscard]] std::string render() const;

 private:
  struct Rule {
    double at;
    std::string color;
  };
  std::string title_;
  std::string xlabel_;
  std::string ylabel_;
  std::vector<Series> series_;
  std::vector<Rule> hlines_;
  std::vector<Rule> vlines_;
  bool equal_ = false;
};

/// Samples of f at `count` evenly spaced points on [lo, hi].
template <class F>
Series sample(F&& f, double lo, double hi, std::size_t count = 400) {
  Series s;
  for (std::size_t i = 0; i < count; ++i) {
    const double x = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
    s.x.push_back(x);
    s.y.push_back(f(x));
  }
  return s;
}

}  // namespace cli
