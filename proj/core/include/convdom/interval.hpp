#pragma once

#include <cmath>
#include <stdexcept>

namespace convdom {

/// Closed compact interval [a, b] with a < b and both endpoints finite.
struct Interval {
  Interval() : Interval(0.0, 1.0) {}

  Interval(double a_, double b_) : a(a_), b(b_) {
    if (!std::isfinite(a) || !std::isfinite(b))
      throw std::invalid_argument("interval endpoints must be finite");
    if (!(a < b))
      throw std::invalid_argument("interval requires a < b");
  }

  double midpoint() const { return 0.5 * (a + b); }
  double width() const { return b - a; }
  bool contains(double x) const { return a <= x && x <= b; }

  double a;
  double b;
};

}  // namespace convdom
