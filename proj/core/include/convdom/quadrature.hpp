#pragma once

#include <cstdint>
#include <stdexcept>

#include "convdom/expr.hpp"
#include "convdom/interval.hpp"

namespace convdom {

struct QuadConfig {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  int max_subdivisions = 10000;

  void validate() const {
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0))
      throw std::invalid_argument("quadrature tolerances must be positive");
    if (max_subdivisions < 1)
      throw std::invalid_argument("max_subdivisions must be >= 1");
  }
};

struct QuadResult {
  double value = 0.0;
  double error_estimate = 0.0;
  std::int64_t evaluations = 0;
  /// False when the subdivision budget ran out before the tolerance was
  /// met; value and error_estimate are still the best available.
  bool converged = true;
};

/// Adaptive Simpson quadrature of f over iv. Subdivision always bisects and
/// processes the left half first, so results are identical across runs.
/// Endpoint evaluation failures propagate as NonFiniteValue; the interval is
/// never silently shrunk.
QuadResult integrate(const FunctionExpr& f, const Interval& iv,
                     const QuadConfig& cfg);

/// Integral of p(x)*f(x) with the weight p(x) = (b-x)(x-a)/(b-a)^2 composed
/// into the integrand before subdivision.
QuadResult integrate_weighted(const FunctionExpr& f, const Interval& iv,
                              const QuadConfig& cfg);

/// integrate(f) / (b-a), error estimate scaled identically.
QuadResult mean_value(const FunctionExpr& f, const Interval& iv,
                      const QuadConfig& cfg);

}  // namespace convdom
