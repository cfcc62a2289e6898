#pragma once

// Internal machinery shared by the membership and dominance scans: evenly
// spaced grids, the clamped affine combination, pointwise lhs/rhs forms of
// the class conditions, and a deterministic grid sweep with golden-section
// witness refinement and seeded random restarts.
//
// Every probe updates the running (min-margin, worst-point) reduction
// through a strict total order, so the outcome does not depend on the
// order in which probes are merged.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

namespace convdom::detail {

inline std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> xs(static_cast<std::size_t>(n));
  const double w = hi - lo;
  for (int i = 0; i < n; ++i)
    xs[static_cast<std::size_t>(i)] =
        lo + w * (static_cast<double>(i) / static_cast<double>(n - 1));
  xs.front() = lo;
  xs.back() = hi;
  return xs;
}

/// lambda*x + (1-lambda)*y, clamped to the closed hull of {x, y} so that
/// rounding cannot step outside the sampled interval.
inline double affine_combo(double x, double y, double lambda) {
  const double c = lambda * x + (1.0 - lambda) * y;
  const double lo = std::min(x, y);
  const double hi = std::max(x, y);
  return std::clamp(c, lo, hi);
}

struct LhsRhs {
  double lhs;
  double rhs;
};

inline LhsRhs convex_condition(double fx, double fy, double fc,
                               double lambda) {
  return {fc, lambda * fx + (1.0 - lambda) * fy};
}

inline LhsRhs q_condition(double fx, double fy, double fc, double lambda) {
  return {fc, fx / lambda + fy / (1.0 - lambda)};
}

inline LhsRhs p_condition(double fx, double fy, double fc) {
  return {fc, fx + fy};
}

inline double condition_scale(const LhsRhs& v) {
  return std::max({1.0, std::fabs(v.lhs), std::fabs(v.rhs)});
}

struct Probe {
  double defect;  // rhs - lhs
  double x;
  double y;
  double lambda;
  double lhs;
  double rhs;
};

/// Strict total order: smaller defect is worse; exact ties break to the
/// lexicographically smallest (x, y, lambda).
inline bool more_violating(const Probe& a, const Probe& b) {
  if (a.defect != b.defect) return a.defect < b.defect;
  if (a.x != b.x) return a.x < b.x;
  if (a.y != b.y) return a.y < b.y;
  return a.lambda < b.lambda;
}

struct SweepResult {
  Probe worst{};
  double min_margin = 0.0;
  std::int64_t points = 0;
};

using IndexFn3 =
    std::function<LhsRhs(std::size_t i, std::size_t j, double lambda)>;
using PointFn3 = std::function<LhsRhs(double x, double y, double lambda)>;
using IndexFn1 = std::function<LhsRhs(std::size_t i)>;
using PointFn1 = std::function<LhsRhs(double x)>;

/// Full (x, y, lambda) sweep: grid scan through index_fn, then
/// refine_rounds of per-axis golden-section descent around the worst grid
/// point plus kRestarts seeded random restarts through point_fn.
SweepResult sweep_xyl(const std::vector<double>& xs,
                      const std::vector<double>& lambdas, double x_lo,
                      double x_hi, double l_lo, double l_hi,
                      const IndexFn3& index_fn, const PointFn3& point_fn,
                      int refine_rounds, std::uint64_t seed);

/// One-axis variant used for the nonnegativity phase.
SweepResult sweep_x(const std::vector<double>& xs, double x_lo, double x_hi,
                    const IndexFn1& index_fn, const PointFn1& point_fn,
                    int refine_rounds, std::uint64_t seed);

inline constexpr int kRestarts = 8;

}  // namespace convdom::detail
