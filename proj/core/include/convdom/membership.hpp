#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "convdom/expr.hpp"
#include "convdom/interval.hpp"

namespace convdom {

/// Sampling resolution for the membership and dominance scans.
struct SamplingPlan {
  int n_x = 41;               // grid points per spatial axis
  int n_lambda = 41;          // lambda grid points
  double lambda_margin = 1e-3;  // Q scans draw lambda from [eps, 1-eps]
  double tau = 1e-9;          // relative slack: holds means defect >= -tau*scale
  std::uint64_t seed = 0;     // drives the refinement restarts
  int refine_rounds = 3;

  void validate() const {
    if (n_x < 2) throw std::invalid_argument("n_x must be >= 2");
    if (n_lambda < 3) throw std::invalid_argument("n_lambda must be >= 3");
    if (!(lambda_margin > 0.0) || !(lambda_margin < 0.5))
      throw std::invalid_argument("lambda_margin must lie in (0, 1/2)");
    if (!(tau > 0.0)) throw std::invalid_argument("tau must be positive");
    if (refine_rounds < 0)
      throw std::invalid_argument("refine_rounds must be >= 0");
  }
};

enum class FunctionClass { Convex, Q, P, Nonnegative };

/// The n evenly spaced sample points on [lo, hi] used by the scans, with
/// both endpoints exact. Exposed so defect curves can be replotted on the
/// identical grid.
std::vector<double> sample_points(double lo, double hi, int n);

/// A concrete point at which a checked inequality fails. For class
/// conditions x, y, lambda are set; for nonnegativity only x; for the
/// triple-product condition x, y, z.
struct Witness {
  double x = 0.0;
  std::optional<double> y;
  std::optional<double> lambda;
  std::optional<double> z;
  double lhs = 0.0;
  double rhs = 0.0;
  double gap = 0.0;  // lhs - rhs; exceeds tau*scale for a violation
};

struct HoldsOnSamples {
  double min_margin = 0.0;
  std::int64_t points_checked = 0;
};

struct Violated {
  Witness witness;
};

struct Inconclusive {
  std::string reason;
};

/// Outcome of a sampled check. Always "on samples": evidence, not proof.
using Verdict = std::variant<HoldsOnSamples, Violated, Inconclusive>;

inline bool holds(const Verdict& v) {
  return std::holds_alternative<HoldsOnSamples>(v);
}
inline bool violated(const Verdict& v) {
  return std::holds_alternative<Violated>(v);
}
inline bool inconclusive(const Verdict& v) {
  return std::holds_alternative<Inconclusive>(v);
}

// Pointwise defects (condition's rhs minus lhs): nonnegative at a point
// exactly when the class condition holds there.

/// lambda*f(x) + (1-lambda)*f(y) - f(lambda*x + (1-lambda)*y), lambda in [0,1].
double defect_convex(const FunctionExpr& f, double x, double y, double lambda);

/// f(x)/lambda + f(y)/(1-lambda) - f(lambda*x + (1-lambda)*y); lambda must
/// lie strictly inside (0,1), otherwise LambdaOutOfRange.
double defect_q(const FunctionExpr& f, double x, double y, double lambda);

/// f(x) + f(y) - f(lambda*x + (1-lambda)*y), lambda in [0,1].
double defect_p(const FunctionExpr& f, double x, double y, double lambda);

/// f(x)(x-y)(x-z) + f(y)(y-x)(y-z) + f(z)(z-x)(z-y); nonnegative for all
/// triples exactly when the pointwise class-Q condition holds.
double triple_product_defect(const FunctionExpr& f, double x, double y,
                             double z);

/// Samples the class condition over the (x, y, lambda) grid, preceded by a
/// nonnegativity pass over the x grid for Q, P and Nonnegative. The worst
/// sample is sharpened by refine_rounds of per-axis golden-section descent
/// plus seeded random restarts. A point passes when its defect is at least
/// -tau*scale with scale = max(1, |lhs|, |rhs|); ties between equally bad
/// points break to the lexicographically smallest coordinates, so the
/// verdict is independent of scan order.
Verdict check_membership(const FunctionExpr& f, const Interval& iv,
                         FunctionClass cls, const SamplingPlan& plan);

/// check_membership plus the worst sampled point (for defect-curve export).
struct MembershipDetail {
  Verdict verdict;
  double worst_x = 0.0;
  double worst_y = 0.0;
  double worst_lambda = 0.0;
};

MembershipDetail check_membership_detail(const FunctionExpr& f,
                                         const Interval& iv,
                                         FunctionClass cls,
                                         const SamplingPlan& plan);

/// Cross-checks the two equivalent forms of the class-Q condition: the
/// pointwise bound (verdict_eq1, via check_membership) and the
/// triple-product form scanned over all distinct triples of the x grid
/// (verdict_eq2). agree is true when both hold or both are violated.
struct CrosscheckReport {
  Verdict eq1;
  Verdict eq2;
  bool agree = false;
};

CrosscheckReport equivalence_crosscheck(const FunctionExpr& f,
                                        const Interval& iv,
                                        const SamplingPlan& plan);

}  // namespace convdom
