#pragma once

#include "convdom/expr.hpp"
#include "convdom/interval.hpp"
#include "convdom/membership.hpp"

namespace convdom {

enum class Kind { Q, P };

/// Candidate f, dominating class member g, shared interval and class kind.
/// g must pass check_membership for the kind before a dominance verdict is
/// issued, unless the caller explicitly waives the prerequisite.
struct DominancePair {
  FunctionExpr f;
  FunctionExpr g;
  Interval iv;
  Kind kind;
};

/// D_g - |D_f| at one point, where D_h is the kind's class defect of h.
/// Nonnegative exactly where the dominance condition holds. Lambda must lie
/// in (0,1) for kind Q and [0,1] for kind P.
double dominance_defect(const DominancePair& pair, double x, double y,
                        double lambda);

/// Grid + refinement scan of dominance_defect with the same semantics and
/// tie-breaks as check_membership. Throws PrereqFailed when g fails its
/// class membership check and the waiver is unset.
Verdict check_dominated(const DominancePair& pair, const SamplingPlan& plan,
                        bool waive_membership = false);

struct DominanceDetail {
  Verdict verdict;
  double worst_x = 0.0;
  double worst_y = 0.0;
  double worst_lambda = 0.0;
};

DominanceDetail check_dominated_detail(const DominancePair& pair,
                                       const SamplingPlan& plan,
                                       bool waive_membership = false);

/// Three-way characterisation on one shared grid and seed: the direct
/// dominance scan against the class membership of g+f and g-f. Pointwise
/// D_g - |D_f| = min(D_{g+f}, D_{g-f}), so the verdicts must agree:
/// consistent is true when all three hold, or when the direct scan is
/// violated together with at least one of the other two.
struct CharacterizationReport {
  Verdict direct;
  Verdict via_sum;
  Verdict via_diff;
  bool consistent = false;
};

CharacterizationReport characterization_check(const DominancePair& pair,
                                              const SamplingPlan& plan);

/// l = g+f and k = g-f as explicit expression trees; for a dominated pair
/// both are class members.
struct Decomposition {
  FunctionExpr l;
  FunctionExpr k;
};

Decomposition decompose(const DominancePair& pair);

/// f = (l-k)/2 and g = (l+k)/2; inverts decompose pointwise.
struct Recomposition {
  FunctionExpr f;
  FunctionExpr g;
};

Recomposition recompose(const FunctionExpr& l, const FunctionExpr& k);

}  // namespace convdom
