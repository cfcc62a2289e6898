#include "convdom/dominance.hpp"

#include <cmath>
#include <sstream>

#include "grid_scan.hpp"

namespace convdom {

namespace {

using detail::LhsRhs;

FunctionClass class_of(Kind kind) {
  return kind == Kind::Q ? FunctionClass::Q : FunctionClass::P;
}

double class_defect(Kind kind, double hx, double hy, double hc,
                    double lambda) {
  const LhsRhs v = kind == Kind::Q ? detail::q_condition(hx, hy, hc, lambda)
                                   : detail::p_condition(hx, hy, hc);
  return v.rhs - v.lhs;
}

// lhs = |D_f|, rhs = D_g.
LhsRhs dominance_condition(Kind kind, double fx, double fy, double fc,
                           double gx, double gy, double gc, double lambda) {
  const double df = class_defect(kind, fx, fy, fc, lambda);
  const double dg = class_defect(kind, gx, gy, gc, lambda);
  return LhsRhs{std::fabs(df), dg};
}

void check_lambda(Kind kind, double lambda) {
  if (kind == Kind::Q) {
    if (!(lambda > 0.0 && lambda < 1.0)) throw LambdaOutOfRange(lambda);
  } else {
    if (!(lambda >= 0.0 && lambda <= 1.0)) throw LambdaOutOfRange(lambda);
  }
}

}  // namespace

double dominance_defect(const DominancePair& pair, double x, double y,
                        double lambda) {
  check_lambda(pair.kind, lambda);
  const double c = detail::affine_combo(x, y, lambda);
  const LhsRhs v = dominance_condition(
      pair.kind, evaluate(pair.f, x), evaluate(pair.f, y),
      evaluate(pair.f, c), evaluate(pair.g, x), evaluate(pair.g, y),
      evaluate(pair.g, c), lambda);
  return v.rhs - v.lhs;
}

DominanceDetail check_dominated_detail(const DominancePair& pair,
                                       const SamplingPlan& plan,
                                       bool waive_membership) {
  plan.validate();
  if (!waive_membership) {
    const Verdict gm =
        check_membership(pair.g, pair.iv, class_of(pair.kind), plan);
    if (!holds(gm)) {
      std::ostringstream os;
      os << "dominating function failed its class membership check ("
         << (violated(gm) ? "violated" : "inconclusive") << ")";
      throw PrereqFailed(os.str());
    }
  }

  const std::vector<double> xs =
      detail::linspace(pair.iv.a, pair.iv.b, plan.n_x);
  std::vector<double> fx(xs.size());
  std::vector<double> gx(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    try {
      fx[i] = evaluate(pair.f, xs[i]);
      gx[i] = evaluate(pair.g, xs[i]);
    } catch (const Error& e) {
      std::ostringstream os;
      os << "grid evaluation failed: " << e.what();
      return {Inconclusive{os.str()}, xs[i], xs[i], 0.0};
    }
  }

  const bool q_lambda = pair.kind == Kind::Q;
  const double l_lo = q_lambda ? plan.lambda_margin : 0.0;
  const double l_hi = q_lambda ? 1.0 - plan.lambda_margin : 1.0;
  const std::vector<double> lambdas =
      detail::linspace(l_lo, l_hi, plan.n_lambda);

  detail::SweepResult res;
  try {
    res = detail::sweep_xyl(
        xs, lambdas, pair.iv.a, pair.iv.b, l_lo, l_hi,
        [&](std::size_t i, std::size_t j, double l) {
          const double c = detail::affine_combo(xs[i], xs[j], l);
          return dominance_condition(pair.kind, fx[i], fx[j],
                                     evaluate(pair.f, c), gx[i], gx[j],
                                     evaluate(pair.g, c), l);
        },
        [&](double x, double y, double l) {
          const double c = detail::affine_combo(x, y, l);
          return dominance_condition(
              pair.kind, evaluate(pair.f, x), evaluate(pair.f, y),
              evaluate(pair.f, c), evaluate(pair.g, x), evaluate(pair.g, y),
              evaluate(pair.g, c), l);
        },
        plan.refine_rounds, plan.seed);
  } catch (const Error& e) {
    std::ostringstream os;
    os << "dominance scan failed: " << e.what();
    return {Inconclusive{os.str()}, 0.0, 0.0, 0.0};
  }

  const double scale =
      std::max({1.0, std::fabs(res.worst.lhs), std::fabs(res.worst.rhs)});
  if (res.worst.defect < -plan.tau * scale) {
    Witness w;
    w.x = res.worst.x;
    w.y = res.worst.y;
    w.lambda = res.worst.lambda;
    w.lhs = res.worst.lhs;
    w.rhs = res.worst.rhs;
    w.gap = res.worst.lhs - res.worst.rhs;
    return {Violated{w}, res.worst.x, res.worst.y, res.worst.lambda};
  }
  return {HoldsOnSamples{res.min_margin, res.points}, res.worst.x,
          res.worst.y, res.worst.lambda};
}

Verdict check_dominated(const DominancePair& pair, const SamplingPlan& plan,
                        bool waive_membership) {
  return check_dominated_detail(pair, plan, waive_membership).verdict;
}

CharacterizationReport characterization_check(const DominancePair& pair,
                                              const SamplingPlan& plan) {
  plan.validate();
  const FunctionClass cls = class_of(pair.kind);
  const Verdict gm = check_membership(pair.g, pair.iv, cls, plan);
  if (!holds(gm))
    throw PrereqFailed(
        "dominating function failed its class membership check");

  CharacterizationReport report{
      // Membership was just established on this very plan; skip the rescan.
      check_dominated(pair, plan, /*waive_membership=*/true),
      check_membership(pair.g + pair.f, pair.iv, cls, plan),
      check_membership(pair.g - pair.f, pair.iv, cls, plan), false};
  report.consistent =
      (holds(report.direct) && holds(report.via_sum) &&
       holds(report.via_diff)) ||
      (violated(report.direct) &&
       (violated(report.via_sum) || violated(report.via_diff)));
  return report;
}

Decomposition decompose(const DominancePair& pair) {
  return Decomposition{pair.g + pair.f, pair.g - pair.f};
}

Recomposition recompose(const FunctionExpr& l, const FunctionExpr& k) {
  return Recomposition{(l - k) / 2.0, (l + k) / 2.0};
}

}  // namespace convdom
