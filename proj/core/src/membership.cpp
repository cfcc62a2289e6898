#include "convdom/membership.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "grid_scan.hpp"

namespace convdom {

namespace {

using detail::LhsRhs;
using detail::Probe;

std::string describe_failure(const char* where, const Error& e) {
  std::ostringstream os;
  os << where << ": " << e.what();
  return os.str();
}

LhsRhs class_condition(FunctionClass cls, double fx, double fy, double fc,
                       double lambda) {
  switch (cls) {
    case FunctionClass::Convex:
      return detail::convex_condition(fx, fy, fc, lambda);
    case FunctionClass::Q:
      return detail::q_condition(fx, fy, fc, lambda);
    case FunctionClass::P:
      return detail::p_condition(fx, fy, fc);
    case FunctionClass::Nonnegative:
      break;
  }
  throw std::logic_error("no pointwise condition for this class");
}

bool is_violation(const Probe& p, double tau) {
  const double scale =
      std::max({1.0, std::fabs(p.lhs), std::fabs(p.rhs)});
  return p.defect < -tau * scale;
}

Witness point_witness(const Probe& p) {
  Witness w;
  w.x = p.x;
  w.y = p.y;
  w.lambda = p.lambda;
  w.lhs = p.lhs;
  w.rhs = p.rhs;
  w.gap = p.lhs - p.rhs;
  return w;
}

}  // namespace

std::vector<double> sample_points(double lo, double hi, int n) {
  if (n < 2) throw std::invalid_argument("sample_points needs n >= 2");
  if (!(lo < hi)) throw std::invalid_argument("sample_points needs lo < hi");
  return detail::linspace(lo, hi, n);
}

double defect_convex(const FunctionExpr& f, double x, double y,
                     double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw LambdaOutOfRange(lambda);
  const double fx = evaluate(f, x);
  const double fy = evaluate(f, y);
  const double fc = evaluate(f, detail::affine_combo(x, y, lambda));
  const LhsRhs v = detail::convex_condition(fx, fy, fc, lambda);
  return v.rhs - v.lhs;
}

double defect_q(const FunctionExpr& f, double x, double y, double lambda) {
  if (!(lambda > 0.0 && lambda < 1.0)) throw LambdaOutOfRange(lambda);
  const double fx = evaluate(f, x);
  const double fy = evaluate(f, y);
  const double fc = evaluate(f, detail::affine_combo(x, y, lambda));
  const LhsRhs v = detail::q_condition(fx, fy, fc, lambda);
  return v.rhs - v.lhs;
}

double defect_p(const FunctionExpr& f, double x, double y, double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw LambdaOutOfRange(lambda);
  const double fx = evaluate(f, x);
  const double fy = evaluate(f, y);
  const double fc = evaluate(f, detail::affine_combo(x, y, lambda));
  const LhsRhs v = detail::p_condition(fx, fy, fc);
  return v.rhs - v.lhs;
}

double triple_product_defect(const FunctionExpr& f, double x, double y,
                             double z) {
  const double fx = evaluate(f, x);
  const double fy = evaluate(f, y);
  const double fz = evaluate(f, z);
  return fx * (x - y) * (x - z) + fy * (y - x) * (y - z) +
         fz * (z - x) * (z - y);
}

MembershipDetail check_membership_detail(const FunctionExpr& f,
                                         const Interval& iv,
                                         FunctionClass cls,
                                         const SamplingPlan& plan) {
  plan.validate();
  const std::vector<double> xs = detail::linspace(iv.a, iv.b, plan.n_x);

  std::vector<double> fx(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    try {
      fx[i] = evaluate(f, xs[i]);
    } catch (const Error& e) {
      return {Inconclusive{describe_failure("grid evaluation failed", e)},
              xs[i], xs[i], 0.0};
    }
  }

  double min_margin = std::numeric_limits<double>::infinity();
  std::int64_t points = 0;

  if (cls != FunctionClass::Convex) {
    detail::SweepResult nn;
    try {
      nn = detail::sweep_x(
          xs, iv.a, iv.b, [&](std::size_t i) { return LhsRhs{0.0, fx[i]}; },
          [&](double x) { return LhsRhs{0.0, evaluate(f, x)}; },
          plan.refine_rounds, plan.seed);
    } catch (const Error& e) {
      return {Inconclusive{describe_failure("nonnegativity scan failed", e)},
              0.0, 0.0, 0.0};
    }
    min_margin = std::min(min_margin, nn.min_margin);
    points += nn.points;
    if (is_violation(nn.worst, plan.tau)) {
      Witness w;
      w.x = nn.worst.x;
      w.lhs = nn.worst.lhs;
      w.rhs = nn.worst.rhs;
      w.gap = nn.worst.lhs - nn.worst.rhs;
      return {Violated{w}, nn.worst.x, nn.worst.x, 0.0};
    }
    if (cls == FunctionClass::Nonnegative)
      return {HoldsOnSamples{min_margin, points}, nn.worst.x, nn.worst.x,
              0.0};
  }

  const bool q_lambda = cls == FunctionClass::Q;
  const double l_lo = q_lambda ? plan.lambda_margin : 0.0;
  const double l_hi = q_lambda ? 1.0 - plan.lambda_margin : 1.0;
  const std::vector<double> lambdas =
      detail::linspace(l_lo, l_hi, plan.n_lambda);

  detail::SweepResult res;
  try {
    res = detail::sweep_xyl(
        xs, lambdas, iv.a, iv.b, l_lo, l_hi,
        [&](std::size_t i, std::size_t j, double l) {
          const double c = detail::affine_combo(xs[i], xs[j], l);
          return class_condition(cls, fx[i], fx[j], evaluate(f, c), l);
        },
        [&](double x, double y, double l) {
          const double c = detail::affine_combo(x, y, l);
          return class_condition(cls, evaluate(f, x), evaluate(f, y),
                                 evaluate(f, c), l);
        },
        plan.refine_rounds, plan.seed);
  } catch (const Error& e) {
    return {Inconclusive{describe_failure("class-condition scan failed", e)},
            0.0, 0.0, 0.0};
  }
  min_margin = std::min(min_margin, res.min_margin);
  points += res.points;

  if (is_violation(res.worst, plan.tau))
    return {Violated{point_witness(res.worst)}, res.worst.x, res.worst.y,
            res.worst.lambda};
  return {HoldsOnSamples{min_margin, points}, res.worst.x, res.worst.y,
          res.worst.lambda};
}

Verdict check_membership(const FunctionExpr& f, const Interval& iv,
                         FunctionClass cls, const SamplingPlan& plan) {
  return check_membership_detail(f, iv, cls, plan).verdict;
}

CrosscheckReport equivalence_crosscheck(const FunctionExpr& f,
                                        const Interval& iv,
                                        const SamplingPlan& plan) {
  CrosscheckReport report{Inconclusive{}, Inconclusive{}, false};
  report.eq1 = check_membership(f, iv, FunctionClass::Q, plan);

  plan.validate();
  const std::vector<double> xs = detail::linspace(iv.a, iv.b, plan.n_x);
  std::vector<double> fx(xs.size());
  bool scanned = true;
  for (std::size_t i = 0; i < xs.size() && scanned; ++i) {
    try {
      fx[i] = evaluate(f, xs[i]);
    } catch (const Error& e) {
      report.eq2 =
          Inconclusive{describe_failure("grid evaluation failed", e)};
      scanned = false;
    }
  }

  if (scanned) {
    double min_margin = std::numeric_limits<double>::infinity();
    std::int64_t count = 0;
    bool have = false;
    double bx = 0, by = 0, bz = 0, bdef = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      for (std::size_t j = i + 1; j < xs.size(); ++j) {
        for (std::size_t k = j + 1; k < xs.size(); ++k) {
          const double e = fx[i] * (xs[i] - xs[j]) * (xs[i] - xs[k]) +
                           fx[j] * (xs[j] - xs[i]) * (xs[j] - xs[k]) +
                           fx[k] * (xs[k] - xs[i]) * (xs[k] - xs[j]);
          ++count;
          min_margin = std::min(min_margin, e);
          const bool worse =
              !have || e < bdef ||
              (e == bdef && (xs[i] < bx || (xs[i] == bx && xs[j] < by) ||
                             (xs[i] == bx && xs[j] == by && xs[k] < bz)));
          if (worse) {
            have = true;
            bdef = e;
            bx = xs[i];
            by = xs[j];
            bz = xs[k];
          }
        }
      }
    }
    const double scale = std::max(1.0, std::fabs(bdef));
    if (bdef < -plan.tau * scale) {
      Witness w;
      w.x = bx;
      w.y = by;
      w.z = bz;
      w.lhs = 0.0;
      w.rhs = bdef;
      w.gap = -bdef;
      report.eq2 = Violated{w};
    } else {
      report.eq2 = HoldsOnSamples{min_margin, count};
    }
  }

  report.agree = (holds(report.eq1) && holds(report.eq2)) ||
                 (violated(report.eq1) && violated(report.eq2));
  return report;
}

}  // namespace convdom
