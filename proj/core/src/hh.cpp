#include "convdom/hh.hpp"

#include <cmath>

namespace convdom {

namespace {

QuadResult integrate_or_throw(const FunctionExpr& f, const Interval& iv,
                              const QuadConfig& cfg, bool weighted) {
  const QuadResult r =
      weighted ? integrate_weighted(f, iv, cfg) : integrate(f, iv, cfg);
  if (!r.converged)
    throw ToleranceNotReached(
        "quadrature tolerance not reached within the subdivision budget",
        r.value, r.error_estimate);
  return r;
}

HHReport make_report(HHId id, double lhs, double rhs, double quad_error,
                     double tau) {
  HHReport rep;
  rep.id = id;
  rep.lhs = lhs;
  rep.rhs = rhs;
  rep.margin = rhs - lhs;
  rep.quad_error = quad_error;
  const double scale = std::max({1.0, std::fabs(lhs), std::fabs(rhs)});
  if (std::fabs(rep.margin) <= quad_error)
    rep.verdict = HHVerdict::WithinError;
  else if (rep.margin >= -(tau * scale + quad_error))
    rep.verdict = HHVerdict::Holds;
  else
    rep.verdict = HHVerdict::Violated;
  return rep;
}

}  // namespace

std::string to_string(HHId id) {
  switch (id) {
    case HHId::ClassicalL: return "Classical-L";
    case HHId::ClassicalR: return "Classical-R";
    case HHId::T1a: return "T1-a";
    case HHId::T1b: return "T1-b";
    case HHId::T2L: return "T2-L";
    case HHId::T2R: return "T2-R";
    case HHId::T3a: return "T3-a";
    case HHId::T3b: return "T3-b";
    case HHId::T4a: return "T4-a";
    case HHId::T4b: return "T4-b";
  }
  return "?";
}

std::string to_string(HHVerdict v) {
  switch (v) {
    case HHVerdict::Holds: return "holds";
    case HHVerdict::Violated: return "violated";
    case HHVerdict::WithinError: return "within_error";
  }
  return "?";
}

std::vector<HHReport> verify_hh_classical(const FunctionExpr& f,
                                          const Interval& iv,
                                          const QuadConfig& cfg, double tau) {
  const double w = iv.width();
  const double fmid = evaluate(f, iv.midpoint());
  const double ends = 0.5 * (evaluate(f, iv.a) + evaluate(f, iv.b));
  const QuadResult integral = integrate_or_throw(f, iv, cfg, false);
  const double mean = integral.value / w;
  const double mean_err = integral.error_estimate / w;
  return {
      make_report(HHId::ClassicalL, fmid, mean, mean_err, tau),
      make_report(HHId::ClassicalR, mean, ends, mean_err, tau),
  };
}

std::vector<HHReport> verify_thm1(const FunctionExpr& f, const Interval& iv,
                                  const QuadConfig& cfg, double tau) {
  const double w = iv.width();
  const double fmid = evaluate(f, iv.midpoint());
  const double ends = 0.5 * (evaluate(f, iv.a) + evaluate(f, iv.b));
  const QuadResult plain = integrate_or_throw(f, iv, cfg, false);
  const QuadResult weighted = integrate_or_throw(f, iv, cfg, true);
  return {
      make_report(HHId::T1a, fmid, 4.0 / w * plain.value,
                  4.0 / w * plain.error_estimate, tau),
      make_report(HHId::T1b, weighted.value / w, ends,
                  weighted.error_estimate / w, tau),
  };
}

std::vector<HHReport> verify_thm2(const FunctionExpr& f, const Interval& iv,
                                  const QuadConfig& cfg, double tau) {
  const double w = iv.width();
  const double fmid = evaluate(f, iv.midpoint());
  const double endsum = evaluate(f, iv.a) + evaluate(f, iv.b);
  const QuadResult plain = integrate_or_throw(f, iv, cfg, false);
  const double scaled = 2.0 / w * plain.value;
  const double scaled_err = 2.0 / w * plain.error_estimate;
  return {
      make_report(HHId::T2L, fmid, scaled, scaled_err, tau),
      make_report(HHId::T2R, scaled, 2.0 * endsum, scaled_err, tau),
  };
}

std::vector<HHReport> verify_thm3(const FunctionExpr& f,
                                  const FunctionExpr& g, const Interval& iv,
                                  const QuadConfig& cfg, double tau) {
  const double w = iv.width();
  const QuadResult fi = integrate_or_throw(f, iv, cfg, false);
  const QuadResult gi = integrate_or_throw(g, iv, cfg, false);
  const QuadResult fw = integrate_or_throw(f, iv, cfg, true);
  const QuadResult gw = integrate_or_throw(g, iv, cfg, true);
  const double fmid = evaluate(f, iv.midpoint());
  const double gmid = evaluate(g, iv.midpoint());
  const double fends = 0.5 * (evaluate(f, iv.a) + evaluate(f, iv.b));
  const double gends = 0.5 * (evaluate(g, iv.a) + evaluate(g, iv.b));
  return {
      make_report(HHId::T3a, std::fabs(4.0 / w * fi.value - fmid),
                  4.0 / w * gi.value - gmid,
                  4.0 / w * (fi.error_estimate + gi.error_estimate), tau),
      make_report(HHId::T3b, std::fabs(fends - fw.value / w),
                  gends - gw.value / w,
                  (fw.error_estimate + gw.error_estimate) / w, tau),
  };
}

std::vector<HHReport> verify_thm4(const FunctionExpr& f,
                                  const FunctionExpr& g, const Interval& iv,
                                  const QuadConfig& cfg, double tau) {
  const double w = iv.width();
  const QuadResult fi = integrate_or_throw(f, iv, cfg, false);
  const QuadResult gi = integrate_or_throw(g, iv, cfg, false);
  const double fmid = evaluate(f, iv.midpoint());
  const double gmid = evaluate(g, iv.midpoint());
  const double fendsum = evaluate(f, iv.a) + evaluate(f, iv.b);
  const double gendsum = evaluate(g, iv.a) + evaluate(g, iv.b);
  return {
      make_report(HHId::T4a, std::fabs(2.0 / w * fi.value - fmid),
                  2.0 / w * gi.value - gmid,
                  2.0 / w * (fi.error_estimate + gi.error_estimate), tau),
      make_report(HHId::T4b, std::fabs(fendsum - fi.value / w),
                  gendsum - gi.value / w,
                  (fi.error_estimate + gi.error_estimate) / w, tau),
  };
}

}  // namespace convdom
