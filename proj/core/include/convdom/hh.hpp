#pragma once

#include <string>
#include <vector>

#include "convdom/expr.hpp"
#include "convdom/interval.hpp"
#include "convdom/quadrature.hpp"

namespace convdom {

enum class HHId {
  ClassicalL,
  ClassicalR,
  T1a,
  T1b,
  T2L,
  T2R,
  T3a,
  T3b,
  T4a,
  T4b,
};

std::string to_string(HHId id);

enum class HHVerdict { Holds, Violated, WithinError };

std::string to_string(HHVerdict v);

/// One evaluated inequality: lhs <= rhs with margin = rhs - lhs and the
/// propagated quadrature error of the margin. WithinError when |margin| is
/// inside the quadrature error (equality families); otherwise Holds when
/// margin >= -(tau*scale + quad_error) with scale = max(1, |lhs|, |rhs|).
struct HHReport {
  HHId id;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  double quad_error = 0.0;
  HHVerdict verdict = HHVerdict::Holds;
};

inline constexpr double kDefaultHHTau = 1e-9;

/// Midpoint value <= mean value <= endpoint average.
std::vector<HHReport> verify_hh_classical(const FunctionExpr& f,
                                          const Interval& iv,
                                          const QuadConfig& cfg,
                                          double tau = kDefaultHHTau);

/// f((a+b)/2) <= (4/(b-a)) Int f, and the p-weighted mean <= endpoint
/// average, with p(x) = (b-x)(x-a)/(b-a)^2.
std::vector<HHReport> verify_thm1(const FunctionExpr& f, const Interval& iv,
                                  const QuadConfig& cfg,
                                  double tau = kDefaultHHTau);

/// f((a+b)/2) <= (2/(b-a)) Int f <= 2[f(a)+f(b)].
std::vector<HHReport> verify_thm2(const FunctionExpr& f, const Interval& iv,
                                  const QuadConfig& cfg,
                                  double tau = kDefaultHHTau);

/// Dominated analogue with constant 4: |lhs functional of f| bounded by the
/// same functional of g, for both inequalities of verify_thm1.
std::vector<HHReport> verify_thm3(const FunctionExpr& f,
                                  const FunctionExpr& g, const Interval& iv,
                                  const QuadConfig& cfg,
                                  double tau = kDefaultHHTau);

/// Dominated analogue with constant 2 and plain endpoint sums.
std::vector<HHReport> verify_thm4(const FunctionExpr& f,
                                  const FunctionExpr& g, const Interval& iv,
                                  const QuadConfig& cfg,
                                  double tau = kDefaultHHTau);

}  // namespace convdom
