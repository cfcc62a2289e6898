#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "convdom/expr.hpp"
#include "convdom/interval.hpp"

namespace convdom {

/// A named fixture: an expression together with its canonical domain.
struct CatalogEntry {
  FunctionExpr fn;
  Interval domain;
};

/// Looks up a fixture by name. Throws UnknownFixture.
///
/// The catalog deliberately mixes witnesses and counterexamples: nonnegative
/// convex functions (square, const_c, expx, recip, abs_x, square_plus1,
/// exp_negx, cosh_x, quartic, affine_pos, vee), a nonnegative monotone
/// non-convex one (sqrtx, step_up), the spike counterexample shifted_abs,
/// and the sign counterexample line_neg. Endpoint-singular functions are
/// excluded.
CatalogEntry catalog(std::string_view name);

/// All fixture names, sorted.
const std::vector<std::string>& catalog_names();

}  // namespace convdom
