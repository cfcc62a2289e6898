#include <cmath>
#include <random>

#include <doctest.h>

#include "convdom/catalog.hpp"
#include "convdom/membership.hpp"

using namespace convdom;

namespace {

const SamplingPlan kPlan{};  // 41 x 41 x 41, eps 1e-3, tau 1e-9, seed 0

double rand_in(std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> d(lo, hi);
  return d(rng);
}

const Witness& witness_of(const Verdict& v) {
  return std::get<Violated>(v).witness;
}

}  // namespace

TEST_CASE("pointwise defects: frozen values") {
  const FunctionExpr square = parse("x^2");
  const FunctionExpr c = parse("2.5");
  const FunctionExpr spike = parse("1 - abs(x)");

  CHECK(defect_convex(square, 0.0, 1.0, 0.5) == 0.25);
  CHECK(defect_convex(square, 0.3, 0.9, 0.0) == 0.0);
  CHECK(std::fabs(defect_convex(parse("x"), 0.2, 0.8, 0.3)) <= 1e-15);

  CHECK(defect_q(c, 0.1, 0.9, 0.5) == 7.5);  // 1/l + 1/(1-l) = 4 at l = 1/2
  CHECK(defect_q(square, 0.0, 1.0, 0.5) == 1.75);
  CHECK_THROWS_AS(defect_q(square, 0.0, 1.0, 0.0), LambdaOutOfRange);
  CHECK_THROWS_AS(defect_q(square, 0.0, 1.0, 1.0), LambdaOutOfRange);

  CHECK(defect_p(spike, -1.0, 1.0, 0.5) == -1.0);
  CHECK(defect_p(c, 0.2, 0.8, 0.7) == 2.5);
  CHECK(defect_p(square, 0.0, 1.0, 0.5) == 0.75);
  CHECK_THROWS_AS(defect_p(square, 0.0, 1.0, 1.5), LambdaOutOfRange);

  CHECK(triple_product_defect(parse("1"), 0.0, 1.0, 2.0) == 3.0);
  CHECK(triple_product_defect(square, 0.0, 1.0, 2.0) == 7.0);
  CHECK(triple_product_defect(parse("1"), 0.0, 0.0, 1.0) == 1.0);
}

TEST_CASE("defect swap symmetry on random tuples") {
  std::mt19937_64 rng(42);
  for (const char* name : {"square", "expx", "vee"}) {
    CAPTURE(name);
    const CatalogEntry entry = catalog(name);
    for (int i = 0; i < 1000; ++i) {
      const double x = rand_in(rng, entry.domain.a, entry.domain.b);
      const double y = rand_in(rng, entry.domain.a, entry.domain.b);
      const double l = rand_in(rng, 1e-3, 1.0 - 1e-3);
      const double q1 = defect_q(entry.fn, x, y, l);
      const double q2 = defect_q(entry.fn, y, x, 1.0 - l);
      const double scale_q = std::max({1.0, std::fabs(q1), 1.0 / l, 1.0 / (1.0 - l)});
      CHECK(std::fabs(q1 - q2) <= 1e-12 * scale_q);
      const double p1 = defect_p(entry.fn, x, y, l);
      const double p2 = defect_p(entry.fn, y, x, 1.0 - l);
      CHECK(std::fabs(p1 - p2) <= 1e-12 * std::max(1.0, std::fabs(p1)));
    }
  }
}

TEST_CASE("defects are linear in the function argument") {
  std::mt19937_64 rng(43);
  const FunctionExpr f = catalog("square").fn;
  const FunctionExpr g = catalog("expx").fn;
  for (int i = 0; i < 1000; ++i) {
    const double alpha = rand_in(rng, -2.0, 2.0);
    const double beta = rand_in(rng, -2.0, 2.0);
    const FunctionExpr combo = alpha * f + beta * g;
    const double x = rand_in(rng, 0.0, 1.0);
    const double y = rand_in(rng, 0.0, 1.0);
    const double l = rand_in(rng, 1e-3, 1.0 - 1e-3);

    const double dq = defect_q(combo, x, y, l);
    const double dq_parts =
        alpha * defect_q(f, x, y, l) + beta * defect_q(g, x, y, l);
    CHECK(std::fabs(dq - dq_parts) <=
          1e-12 * std::max({1.0, std::fabs(dq), 1.0 / l, 1.0 / (1.0 - l)}));

    const double dp = defect_p(combo, x, y, l);
    const double dp_parts =
        alpha * defect_p(f, x, y, l) + beta * defect_p(g, x, y, l);
    CHECK(std::fabs(dp - dp_parts) <= 1e-12 * std::max(1.0, std::fabs(dp)));

    const double dc = defect_convex(combo, x, y, l);
    const double dc_parts =
        alpha * defect_convex(f, x, y, l) + beta * defect_convex(g, x, y, l);
    CHECK(std::fabs(dc - dc_parts) <= 1e-12 * std::max(1.0, std::fabs(dc)));
  }
}

TEST_CASE("coincident-point triple identity is exact") {
  std::mt19937_64 rng(44);
  const FunctionExpr f = catalog("expx").fn;
  for (int i = 0; i < 200; ++i) {
    const double x = rand_in(rng, 0.0, 1.0);
    const double z = rand_in(rng, 0.0, 1.0);
    const double fz = evaluate(f, z);
    CHECK(triple_product_defect(f, x, x, z) == fz * (z - x) * (z - x));
  }
}

TEST_CASE("check_membership: members and counterexamples") {
  SUBCASE("square is in Q on samples") {
    const Verdict v =
        check_membership(catalog("square").fn, Interval(0, 1),
                         FunctionClass::Q, kPlan);
    REQUIRE(holds(v));
    CHECK(std::get<HoldsOnSamples>(v).min_margin >= -1e-9);
  }
  SUBCASE("the spike is not in P; the witness is sharp") {
    const Verdict v =
        check_membership(catalog("shifted_abs").fn, Interval(-1, 1),
                         FunctionClass::P, kPlan);
    REQUIRE(violated(v));
    const Witness& w = witness_of(v);
    CHECK(w.x == -1.0);
    CHECK(w.y == 1.0);
    CHECK(w.lambda == 0.5);
    CHECK(!w.z.has_value());
    CHECK(w.lhs == 1.0);
    CHECK(w.rhs == 0.0);
    CHECK(w.gap == 1.0);
  }
  SUBCASE("a sign-changing function fails Q on nonnegativity") {
    const Verdict v = check_membership(catalog("line_neg").fn,
                                       Interval(-1, 1), FunctionClass::Q,
                                       kPlan);
    REQUIRE(violated(v));
    const Witness& w = witness_of(v);
    CHECK(w.x == -1.0);
    CHECK(!w.y.has_value());
    CHECK(!w.lambda.has_value());
    CHECK(w.lhs == 0.0);
    CHECK(w.rhs == -1.0);
    CHECK(w.gap == 1.0);
  }
  SUBCASE("nonnegativity-only checks") {
    CHECK(holds(check_membership(catalog("sqrtx").fn, Interval(0, 1),
                                 FunctionClass::Nonnegative, kPlan)));
    CHECK(violated(check_membership(catalog("line_neg").fn, Interval(-1, 1),
                                    FunctionClass::Nonnegative, kPlan)));
  }
  SUBCASE("monotone but non-convex functions still land in Q and P") {
    for (const char* name : {"sqrtx", "step_up"}) {
      CAPTURE(name);
      const CatalogEntry entry = catalog(name);
      CHECK(holds(check_membership(entry.fn, entry.domain, FunctionClass::Q,
                                   kPlan)));
      CHECK(holds(check_membership(entry.fn, entry.domain, FunctionClass::P,
                                   kPlan)));
      CHECK(violated(check_membership(entry.fn, entry.domain,
                                      FunctionClass::Convex, kPlan)));
    }
  }
  SUBCASE("refinement sharpens an off-grid nonnegativity dip") {
    // Minimum sits at x = 0.3123, strictly between 41-grid points.
    const FunctionExpr f = parse("(x - 0.3123)^2 - 1e-4");
    const Verdict v = check_membership(f, Interval(0, 1),
                                       FunctionClass::Nonnegative, kPlan);
    REQUIRE(violated(v));
    const Witness& w = witness_of(v);
    CHECK(std::fabs(w.x - 0.3123) <= 1e-5);
    CHECK(w.gap == doctest::Approx(1e-4).epsilon(1e-6));
  }
}

TEST_CASE("nonnegative convex catalog members are in every sampled class") {
  for (const std::string& name : catalog_names()) {
    const CatalogEntry entry = catalog(name);
    const bool nonneg = holds(check_membership(
        entry.fn, entry.domain, FunctionClass::Nonnegative, kPlan));
    const bool convex = holds(check_membership(
        entry.fn, entry.domain, FunctionClass::Convex, kPlan));
    if (!nonneg || !convex) continue;
    CAPTURE(name);
    CHECK(holds(
        check_membership(entry.fn, entry.domain, FunctionClass::Q, kPlan)));
    CHECK(holds(
        check_membership(entry.fn, entry.domain, FunctionClass::P, kPlan)));
  }
}

TEST_CASE("verdict monotonicity in tau") {
  const FunctionExpr f = parse("x^2 - 1e-6");
  bool seen_holds = false;
  for (double tau : {1e-12, 1e-9, 1e-7, 1e-5, 1e-3, 1e-1}) {
    SamplingPlan plan = kPlan;
    plan.tau = tau;
    const Verdict v = check_membership(f, Interval(0, 1),
                                       FunctionClass::Nonnegative, plan);
    if (seen_holds) {
      CHECK(holds(v));  // enlarging tau never re-violates
    }
    if (holds(v)) seen_holds = true;
  }
  CHECK(seen_holds);  // the ladder ends loose enough to accept the dip
}

TEST_CASE("evaluation failures give an inconclusive verdict") {
  const Verdict v = check_membership(parse("1/x"), Interval(-1, 1),
                                     FunctionClass::Q, kPlan);
  REQUIRE(inconclusive(v));
  CHECK(!std::get<Inconclusive>(v).reason.empty());
}

TEST_CASE("membership scans are deterministic") {
  const CatalogEntry entry = catalog("shifted_abs");
  const Verdict v1 =
      check_membership(entry.fn, entry.domain, FunctionClass::Q, kPlan);
  const Verdict v2 =
      check_membership(entry.fn, entry.domain, FunctionClass::Q, kPlan);
  REQUIRE(violated(v1));
  REQUIRE(violated(v2));
  const Witness& w1 = witness_of(v1);
  const Witness& w2 = witness_of(v2);
  CHECK(w1.x == w2.x);
  CHECK(w1.y == w2.y);
  CHECK(w1.lambda == w2.lambda);
  CHECK(w1.gap == w2.gap);
}

TEST_CASE("equivalence crosscheck of the two class-Q forms") {
  SUBCASE("members agree on both forms") {
    for (const char* name : {"square", "const_c", "expx", "sqrtx"}) {
      CAPTURE(name);
      const CatalogEntry entry = catalog(name);
      const CrosscheckReport rep =
          equivalence_crosscheck(entry.fn, entry.domain, kPlan);
      CHECK(holds(rep.eq1));
      CHECK(holds(rep.eq2));
      CHECK(rep.agree);
    }
  }
  SUBCASE("the spike violates both forms at the documented points") {
    const CrosscheckReport rep = equivalence_crosscheck(
        catalog("shifted_abs").fn, Interval(-1, 1), kPlan);
    REQUIRE(violated(rep.eq1));
    REQUIRE(violated(rep.eq2));
    CHECK(rep.agree);
    const Witness& w1 = witness_of(rep.eq1);
    CHECK(w1.x == -1.0);
    CHECK(w1.y == 1.0);
    CHECK(w1.lambda == 0.5);
    CHECK(w1.gap == 1.0);
    const Witness& w2 = witness_of(rep.eq2);
    CHECK(w2.x == -1.0);
    CHECK(w2.y == 0.0);
    CHECK(w2.z == 1.0);
    CHECK(!w2.lambda.has_value());
    CHECK(w2.rhs == -1.0);
    CHECK(w2.gap == 1.0);
  }
  SUBCASE("constants: the triple form reduces to pairwise squared differences") {
    // For f = c the bracket equals (1/2) * sum of squared differences.
    std::mt19937_64 rng(45);
    const FunctionExpr c = parse("2.5");
    for (int i = 0; i < 200; ++i) {
      const double x = rand_in(rng, -2.0, 2.0);
      const double y = rand_in(rng, -2.0, 2.0);
      const double z = rand_in(rng, -2.0, 2.0);
      const double want =
          2.5 * 0.5 *
          ((x - y) * (x - y) + (y - z) * (y - z) + (z - x) * (z - x));
      CHECK(triple_product_defect(c, x, y, z) ==
            doctest::Approx(want).epsilon(1e-12));
    }
    const CrosscheckReport rep =
        equivalence_crosscheck(c, Interval(0, 1), kPlan);
    CHECK(rep.agree);
  }
  SUBCASE("a sign-changing function fails both forms") {
    const CrosscheckReport rep = equivalence_crosscheck(
        catalog("line_neg").fn, Interval(-1, 1), kPlan);
    CHECK(violated(rep.eq1));
    CHECK(violated(rep.eq2));
    CHECK(rep.agree);
  }
}

TEST_CASE("sample_points pins both endpoints") {
  const auto xs = sample_points(0.1, 1.0, 41);
  CHECK(xs.size() == 41);
  CHECK(xs.front() == 0.1);
  CHECK(xs.back() == 1.0);
  CHECK_THROWS_AS(sample_points(1.0, 0.0, 5), std::invalid_argument);
}

TEST_CASE("plan validation") {
  SamplingPlan bad = kPlan;
  bad.n_x = 1;
  CHECK_THROWS_AS(
      check_membership(parse("x"), Interval(0, 1), FunctionClass::Q, bad),
      std::invalid_argument);
  bad = kPlan;
  bad.lambda_margin = 0.6;
  CHECK_THROWS_AS(
      check_membership(parse("x"), Interval(0, 1), FunctionClass::Q, bad),
      std::invalid_argument);
  bad = kPlan;
  bad.tau = 0.0;
  CHECK_THROWS_AS(
      check_membership(parse("x"), Interval(0, 1), FunctionClass::Q, bad),
      std::invalid_argument);
}
