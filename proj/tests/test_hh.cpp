#include <cmath>
#include <vector>

#include <doctest.h>

#include "convdom/catalog.hpp"
#include "convdom/dominance.hpp"
#include "convdom/hh.hpp"
#include "convdom/membership.hpp"

using namespace convdom;

namespace {

const QuadConfig kQuad{};
const SamplingPlan kPlan{};

const HHReport& find(const std::vector<HHReport>& reports, HHId id) {
  for (const HHReport& r : reports)
    if (r.id == id) return r;
  REQUIRE(false);
  return reports.front();
}

}  // namespace

TEST_CASE("classical two-sided bound") {
  SUBCASE("x^2 on [0,1]: 0.25 <= 1/3 <= 0.5") {
    const auto reports =
        verify_hh_classical(parse("x^2"), Interval(0, 1), kQuad);
    const HHReport& left = find(reports, HHId::ClassicalL);
    CHECK(left.lhs == 0.25);
    CHECK(left.rhs == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(left.verdict == HHVerdict::Holds);
    const HHReport& right = find(reports, HHId::ClassicalR);
    CHECK(right.rhs == 0.5);
    CHECK(right.margin == doctest::Approx(0.5 - 1.0 / 3.0).epsilon(1e-12));
    CHECK(right.verdict == HHVerdict::Holds);
    CHECK(left.quad_error <= 1e-10);
    CHECK(right.quad_error <= 1e-10);
  }
  SUBCASE("affine functions are equality cases") {
    const auto reports =
        verify_hh_classical(parse("2*x + 1"), Interval(-1, 3), kQuad);
    for (const HHReport& r : reports) {
      CHECK(r.verdict == HHVerdict::WithinError);
      CHECK(std::fabs(r.margin) <= r.quad_error);
    }
  }
  SUBCASE("the concave spike violates the left bound") {
    const auto reports =
        verify_hh_classical(parse("1 - abs(x)"), Interval(-1, 1), kQuad);
    const HHReport& left = find(reports, HHId::ClassicalL);
    CHECK(left.lhs == 1.0);
    CHECK(left.rhs == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(left.verdict == HHVerdict::Violated);
  }
}

TEST_CASE("first theorem: constant 4 and the weighted right bound") {
  SUBCASE("x^2 on [0,1]") {
    const auto reports = verify_thm1(parse("x^2"), Interval(0, 1), kQuad);
    const HHReport& a = find(reports, HHId::T1a);
    CHECK(a.lhs == 0.25);
    CHECK(a.rhs == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
    CHECK(a.verdict == HHVerdict::Holds);
    const HHReport& b = find(reports, HHId::T1b);
    CHECK(b.lhs == doctest::Approx(0.05).epsilon(1e-9));
    CHECK(b.rhs == 0.5);
    CHECK(b.verdict == HHVerdict::Holds);
  }
  SUBCASE("constants: c <= 4c and c/6 <= c") {
    const auto reports = verify_thm1(parse("2.5"), Interval(0, 1), kQuad);
    const HHReport& a = find(reports, HHId::T1a);
    CHECK(a.lhs == 2.5);
    CHECK(a.rhs == doctest::Approx(10.0).epsilon(1e-12));
    const HHReport& b = find(reports, HHId::T1b);
    CHECK(b.lhs == doctest::Approx(2.5 / 6.0).epsilon(1e-9));
    CHECK(b.rhs == 2.5);
  }
  SUBCASE("1/x on [0.1, 1]") {
    const auto reports = verify_thm1(parse("1/x"), Interval(0.1, 1), kQuad);
    const HHReport& a = find(reports, HHId::T1a);
    CHECK(a.lhs == doctest::Approx(1.0 / 0.55).epsilon(1e-12));
    CHECK(a.rhs ==
          doctest::Approx(4.0 / 0.9 * std::log(10.0)).epsilon(1e-10));
    CHECK(a.verdict == HHVerdict::Holds);
  }
}

TEST_CASE("second theorem: constant 2 chain") {
  SUBCASE("x^2 on [0,1]") {
    const auto reports = verify_thm2(parse("x^2"), Interval(0, 1), kQuad);
    const HHReport& left = find(reports, HHId::T2L);
    CHECK(left.lhs == 0.25);
    CHECK(left.rhs == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    const HHReport& right = find(reports, HHId::T2R);
    CHECK(right.rhs == 2.0);
    CHECK(left.verdict == HHVerdict::Holds);
    CHECK(right.verdict == HHVerdict::Holds);
  }
  SUBCASE("constant chain c <= 2c <= 4c") {
    const auto reports = verify_thm2(parse("2.5"), Interval(0, 1), kQuad);
    CHECK(find(reports, HHId::T2L).verdict == HHVerdict::Holds);
    CHECK(find(reports, HHId::T2R).verdict == HHVerdict::Holds);
  }
  SUBCASE("the spike: equality on the left, violation on the right") {
    const auto reports =
        verify_thm2(parse("1 - abs(x)"), Interval(-1, 1), kQuad);
    const HHReport& left = find(reports, HHId::T2L);
    CHECK(left.lhs == 1.0);
    CHECK(left.rhs == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(left.verdict == HHVerdict::WithinError);
    const HHReport& right = find(reports, HHId::T2R);
    CHECK(right.rhs == 0.0);
    CHECK(right.verdict == HHVerdict::Violated);
  }
}

TEST_CASE("third theorem: dominated pairs with constant 4") {
  SUBCASE("(x^2/2, x^2) on [0,1]: frozen fractions") {
    const auto reports =
        verify_thm3(parse("x^2/2"), parse("x^2"), Interval(0, 1), kQuad);
    const HHReport& a = find(reports, HHId::T3a);
    CHECK(a.lhs == doctest::Approx(13.0 / 24.0).epsilon(1e-9));
    CHECK(a.rhs == doctest::Approx(13.0 / 12.0).epsilon(1e-9));
    CHECK(a.verdict == HHVerdict::Holds);
    const HHReport& b = find(reports, HHId::T3b);
    CHECK(b.lhs == doctest::Approx(0.225).epsilon(1e-9));
    CHECK(b.rhs == doctest::Approx(0.45).epsilon(1e-9));
    CHECK(b.verdict == HHVerdict::Holds);
  }
  SUBCASE("zero candidate") {
    const auto reports =
        verify_thm3(parse("0"), parse("x^2"), Interval(0, 1), kQuad);
    const HHReport& a = find(reports, HHId::T3a);
    CHECK(a.lhs == 0.0);
    CHECK(a.rhs == doctest::Approx(13.0 / 12.0).epsilon(1e-9));
    const HHReport& b = find(reports, HHId::T3b);
    CHECK(b.lhs == 0.0);
    CHECK(b.rhs == doctest::Approx(0.45).epsilon(1e-9));
  }
  SUBCASE("f = g pins both sides together") {
    const auto reports =
        verify_thm3(parse("x^2"), parse("x^2"), Interval(0, 1), kQuad);
    for (const HHReport& r : reports) {
      CHECK(r.verdict == HHVerdict::WithinError);
      CHECK(r.lhs == doctest::Approx(r.rhs).epsilon(1e-12));
    }
  }
}

TEST_CASE("fourth theorem: dominated pairs with constant 2") {
  SUBCASE("(x^2/2, x^2) on [0,1]") {
    const auto reports =
        verify_thm4(parse("x^2/2"), parse("x^2"), Interval(0, 1), kQuad);
    const HHReport& a = find(reports, HHId::T4a);
    CHECK(a.lhs == doctest::Approx(5.0 / 24.0).epsilon(1e-9));
    CHECK(a.rhs == doctest::Approx(5.0 / 12.0).epsilon(1e-9));
    const HHReport& b = find(reports, HHId::T4b);
    CHECK(b.rhs == doctest::Approx(2.0 / 3.0).epsilon(1e-9));
  }
  SUBCASE("zero candidate") {
    const auto reports =
        verify_thm4(parse("0"), parse("x^2"), Interval(0, 1), kQuad);
    CHECK(find(reports, HHId::T4a).rhs ==
          doctest::Approx(5.0 / 12.0).epsilon(1e-9));
    CHECK(find(reports, HHId::T4b).rhs ==
          doctest::Approx(2.0 / 3.0).epsilon(1e-9));
  }
  SUBCASE("f = -g is an equality family") {
    const FunctionExpr g = parse("x^2");
    const auto reports = verify_thm4(-g, g, Interval(0, 1), kQuad);
    for (const HHReport& r : reports) {
      CHECK(r.verdict == HHVerdict::WithinError);
      CHECK(r.lhs == doctest::Approx(r.rhs).epsilon(1e-12));
    }
  }
}

TEST_CASE("hypothesis-conclusion coupling over the scaling family") {
  for (const char* g_name : {"square", "expx", "const_c"}) {
    CAPTURE(g_name);
    const CatalogEntry g = catalog(g_name);
    for (const double alpha : {-1.0, -0.5, 0.0, 0.5, 1.0}) {
      CAPTURE(alpha);
      const FunctionExpr f = alpha * g.fn;

      const DominancePair q_pair{f, g.fn, g.domain, Kind::Q};
      REQUIRE(holds(check_dominated(q_pair, kPlan)));
      for (const HHReport& r : verify_thm3(f, g.fn, g.domain, kQuad))
        CHECK(r.verdict != HHVerdict::Violated);

      const DominancePair p_pair{f, g.fn, g.domain, Kind::P};
      REQUIRE(holds(check_dominated(p_pair, kPlan)));
      for (const HHReport& r : verify_thm4(f, g.fn, g.domain, kQuad))
        CHECK(r.verdict != HHVerdict::Violated);
    }
  }
}

TEST_CASE("membership-theorem coupling over the catalog") {
  for (const std::string& name : catalog_names()) {
    CAPTURE(name);
    const CatalogEntry entry = catalog(name);
    if (holds(check_membership(entry.fn, entry.domain, FunctionClass::Q,
                               kPlan))) {
      for (const HHReport& r : verify_thm1(entry.fn, entry.domain, kQuad))
        CHECK(r.verdict != HHVerdict::Violated);
    }
    if (holds(check_membership(entry.fn, entry.domain, FunctionClass::P,
                               kPlan))) {
      for (const HHReport& r : verify_thm2(entry.fn, entry.domain, kQuad))
        CHECK(r.verdict != HHVerdict::Violated);
    }
    if (holds(check_membership(entry.fn, entry.domain, FunctionClass::Convex,
                               kPlan))) {
      for (const HHReport& r :
           verify_hh_classical(entry.fn, entry.domain, kQuad))
        CHECK(r.verdict != HHVerdict::Violated);
    }
  }
}

TEST_CASE("scaling covariance: (alpha f, alpha g) scales both sides") {
  const FunctionExpr f = parse("x^2/2");
  const FunctionExpr g = parse("x^2");
  const Interval iv(0, 1);
  const auto base = verify_thm3(f, g, iv, kQuad);
  for (const double alpha : {0.5, 2.0}) {
    CAPTURE(alpha);
    const auto scaled =
        verify_thm3(alpha * f, alpha * g, iv, kQuad);
    for (std::size_t i = 0; i < base.size(); ++i) {
      CHECK(scaled[i].lhs ==
            doctest::Approx(alpha * base[i].lhs).epsilon(1e-12));
      CHECK(scaled[i].rhs ==
            doctest::Approx(alpha * base[i].rhs).epsilon(1e-12));
      CHECK(scaled[i].verdict == base[i].verdict);
    }
  }
}

TEST_CASE("dominated-theorem right sides are themselves nonnegative") {
  for (const char* name : {"square", "const_c", "expx", "abs_x"}) {
    CAPTURE(name);
    const CatalogEntry g = catalog(name);
    REQUIRE(holds(
        check_membership(g.fn, g.domain, FunctionClass::Q, kPlan)));
    for (const HHReport& r :
         verify_thm3(parse("0"), g.fn, g.domain, kQuad))
      CHECK(r.rhs >= -(1e-9 + r.quad_error));
    for (const HHReport& r :
         verify_thm4(parse("0"), g.fn, g.domain, kQuad))
      CHECK(r.rhs >= -(1e-9 + r.quad_error));
  }
}

TEST_CASE("quadrature budget exhaustion surfaces as an error") {
  QuadConfig tiny;
  tiny.max_subdivisions = 1;
  CHECK_THROWS_AS(verify_thm1(parse("exp(x)"), Interval(0, 1), tiny),
                  ToleranceNotReached);
}

TEST_CASE("identifier strings") {
  CHECK(to_string(HHId::ClassicalL) == "Classical-L");
  CHECK(to_string(HHId::T1a) == "T1-a");
  CHECK(to_string(HHId::T3b) == "T3-b");
  CHECK(to_string(HHVerdict::WithinError) == "within_error");
}
