#include "convdom/catalog.hpp"

#include <algorithm>
#include <array>

namespace convdom {

namespace {

struct Fixture {
  const char* name;
  const char* text;
  double a;
  double b;
};

constexpr std::array<Fixture, 15> kFixtures{{
    {"abs_x", "abs(x)", -1.0, 1.0},
    {"affine_pos", "1 + x/2", 0.0, 1.0},
    {"const_c", "2.5", 0.0, 1.0},
    {"cosh_x", "(exp(x) + exp(-x))/2", -1.0, 1.0},
    {"exp_negx", "exp(-x)", 0.0, 1.0},
    {"expx", "exp(x)", 0.0, 1.0},
    {"line_neg", "x", -1.0, 1.0},
    {"quartic", "x^4", -1.0, 1.0},
    {"recip", "1/x", 0.1, 1.0},
    {"shifted_abs", "1 - abs(x)", -1.0, 1.0},
    {"sqrtx", "sqrt(x)", 0.0, 1.0},
    {"square", "x^2", 0.0, 1.0},
    {"square_plus1", "x^2 + 1", -1.0, 1.0},
    {"step_up", "piecewise{[0,0.5): 1; [0.5,1]: 2}", 0.0, 1.0},
    {"vee", "piecewise{[-1,0): -x; [0,1]: x}", -1.0, 1.0},
}};

}  // namespace

CatalogEntry catalog(std::string_view name) {
  for (const Fixture& f : kFixtures) {
    if (name == f.name) return CatalogEntry{parse(f.text), Interval(f.a, f.b)};
  }
  throw UnknownFixture(std::string(name));
}

const std::vector<std::string>& catalog_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    v.reserve(kFixtures.size());
    for (const Fixture& f : kFixtures) v.emplace_back(f.name);
    std::sort(v.begin(), v.end());
    return v;
  }();
  return names;
}

}  // namespace convdom
