#include <benchmark/benchmark.h>

#include "convdom/catalog.hpp"
#include "convdom/dominance.hpp"
#include "convdom/membership.hpp"
#include "convdom/quadrature.hpp"

using namespace convdom;

namespace {

void BM_parse(benchmark::State& state) {
  for (auto _ : state) {
    FunctionExpr f = parse("(exp(x) + exp(-x))/2 - 0.25*x^4");
    benchmark::DoNotOptimize(f);
  }
}
BENCHMARK(BM_parse);

void BM_evaluate(benchmark::State& state) {
  const FunctionExpr f = catalog("cosh_x").fn;
  double x = -1.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(evaluate(f, x));
    x = x < 1.0 ? x + 1e-4 : -1.0;
  }
}
BENCHMARK(BM_evaluate);

void BM_integrate(benchmark::State& state) {
  const FunctionExpr f = catalog("expx").fn;
  const QuadConfig cfg;
  for (auto _ : state)
    benchmark::DoNotOptimize(integrate(f, Interval(0, 1), cfg));
}
BENCHMARK(BM_integrate);

void BM_integrate_weighted(benchmark::State& state) {
  const FunctionExpr f = catalog("square").fn;
  const QuadConfig cfg;
  for (auto _ : state)
    benchmark::DoNotOptimize(integrate_weighted(f, Interval(0, 1), cfg));
}
BENCHMARK(BM_integrate_weighted);

void BM_check_membership(benchmark::State& state) {
  const CatalogEntry entry = catalog("square");
  SamplingPlan plan;
  plan.n_x = static_cast<int>(state.range(0));
  plan.n_lambda = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(
        check_membership(entry.fn, entry.domain, FunctionClass::Q, plan));
  state.counters["grid"] = static_cast<double>(plan.n_x) * plan.n_x *
                           plan.n_lambda;
}
BENCHMARK(BM_check_membership)->Arg(11)->Arg(21)->Arg(41);

void BM_check_dominated(benchmark::State& state) {
  const CatalogEntry g = catalog("square");
  const DominancePair pair{0.5 * g.fn, g.fn, g.domain, Kind::Q};
  SamplingPlan plan;
  plan.n_x = static_cast<int>(state.range(0));
  plan.n_lambda = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(
        check_dominated(pair, plan, /*waive_membership=*/true));
}
BENCHMARK(BM_check_dominated)->Arg(11)->Arg(21)->Arg(41);

}  // namespace

BENCHMARK_MAIN();
