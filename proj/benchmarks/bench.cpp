// Micro-benchmarks for the hot enumeration paths.

#include <cstdint>
#include <vector>

#include <benchmark/benchmark.h>

#include <gsys/atoms.hpp>
#include <gsys/config.hpp>
#include <gsys/coupling.hpp>
#include <gsys/magma.hpp>
#include <gsys/reduce.hpp>
#include <gsys/system.hpp>

namespace {

using namespace gsys;

GSystem four_site() {
  const Magma m = cyclic_group(2);
  const VarSet vars = VarSet::of({"b0", "b1", "b2", "b3"});
  const FnEnv fns = FnEnv().with(FnTable::make("max", 2, {0, 1, 1, 1}, m));
  return GSystem::from_rules(
      m, vars,
      {{"b0", Term::var("b0")},
       {"b1", Term::call("max", {Term::var("b0"), Term::var("b2")})},
       {"b2", Term::var("b3")},
       {"b3", Term::var("b3")}},
      fns);
}

// One synchronous step of the rule-based four-site system.
void BM_Step(benchmark::State& state) {
  const GSystem s = four_site();
  const Config g = Config::make(s.vars(), {1, 0, 1, 0});
  for (auto _ : state) {
    benchmark::DoNotOptimize(s.step(g));
  }
}
BENCHMARK(BM_Step);

// Materializing the full 16-row table from the rules.
void BM_Tabulate(benchmark::State& state) {
  const GSystem s = four_site();
  for (auto _ : state) {
    benchmark::DoNotOptimize(tabulate(s));
  }
}
BENCHMARK(BM_Tabulate);

// Coupling two n-variable systems that share all but one variable.
void BM_Couple(benchmark::State& state) {
  const Magma m = cyclic_group(2);
  const int n = static_cast<int>(state.range(0));
  std::vector<std::string> xs, ys;
  for (int i = 0; i < n; ++i) xs.push_back("x" + std::to_string(i));
  ys = xs;
  ys[0] = "y0";
  const VarSet x = VarSet::of(xs);
  const VarSet y = VarSet::of(ys);
  std::vector<std::pair<std::string, Term>> rx, ry;
  for (const auto& v : x.names()) rx.emplace_back(v, Term::var(v));
  for (const auto& v : y.names()) ry.emplace_back(v, Term::var(v));
  const GSystem sx = GSystem::from_rules(m, x, rx);
  const GSystem sy = GSystem::from_rules(m, y, ry);
  for (auto _ : state) {
    benchmark::DoNotOptimize(couple(sx, sy));
  }
}
BENCHMARK(BM_Couple)->Arg(3)->Arg(5);

// Bucketed dependence scan over the full configuration space.
void BM_DepHolds(benchmark::State& state) {
  const GSystem s = four_site();
  const VarSet a = VarSet::of({"b0", "b2"});
  const VarSet b = VarSet::of({"b1"});
  for (auto _ : state) {
    benchmark::DoNotOptimize(dep_holds(s, a, b));
  }
}
BENCHMARK(BM_DepHolds);

// Full reducibility decision, including the verification of the returned
// decomposition.
void BM_DecideReducible(benchmark::State& state) {
  const GSystem s = four_site();
  const Cover c = Cover::make(VarSet::of({"b0", "b1", "b2"}),
                              VarSet::of({"b1", "b2", "b3"}), s.vars());
  for (auto _ : state) {
    benchmark::DoNotOptimize(decide_reducible(s, c));
  }
}
BENCHMARK(BM_DecideReducible);

}  // namespace

BENCHMARK_MAIN();
