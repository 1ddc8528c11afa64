#include <benchmark/benchmark.h>

#include "prequant/flows.hpp"
#include "prequant/sampling.hpp"
#include "prequant/verify.hpp"

using namespace prequant;

static void BM_LiftedFlow(benchmark::State& state) {
  const ModelInstance m = make_model("cpn:" + std::to_string(state.range(0)));
  const LiftedField lifted = lift_field(m.bundle, m.action, LatticeVector::basis(m.action.rank, 0));
  Sampler rng(1);
  const Point p = rng.point(m.bundle->total_space());
  for (auto _ : state) benchmark::DoNotOptimize(integrate_flow(lifted.field, p.ambient(), 1.0));
}
BENCHMARK(BM_LiftedFlow)->DenseRange(1, 3)->Unit(benchmark::kMillisecond);

static void BM_DiskIntegral(benchmark::State& state) {
  const ModelInstance m = make_model("s2:1");
  Vec target(3);
  target << 0.6, 0.0, 0.8;
  const PathSpec path = PathSpec::interpolating(m.bundle->base_space(), m.action.fixed_point.ambient(), target,
                                                Vec::Zero(3));
  for (auto _ : state)
    benchmark::DoNotOptimize(disk_integral(*m.bundle, m.action, LatticeVector::basis(1, 0), path, 16));
}
BENCHMARK(BM_DiskIntegral)->Unit(benchmark::kMillisecond);

static void BM_LieDerivative(benchmark::State& state) {
  const ModelInstance m = make_model("cpn:2");
  const LiftedField lifted = lift_field(m.bundle, m.action, LatticeVector::basis(2, 1));
  const OneForm alpha = m.bundle->alpha_form();
  Sampler rng(2);
  const Point p = rng.point(m.bundle->total_space());
  const Tangent v = rng.tangent(p);
  LieDerivativeOptions opts;
  opts.richardson = state.range(0) != 0;
  for (auto _ : state) benchmark::DoNotOptimize(lie_derivative_oneform(lifted.field, alpha, p, v, opts));
}
BENCHMARK(BM_LieDerivative)->Arg(0)->Arg(1);

static void BM_CheckSuite(benchmark::State& state) {
  const ModelInstance m = make_model("s2:1");
  CheckOptions opts;
  opts.samples = 4;
  for (auto _ : state)
    for (const auto& name : {"connection-axioms", "lattice-closure", "lemma2", "bracket-torus"})
      benchmark::DoNotOptimize(run_check(name, m, opts));
}
BENCHMARK(BM_CheckSuite)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
