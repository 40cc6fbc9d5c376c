// Micro-benchmarks for the hot paths: system assembly, factorisation, one
// Crank-Nicolson step, and the local pressure post-processing.  Comparing
// BM_CNStep with BM_Postprocess shows the post-processing stays a small
// fraction of the per-step cost.

#include <memory>

#include <benchmark/benchmark.h>

#include "metawave/assembly.hpp"
#include "metawave/fespace.hpp"
#include "metawave/material.hpp"
#include "metawave/mesh.hpp"
#include "metawave/postprocess.hpp"
#include "metawave/runtime.hpp"
#include "metawave/state.hpp"
#include "metawave/stepper.hpp"

using namespace metawave;

namespace {

Pairing pairing_of(int index) {
  switch (index) {
    case 0: return Pairing::BDM1;
    case 1: return Pairing::RTN0;
    case 2: return Pairing::BDM2;
    default: return Pairing::RTN1;
  }
}

struct BenchSetup {
  std::shared_ptr<Mesh> mesh;
  SpaceSet spaces;
  MaterialField mat;
  BlockLayout layout;

  BenchSetup(Pairing pairing, int n) {
    mesh = std::make_shared<Mesh>(build_structured(Rect{0, 0, 1, 1}, n));
    spaces = SpaceSet::make(mesh, pairing);
    mat = uniform_material(mesh->n_cells(), 1.0, 1.0, 1.0, 1.0, 0.0);
    const std::vector<int> region =
        classify_cells(*mesh, [](const Vec2& x) {
          return (x.x() > 0.375 && x.x() < 0.625) ? 1 : 0;
        });
    apply_region_contrast(mat, region, 1, 1.0, 1.0);
    layout = BlockLayout::from(spaces);
  }
};

void BM_AssembleSystem(benchmark::State& state) {
  const BenchSetup s(pairing_of(static_cast<int>(state.range(0))),
                     static_cast<int>(state.range(1)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(assemble_system(s.spaces, s.mat));
  }
  state.SetLabel(pairing_name(s.spaces.pairing));
}

void BM_Factorize(benchmark::State& state) {
  const BenchSetup s(pairing_of(static_cast<int>(state.range(0))),
                     static_cast<int>(state.range(1)));
  const SystemBlocks blocks = assemble_system(s.spaces, s.mat);
  for (auto _ : state) {
    CNSystem sys(blocks, s.layout, 0.01);
    sys.factorize();
    benchmark::DoNotOptimize(sys);
  }
  state.SetLabel(pairing_name(s.spaces.pairing));
}

void BM_CNStep(benchmark::State& state) {
  const BenchSetup s(pairing_of(static_cast<int>(state.range(0))),
                     static_cast<int>(state.range(1)));
  CNSystem sys(assemble_system(s.spaces, s.mat), s.layout, 0.01);
  sys.factorize();
  Eigen::VectorXd U = Eigen::VectorXd::Constant(s.layout.total, 0.1);
  const Eigen::VectorXd load = Eigen::VectorXd::Zero(s.layout.total);
  for (auto _ : state) {
    U = sys.step(U, load);
    benchmark::DoNotOptimize(U.data());
  }
  state.SetLabel(pairing_name(s.spaces.pairing));
}

void BM_Postprocess(benchmark::State& state) {
  const BenchSetup s(pairing_of(static_cast<int>(state.range(0))),
                     static_cast<int>(state.range(1)));
  CNSystem sys(assemble_system(s.spaces, s.mat), s.layout, 0.01);
  sys.factorize();
  StateVector Un(s.layout), Un1(s.layout);
  Un.data.setConstant(0.1);
  Un1.data = sys.step(Un.data, Eigen::VectorXd::Zero(s.layout.total));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        postprocess_pressure(s.spaces, s.mat, Un, Un1, 0.0, 0.01));
  }
  state.SetLabel(pairing_name(s.spaces.pairing));
}

void AllPairings(benchmark::internal::Benchmark* b) {
  for (int pairing = 0; pairing < 4; ++pairing) b->Args({pairing, 32});
}

BENCHMARK(BM_AssembleSystem)->Apply(AllPairings)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Factorize)->Apply(AllPairings)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CNStep)->Apply(AllPairings)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Postprocess)->Apply(AllPairings)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
