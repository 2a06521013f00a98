#include <benchmark/benchmark.h>

#include <random>

#include "corpus.hpp"
#include "rickartlab/endobridge.hpp"
#include "rickartlab/finmod.hpp"
#include "rickartlab/finring.hpp"
#include "rickartlab/modprops.hpp"
#include "rickartlab/zmodsnf.hpp"
#include "suite.hpp"

using namespace rickart;

namespace {

  // Modules cache their lattices, so each iteration builds a fresh one.
  app::ModuleSpec spec_named(char const* name) {
    return *app::find_builtin_module(name);
  }

  void BM_RingConstruction(benchmark::State& state) {
    auto const expr = RingExpr::zmod(static_cast<int>(state.range(0)));
    for (auto _ : state) {
      benchmark::DoNotOptimize(build_ring(expr));
    }
  }
  BENCHMARK(BM_RingConstruction)->Arg(12)->Arg(64)->Arg(256);

  void BM_RingProperty(benchmark::State& state) {
    auto const R = build_ring(*app::find_builtin_ring("m2_z2"));
    auto const p = static_cast<RingProperty>(state.range(0));
    state.SetLabel(std::string(to_string(p)));
    for (auto _ : state) {
      benchmark::DoNotOptimize(decide_ring_property(*R, p));
    }
  }
  BENCHMARK(BM_RingProperty)->DenseRange(0, 6);

  void BM_Submodules(benchmark::State& state) {
    auto const spec = spec_named("reg_z2pow4");
    for (auto _ : state) {
      benchmark::DoNotOptimize(app::build_module(spec).submodules().size());
    }
  }
  BENCHMARK(BM_Submodules);

  void BM_Endomorphisms(benchmark::State& state) {
    auto const spec = spec_named("z2_z8");
    for (auto _ : state) {
      benchmark::DoNotOptimize(app::build_module(spec).endomorphisms());
    }
  }
  BENCHMARK(BM_Endomorphisms);

  void BM_RickartDecider(benchmark::State& state) {
    auto const spec = spec_named(state.range(0) == 0 ? "z2_z4" : "reg_m2_z2");
    for (auto _ : state) {
      benchmark::DoNotOptimize(decide_module_property(app::build_module(spec), ModuleProperty::rickart));
    }
  }
  BENCHMARK(BM_RickartDecider)->Arg(0)->Arg(1);

  void BM_EndomorphismRing(benchmark::State& state) {
    auto const spec = spec_named("z2_z2");
    for (auto _ : state) {
      benchmark::DoNotOptimize(endomorphism_ring(app::build_module(spec)));
    }
  }
  BENCHMARK(BM_EndomorphismRing);

  void BM_SmithNormalForm(benchmark::State& state) {
    std::mt19937_64                        rng(42);
    std::uniform_int_distribution<int>     entry(-20, 20);
    auto const                             n = static_cast<std::size_t>(state.range(0));
    std::vector<IntMatrix>                 inputs;
    for (int k = 0; k < 64; ++k) {
      IntMatrix A(n, n);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          A(i, j) = entry(rng);
        }
      }
      inputs.push_back(A);
    }
    std::size_t k = 0;
    for (auto _ : state) {
      try {
        benchmark::DoNotOptimize(smith_normal_form(inputs[k++ % inputs.size()]));
      } catch (OverflowError const&) {
      }
    }
  }
  BENCHMARK(BM_SmithNormalForm)->DenseRange(2, 6);

  void BM_ZRickart(benchmark::State& state) {
    auto const M = FgZModule::canonical(1, {2});
    for (auto _ : state) {
      benchmark::DoNotOptimize(zrickart_check(M));
    }
  }
  BENCHMARK(BM_ZRickart);

  void BM_Suite(benchmark::State& state) {
    app::SuiteOptions opts;
    opts.threads = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
      benchmark::DoNotOptimize(app::run_suite(app::builtin_corpus(), opts));
    }
  }
  BENCHMARK(BM_Suite)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond)->Iterations(3);

}  // namespace

BENCHMARK_MAIN();
