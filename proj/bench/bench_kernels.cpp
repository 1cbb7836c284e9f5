#include <benchmark/benchmark.h>

#include <cstdlib>
#include <string>

#include "maass/lseries.hpp"
#include "maass/parallel.hpp"
#include "maass/qseries.hpp"
#include "maass/testfn.hpp"
#include "maass/verify.hpp"

using namespace maass;

namespace {

// Parallel variants take the worker count as the benchmark argument.
void set_threads(long n) { ::setenv("MAASS_LSERIES_THREADS", std::to_string(n).c_str(), 1); }

const form::FormData& delta() {
  static const auto f = qseries::fixture("delta", 320);
  return f;
}

const form::FormData& unit_coefficients() {
  static const form::FormData f = [] {
    form::FormSpec s;
    s.weight2 = 24;
    s.growth_C = 0.01;
    s.generator.a = [](long) { return cplx(1.0); };
    s.generator.limit = 100000000;
    return form::FormData(s);
  }();
  return f;
}

verify::SweepOptions sweep_options() {
  verify::SweepOptions o;
  o.primitive_only = true;
  o.dcap = 5;
  return o;
}

void BM_SweepSerial(benchmark::State& st) {
  const auto battery = testfn::standard_battery();
  for (auto _ : st) benchmark::DoNotOptimize(verify::converse_sweep_serial(delta(), delta(), battery, sweep_options()));
}

void BM_SweepParallel(benchmark::State& st) {
  set_threads(st.range(0));
  const auto battery = testfn::standard_battery();
  for (auto _ : st) benchmark::DoNotOptimize(verify::converse_sweep(delta(), delta(), battery, sweep_options()));
}

void BM_ClassicalSerial(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(lseries::classical_value_serial(unit_coefficients(), 2.0, 1e-7));
}

void BM_ClassicalParallel(benchmark::State& st) {
  set_threads(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(lseries::classical_value(unit_coefficients(), 2.0, 1e-7));
}

// Laplace transforms of the battery at the first hundred frequencies.
void BM_BatteryLaplace(benchmark::State& st) {
  const auto battery = testfn::standard_battery();
  for (auto _ : st)
    for (const auto& phi : battery)
      for (int n = 1; n <= 100; ++n) benchmark::DoNotOptimize(testfn::laplace(phi, 2 * 3.141592653589793 * n));
}

void BM_BatteryLaplaceParallel(benchmark::State& st) {
  set_threads(st.range(0));
  const auto battery = testfn::standard_battery();
  std::vector<cplx> out(battery.size() * 100);
  for (auto _ : st) {
    parallel::for_each_index(long(out.size()), [&](long i) {
      out[i] = testfn::laplace(battery[i / 100], 2 * 3.141592653589793 * double(i % 100 + 1));
    });
    benchmark::DoNotOptimize(out.data());
  }
}

}  // namespace

BENCHMARK(BM_SweepSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SweepParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ClassicalSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ClassicalParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_BatteryLaplace)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BatteryLaplaceParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
