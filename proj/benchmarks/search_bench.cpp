#include <benchmark/benchmark.h>

#include <cmath>

#include "holo/dft.hpp"
#include "holo/search.hpp"
#include "holo/target.hpp"

namespace {

holo::Target make_target(int field_size) {
  const int n = field_size / 2;
  holo::Image amplitude(n, n);
  holo::Image phase(n, n);
  for (int y = 0; y < n; ++y) {
    for (int x = 0; x < n; ++x) {
      amplitude.at(x, y) = (x + y) / static_cast<double>(2 * n - 2);
      phase.at(x, y) = 0.5 + 0.5 * std::sin(0.37 * x + 0.61 * y);
    }
  }
  holo::TargetSpec spec;
  spec.amplitude = amplitude;
  spec.phase = phase;
  return holo::build_target(spec);
}

holo::SearchState make_state(int field_size) {
  // Disable the periodic replay recompute so the timing isolates the
  // per-step cost.
  holo::SearchOptions options;
  options.recompute_interval = 0;
  return holo::SearchState(make_target(field_size).field,
                           holo::ModulationScheme::multi_phase(256), 7, options);
}

void ds_step(benchmark::State& state) {
  holo::SearchState search = make_state(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(search.ds_step());
  }
}
BENCHMARK(ds_step)->Arg(64)->Arg(128)->Arg(256);

void hps_step(benchmark::State& state) {
  holo::SearchState search = make_state(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(search.hps_step());
  }
}
BENCHMARK(hps_step)->Arg(64)->Arg(128)->Arg(256);

void sa_step(benchmark::State& state) {
  holo::SearchState search = make_state(static_cast<int>(state.range(0)));
  holo::AnnealSchedule schedule{0.01, 5.0, 1000000};
  for (auto _ : state) {
    benchmark::DoNotOptimize(search.sa_step(schedule));
  }
}
BENCHMARK(sa_step)->Arg(64)->Arg(128)->Arg(256);

void single_pixel_replay_update(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  holo::Target target = make_target(n);
  holo::ComplexField replay = holo::forward_dft(target.field);
  holo::TwiddleTable twiddles(n, n);
  int x = 1;
  for (auto _ : state) {
    holo::incremental_update(replay, x, (x * 7) % n, holo::Complex{0.5, -0.5}, twiddles);
    x = (x + 13) % n;
    benchmark::DoNotOptimize(replay.data().data());
  }
}
BENCHMARK(single_pixel_replay_update)->Arg(64)->Arg(128)->Arg(256);

void full_forward_dft(benchmark::State& state) {
  holo::Target target = make_target(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(holo::forward_dft(target.field));
  }
}
BENCHMARK(full_forward_dft)->Arg(64)->Arg(128)->Arg(256);

}  // namespace

BENCHMARK_MAIN();
