#include <benchmark/benchmark.h>

#include "mixkin/harness.hpp"
#include "mixkin/parallel.hpp"
#include "mixkin/stepper.hpp"

namespace {

void BM_dirk_step(benchmark::State& state) {
    using namespace mixkin;
    set_thread_count(static_cast<int>(state.range(1)));
    ExperimentConfig cfg = preset_config(Preset::accuracy);
    cfg.grid.nx = static_cast<int>(state.range(0));
    const PhaseGrid grid = cfg.grid.build();
    const MixtureState init = initial_state(cfg, grid);
    const double dt = 2.0 * grid.dx / grid.vmax_abs();
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            step_dirk(init, tableau_dirk3(), dt, grid, cfg.species, cfg.regime, 4));
    }
    set_thread_count(0);
}

void BM_bdf_relax_stage(benchmark::State& state) {
    using namespace mixkin;
    set_thread_count(1);
    ExperimentConfig cfg = preset_config(Preset::accuracy);
    cfg.grid.nx = static_cast<int>(state.range(0));
    const PhaseGrid grid = cfg.grid.build();
    const MixtureState init = initial_state(cfg, grid);
    const double dt = 2.0 * grid.dx / grid.vmax_abs();
    std::vector<MixtureState> history;
    history.push_back(step_dirk(init, tableau_dirk3(), dt, grid, cfg.species, cfg.regime, 4));
    history.push_back(init);
    history[0].time = init.time + dt;
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            step_bdf(history, bdf2_coeffs(), dt, grid, cfg.species, cfg.regime, 4));
    }
    set_thread_count(0);
}

} // namespace

BENCHMARK(BM_dirk_step)->Args({100, 1})->Args({100, 0})->Args({200, 1})->Args({200, 0})
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_bdf_relax_stage)->Args({100, 1})->Args({200, 1})->Unit(benchmark::kMillisecond);
