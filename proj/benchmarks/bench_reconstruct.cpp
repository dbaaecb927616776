#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "mixkin/reconstruct.hpp"

namespace {

std::vector<double> smooth_row(int n) {
    std::vector<double> row(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const double x = -1.0 + 2.0 * i / n;
        row[static_cast<std::size_t>(i)] = 1.0 + 0.3 * std::sin(3.0 * x) + 0.1 * std::cos(9.0 * x);
    }
    return row;
}

void BM_cweno_reconstruct(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const int degree = static_cast<int>(state.range(1));
    const auto row = smooth_row(n);
    for (auto _ : state) {
        benchmark::DoNotOptimize(mixkin::cweno_reconstruct(row, degree, mixkin::Boundary::periodic));
    }
    state.SetItemsProcessed(state.iterations() * n);
}

void BM_shift_field(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const int degree = static_cast<int>(state.range(1));
    const auto row = smooth_row(n);
    std::vector<double> out(row.size());
    const double dx = 2.0 / n;
    for (auto _ : state) {
        mixkin::shift_field(row, -3.37 * dx, dx, degree, mixkin::Boundary::periodic, out);
        benchmark::DoNotOptimize(out.data());
    }
    state.SetItemsProcessed(state.iterations() * n);
}

} // namespace

BENCHMARK(BM_cweno_reconstruct)->Args({200, 2})->Args({200, 4})->Args({2000, 2})->Args({2000, 4});
BENCHMARK(BM_shift_field)->Args({200, 2})->Args({200, 4})->Args({2000, 2})->Args({2000, 4});
