#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "supplyrisk/stats.hpp"

using namespace supplyrisk;

namespace {

std::vector<double> draws(std::size_t n, unsigned seed, double lo, double hi) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(lo, hi);
    std::vector<double> v(n);
    for (auto &x : v)
        x = u(rng);
    return v;
}

void BM_LorenzGini(benchmark::State &state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto values = draws(n, 1, 0.0, 1.0);
    const auto weights = draws(n, 2, 1.0, 100.0);
    for (auto _ : state) {
        const auto curve = lorenz(values, weights);
        benchmark::DoNotOptimize(gini(curve));
    }
}
BENCHMARK(BM_LorenzGini)->Arg(206)->Arg(10000);

void BM_OlsSixRegressors(benchmark::State &state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    std::vector<std::vector<double>> cols;
    std::vector<std::string> names;
    for (unsigned k = 0; k < 6; ++k) {
        cols.push_back(draws(n, 10 + k, 0.0, 1.0));
        names.push_back("x" + std::to_string(k));
    }
    const auto y = draws(n, 99, 0.0, 1.0);
    for (auto _ : state) {
        auto fit = ols_multi(y, cols, names, true);
        benchmark::DoNotOptimize(fit.r_squared);
    }
}
BENCHMARK(BM_OlsSixRegressors)->Arg(206)->Arg(10000);

} // namespace
