#include <benchmark/benchmark.h>

#include <map>
#include <memory>

#include "supplyrisk/exposure.hpp"
#include "supplyrisk/synth.hpp"

using namespace supplyrisk;

namespace {

const BuiltNetwork &fixture(std::size_t firms) {
    static std::map<std::size_t, std::unique_ptr<BuiltNetwork>> cache;
    auto &slot = cache[firms];
    if (!slot) {
        ScaleSpec spec;
        spec.firms = firms;
        spec.regions = 20;
        spec.seed = 5;
        slot = std::make_unique<BuiltNetwork>(scale_fixture(spec));
    }
    return *slot;
}

// Full all-seed E^cd: args are firm count and worker threads.
void BM_RegionRegionExposure(benchmark::State &state) {
    const auto &model = fixture(static_cast<std::size_t>(state.range(0)));
    ExposureOptions options;
    options.workers = static_cast<unsigned>(state.range(1));
    for (auto _ : state) {
        auto e = region_region_exposure(model.network, model.partition, Direction::Downstream, options);
        benchmark::DoNotOptimize(e.values().data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_RegionRegionExposure)
    ->ArgsProduct({{2000, 5000}, {1, 2, 4, 8}})
    ->Unit(benchmark::kMillisecond)
    ->UseRealTime();

void BM_LinkCounts(benchmark::State &state) {
    const auto &model = fixture(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        auto a = link_count_matrix(model.network, model.partition);
        benchmark::DoNotOptimize(a.values().data());
    }
}
BENCHMARK(BM_LinkCounts)->Arg(5000)->Arg(100000)->Unit(benchmark::kMicrosecond);

} // namespace
