#include <benchmark/benchmark.h>

#include <map>
#include <memory>

#include "supplyrisk/cascade.hpp"
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
        spec.seed = 11;
        slot = std::make_unique<BuiltNetwork>(scale_fixture(spec));
    }
    return *slot;
}

// One single-seed cascade per iteration, cycling through the seeds.
void BM_SingleSeedCascade(benchmark::State &state) {
    const auto &model = fixture(static_cast<std::size_t>(state.range(0)));
    const auto direction = state.range(1) == 0 ? Direction::Downstream : Direction::Upstream;
    CascadeEngine engine(model.network, direction);
    CascadeResult row;
    FirmIndex seed = 0;
    std::int64_t reached = 0;
    for (auto _ : state) {
        const FirmIndex single[] = {seed};
        engine.run(single, row);
        reached += static_cast<std::int64_t>(row.distress.size());
        benchmark::DoNotOptimize(row.distress.data());
        seed = (seed + 1) % static_cast<FirmIndex>(model.network.firm_count());
    }
    state.counters["reached"] = benchmark::Counter(static_cast<double>(reached), benchmark::Counter::kAvgIterations);
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_SingleSeedCascade)->ArgsProduct({{1000, 10000, 100000}, {0, 1}})->Unit(benchmark::kMicrosecond);

void BM_EngineSetup(benchmark::State &state) {
    const auto &model = fixture(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        CascadeEngine engine(model.network, Direction::Downstream);
        benchmark::DoNotOptimize(&engine);
    }
}
BENCHMARK(BM_EngineSetup)->Arg(10000)->Arg(100000)->Unit(benchmark::kMicrosecond);

void BM_GenerateScaleFixture(benchmark::State &state) {
    ScaleSpec spec;
    spec.firms = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        auto data = generate_block_model(scale_config(spec));
        benchmark::DoNotOptimize(data.edges.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_GenerateScaleFixture)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

} // namespace
