#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <optional>
#include <span>
#include <thread>
#include <vector>

#include "supplyrisk/cascade.hpp"

namespace supplyrisk {

struct BatchOptions {
    unsigned workers = 1;
    // Seeds per reduction chunk. Results depend on this value but never on
    // the worker count.
    std::size_t chunk_size = 64;
    CascadeOptions cascade;
};

/**
 * Runs one single-seed cascade per seed on up to options.workers threads and
 * reduces the rows deterministically.
 *
 * Seeds are cut into fixed chunks. Each chunk folds its rows, in seed order,
 * into a fresh Partial from make(); finished partials are merged into the
 * caller's accumulator strictly in chunk order. Floating-point results are
 * therefore bit-identical for any worker count.
 *
 *   make()                                 -> Partial
 *   fold(Partial &, FirmIndex seed, const CascadeResult &row)
 *   merge(Partial &&)                      called once per chunk, in order
 */
template <class Make, class Fold, class Merge>
void run_cascade_batch(const SupplyNetwork &network, Direction direction, std::span<const FirmIndex> seeds,
                       const BatchOptions &options, Make make, Fold fold, Merge merge) {
    using Partial = decltype(make());

    std::vector<FirmIndex> all;
    if (seeds.empty()) {
        all.resize(network.firm_count());
        for (std::size_t i = 0; i < all.size(); ++i)
            all[i] = static_cast<FirmIndex>(i);
        seeds = all;
    }
    const std::size_t chunk = std::max<std::size_t>(options.chunk_size, 1);
    const std::size_t chunks = (seeds.size() + chunk - 1) / chunk;
    const unsigned workers = std::max(1u, std::min<unsigned>(options.workers, static_cast<unsigned>(chunks)));

    std::vector<CascadeEngine> engines;
    engines.reserve(workers);
    for (unsigned w = 0; w < workers; ++w)
        engines.emplace_back(network, direction, options.cascade);

    auto fold_chunk = [&](CascadeEngine &engine, CascadeResult &row, std::size_t c) {
        Partial partial = make();
        const std::size_t begin = c * chunk;
        const std::size_t end = std::min(seeds.size(), begin + chunk);
        for (std::size_t s = begin; s < end; ++s) {
            const FirmIndex single[] = {seeds[s]};
            engine.run(single, row);
            fold(partial, seeds[s], row);
        }
        return partial;
    };

    if (workers == 1) {
        CascadeResult row;
        for (std::size_t c = 0; c < chunks; ++c)
            merge(fold_chunk(engines[0], row, c));
        return;
    }

    // Bounded window of in-flight chunks keeps memory at O(workers) partials.
    const std::size_t window = static_cast<std::size_t>(workers) * 4;
    std::vector<std::optional<Partial>> slots(window);
    for (std::size_t first = 0; first < chunks; first += window) {
        const std::size_t count = std::min(window, chunks - first);
        std::atomic<std::size_t> next{0};
        std::vector<std::exception_ptr> errors(workers);
        {
            std::vector<std::jthread> threads;
            threads.reserve(workers);
            for (unsigned w = 0; w < workers; ++w) {
                threads.emplace_back([&, w] {
                    CascadeResult row;
                    try {
                        for (std::size_t k = next++; k < count; k = next++)
                            slots[k].emplace(fold_chunk(engines[w], row, first + k));
                    } catch (...) {
                        errors[w] = std::current_exception();
                    }
                });
            }
        }
        for (auto &error : errors)
            if (error)
                std::rethrow_exception(error);
        for (std::size_t k = 0; k < count; ++k) {
            merge(std::move(*slots[k]));
            slots[k].reset();
        }
    }
}

} // namespace supplyrisk
