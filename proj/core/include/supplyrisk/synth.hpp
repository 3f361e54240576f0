#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "supplyrisk/graph.hpp"
#include "supplyrisk/io.hpp"

namespace supplyrisk {

/**
 * Counter-based pseudorandom stream. Draw k of stream s under seed is a pure
 * function of (seed, s, k):
 *
 *   x = mix64(seed + G * (s + 1));  x = mix64(x + G * (k + 1))
 *
 * with G = 0x9E3779B97F4A7C15 and mix64 the SplitMix64 finalizer. Uniform
 * doubles take the top 53 bits. No platform generator is involved, so golden
 * files are portable.
 */
std::uint64_t mix64(std::uint64_t x);
std::uint64_t counter_draw(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter);
double counter_uniform(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter);  // [0, 1)

// Raw records as they would be read from the CSV inputs.
struct SyntheticData {
    std::vector<EdgeRecord> edges;
    std::vector<FirmRecord> firms;
    MacroTable macro;
};

struct RegionSpec {
    std::string label;
    std::size_t firms = 1;
};

struct GeneratorConfig {
    std::vector<RegionSpec> regions;
    double intra_probability = 0.0;
    double inter_probability = 0.0;
    // Optional per (origin, destination) override of the edge probability.
    std::map<std::pair<std::string, std::string>, double> pair_probability;
    std::uint64_t seed = 0;
};

// Nine firms f1..f9 in regions A = {f1, f2}, B = {f3, f4, f5}, C = {f6..f9}.
// Failure of f1 costs B 75% of its size, failure of f2 costs B nothing, so
// E^AB = 0.375. The same records ship as data/toy/*.csv.
SyntheticData toy_fixture_data();
BuiltNetwork toy_fixture();

// Directed block model: each ordered pair (i, j), i != j, is an edge with the
// probability of its region pair. Edges are drawn block by block with
// geometric skips from one counter stream per block.
SyntheticData generate_block_model(const GeneratorConfig &config);
BuiltNetwork block_model(const GeneratorConfig &config);

struct ScaleSpec {
    std::size_t firms = 1000;
    std::size_t regions = 10;
    double mean_degree = 5.7;  // 2L / N
    double intra_share = 0.5;  // expected share of edges inside regions
    std::uint64_t seed = 0;
};

// Block model with equal-size regions whose probabilities give an expected
// edge count of mean_degree * firms / 2.
GeneratorConfig scale_config(const ScaleSpec &spec);
double expected_edge_count(const GeneratorConfig &config);
BuiltNetwork scale_fixture(const ScaleSpec &spec);

// Deterministic stand-in macro table for generated regions.
MacroTable synthetic_macro(const std::vector<RegionSpec> &regions, std::uint64_t seed);

} // namespace supplyrisk
