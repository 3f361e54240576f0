#include <doctest.h>

#include <cmath>
#include <cstdio>

#include "oracle.hpp"
#include "supplyrisk/error.hpp"
#include "supplyrisk/exposure.hpp"
#include "supplyrisk/matrix.hpp"
#include "supplyrisk/synth.hpp"

using namespace supplyrisk;

namespace {

std::uint64_t fnv1a(const std::vector<EdgeRecord> &edges) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto feed = [&](const std::string &s) {
        for (unsigned char c : s) {
            h ^= c;
            h *= 0x100000001b3ULL;
        }
    };
    for (const auto &e : edges) {
        feed(e.supplier);
        feed(",");
        feed(e.customer);
        feed("\n");
    }
    return h;
}

GeneratorConfig three_regions(std::uint64_t seed) {
    GeneratorConfig config;
    config.regions = {{"A", 40}, {"B", 25}, {"C", 10}};
    config.intra_probability = 0.08;
    config.inter_probability = 0.01;
    config.seed = seed;
    return config;
}

} // namespace

TEST_SUITE("synth") {

TEST_CASE("counter generator is SplitMix64") {
    // First outputs of the reference SplitMix64 seeded with 0.
    CHECK(mix64(0x9E3779B97F4A7C15ULL) == 0xE220A8397B1DCDAFULL);
    CHECK(mix64(2 * 0x9E3779B97F4A7C15ULL) == 0x6E789E6AA1B965F4ULL);
    CHECK(counter_draw(5, 1, 2) == counter_draw(5, 1, 2));
    CHECK(counter_draw(5, 1, 2) != counter_draw(5, 2, 1));
    for (std::uint64_t k = 0; k < 1000; ++k) {
        const double u = counter_uniform(3, 0, k);
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
}

TEST_CASE("toy fixture reproduces the target exposures") {
    const auto toy = toy_fixture();
    const auto &p = toy.partition;
    CHECK(p.members(*p.find("A")).size() == 2);
    const auto sizes = degree_sizes(toy.network);
    const auto b = *p.find("B");
    const FirmIndex f1[] = {*toy.network.find("f1")};
    const FirmIndex f2[] = {*toy.network.find("f2")};
    CHECK(firm_region_exposure(propagate(toy.network, f1, Direction::Downstream), p, sizes)[b] == 0.75);
    CHECK(firm_region_exposure(propagate(toy.network, f2, Direction::Downstream), p, sizes)[b] == 0.0);

    // Oracle check of every firm row.
    const auto dense = oracle::dense_adjacency(toy.network);
    for (FirmIndex i = 0; i < 9; ++i) {
        const FirmIndex s[] = {i};
        const auto row = propagate(toy.network, s, Direction::Downstream);
        const auto naive = oracle::naive_cascade(dense, {static_cast<int>(i)});
        for (FirmIndex j = 0; j < 9; ++j)
            CHECK(std::abs(row.distress_of(j) - naive.h[j]) <= 1e-12);
    }
}

TEST_CASE("block model basics") {
    auto config = three_regions(1);
    config.inter_probability = 0.0;
    const auto diag = block_model(config);
    const auto a = link_count_matrix(diag.network, diag.partition);
    for (std::size_t c = 0; c < a.size(); ++c)
        for (std::size_t d = 0; d < a.size(); ++d)
            if (c != d)
                CHECK(a(c, d) == 0.0);

    GeneratorConfig full;
    full.regions = {{"K", 12}};
    full.intra_probability = 1.0;
    CHECK(generate_block_model(full).edges.size() == 12 * 11);

    GeneratorConfig bad = three_regions(1);
    bad.inter_probability = 1.5;
    CHECK_THROWS_AS(generate_block_model(bad), InputError);
    bad = three_regions(1);
    bad.regions.push_back({"A", 3});
    CHECK_THROWS_AS(generate_block_model(bad), InputError);
    bad = three_regions(1);
    bad.regions[0].firms = 0;
    CHECK_THROWS_AS(generate_block_model(bad), InputError);
}

TEST_CASE("pair overrides") {
    GeneratorConfig config;
    config.regions = {{"A", 10}, {"B", 10}};
    config.pair_probability[{"A", "B"}] = 1.0;
    const auto data = generate_block_model(config);
    CHECK(data.edges.size() == 100);
    for (const auto &e : data.edges) {
        CHECK(e.supplier < "f10");
        CHECK(e.customer >= "f10");
    }
}

TEST_CASE("generated edge lists are fixed by the seed") {
    const auto one = generate_block_model(three_regions(42));
    const auto two = generate_block_model(three_regions(42));
    CHECK(one.edges == two.edges);
    CHECK(one.macro == two.macro);
    CHECK(generate_block_model(three_regions(43)).edges != one.edges);
    CHECK(one.edges.size() == 195);
    CHECK(fnv1a(one.edges) == 0x34463901c4b7e83bULL);
    CHECK(one.firms.front().firm_id == "f00");
    CHECK(one.firms.back().firm_id == "f74");
}

TEST_CASE("generated networks pass validation") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto data = generate_block_model(three_regions(seed));
        const auto built = build_network(data.edges, data.firms);
        CHECK(built.report.self_loops_dropped == 0);
        CHECK(built.report.duplicates_dropped == 0);
    }
}

TEST_CASE("scale fixture edge count follows the binomial expectation") {
    ScaleSpec spec;
    spec.firms = 1000;
    const auto smoke = scale_fixture(spec);
    CHECK(smoke.partition.region_count() == 10);

    spec.firms = 60000;
    spec.regions = 50;
    const auto config = scale_config(spec);
    const double expected = expected_edge_count(config);
    CHECK(expected == doctest::Approx(5.7 * 60000 / 2).epsilon(1e-9));
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
        auto seeded = config;
        seeded.seed = seed;
        const double count = static_cast<double>(generate_block_model(seeded).edges.size());
        CHECK(std::abs(count - expected) <= 0.01 * expected);
    }
}

TEST_CASE("synthetic macro table is positive and deterministic") {
    const auto config = three_regions(8);
    const auto macro = synthetic_macro(config.regions, 8);
    REQUIRE(macro.rows().size() == 3);
    for (const auto &row : macro.rows()) {
        CHECK(row.population > 0);
        CHECK(row.gdp_usd > 0);
        CHECK(row.imports_usd > 0);
        CHECK(row.exports_usd > 0);
    }
    CHECK(macro == synthetic_macro(config.regions, 8));
}

}
