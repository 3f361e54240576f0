#include <doctest.h>

#include <algorithm>
#include <random>

#include "helpers.hpp"
#include "oracle.hpp"
#include "supplyrisk/error.hpp"
#include "supplyrisk/graph.hpp"
#include "supplyrisk/matrix.hpp"
#include "supplyrisk/synth.hpp"

using namespace supplyrisk;
using testutil::idx;
using testutil::make;

TEST_SUITE("graph") {

TEST_CASE("chain construction") {
    const auto built = make({{"a", "b"}, {"b", "c"}}, {{"a", "X"}, {"b", "X"}, {"c", "Y"}});
    const auto &g = built.network;
    CHECK(g.firm_count() == 3);
    CHECK(g.edge_count() == 2);
    CHECK(g.degree(idx(g, "a")) == 1);
    CHECK(g.degree(idx(g, "b")) == 2);
    CHECK(g.degree(idx(g, "c")) == 1);
    CHECK(built.partition.regions() == std::vector<std::string>{"X", "Y"});
    CHECK(built.partition.size(0) == 2);
}

TEST_CASE("self-loops and duplicates are dropped and counted") {
    const auto built = make({{"a", "a"}, {"a", "b"}, {"a", "b"}}, {{"a", "X"}, {"b", "X"}});
    CHECK(built.network.edge_count() == 1);
    CHECK(built.report.self_loops_dropped == 1);
    CHECK(built.report.duplicates_dropped == 1);
}

TEST_CASE("firms without edges are dropped at build time") {
    const auto built = make({{"a", "b"}}, {{"a", "X"}, {"b", "X"}, {"z", "Y"}});
    CHECK(built.network.firm_count() == 2);
    CHECK(built.report.isolated_dropped == 1);
    CHECK(built.partition.regions() == std::vector<std::string>{"X"});
}

TEST_CASE("construction errors") {
    CHECK_THROWS_AS(make({}, {{"a", "X"}}), InputError);
    CHECK_THROWS_WITH_AS(make({{"a", "q"}}, {{"a", "X"}}), doctest::Contains("'q'"), InputError);
    CHECK_THROWS_AS(make({{"a", "b"}}, {{"a", "X"}, {"a", "Y"}, {"b", "X"}}), InputError);
    CHECK_THROWS_AS(make({{"a", "a"}}, {{"a", "X"}}), ComputationError);
}

TEST_CASE("input row order does not change the network") {
    const auto one = make({{"a", "b"}, {"c", "a"}, {"b", "c"}}, {{"a", "X"}, {"b", "Y"}, {"c", "X"}});
    const auto two = make({{"b", "c"}, {"a", "b"}, {"c", "a"}}, {{"c", "X"}, {"a", "X"}, {"b", "Y"}});
    CHECK(one.network == two.network);
    CHECK(one.partition == two.partition);
}

TEST_CASE("adjacency lists are consistent transposes") {
    std::mt19937_64 rng(11);
    const auto rg = oracle::random_graph(rng, 40, 0.08, 4);
    const auto built = build_network(rg.edges, rg.firms);
    const auto &g = built.network;
    for (FirmIndex i = 0; i < g.firm_count(); ++i) {
        CHECK(std::is_sorted(g.customers(i).begin(), g.customers(i).end()));
        for (FirmIndex c : g.customers(i)) {
            const auto s = g.suppliers(c);
            CHECK(std::find(s.begin(), s.end(), i) != s.end());
        }
        CHECK(g.degree(i) == g.in_degree(i) + g.out_degree(i));
        CHECK(g.degree(i) >= 1);
    }
}

TEST_CASE("reverse") {
    const auto chain = make({{"a", "b"}, {"b", "c"}}, {{"a", "X"}, {"b", "X"}, {"c", "Y"}});
    const auto r = reverse(chain.network);
    CHECK(r.edges() == std::vector<std::pair<FirmIndex, FirmIndex>>{{1, 0}, {2, 1}});
    CHECK(reverse(r) == chain.network);

    std::mt19937_64 rng(5);
    const auto rg = oracle::random_graph(rng, 50, 0.06, 3);
    const auto g = build_network(rg.edges, rg.firms).network;
    const auto rev = reverse(g);
    const auto t = oracle::transpose(oracle::dense_adjacency(g));
    CHECK(oracle::dense_adjacency(rev) == t);
    for (FirmIndex i = 0; i < g.firm_count(); ++i) {
        CHECK(rev.in_degree(i) == g.out_degree(i));
        CHECK(rev.degree(i) == g.degree(i));
    }
    CHECK(reverse(rev) == g);
}

TEST_CASE("link counts and mean outlinks") {
    const auto chain = make({{"a", "b"}, {"b", "c"}}, {{"a", "X"}, {"b", "X"}, {"c", "Y"}});
    const auto a = link_count_matrix(chain.network, chain.partition);
    CHECK(a.kind() == MatrixKind::LinkCount);
    CHECK(a(0, 0) == 1);
    CHECK(a(0, 1) == 1);
    CHECK(a(1, 0) == 0);
    CHECK(a(1, 1) == 0);

    const auto two = make({{"a", "c"}, {"a", "d"}, {"b", "c"}, {"b", "e"}, {"c", "d"}},
                          {{"a", "X"}, {"b", "X"}, {"c", "Y"}, {"d", "Y"}, {"e", "Y"}});
    const auto k = mean_outlinks(two.network, two.partition);
    CHECK(k(0, 1) == 2.0);
    CHECK(k(1, 0) == 0.0);
    CHECK(k(1, 1) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("toy fixture matrices match a brute-force pair count") {
    const auto toy = toy_fixture();
    CHECK(toy.network.firm_count() == 9);
    CHECK(toy.partition.regions() == std::vector<std::string>{"A", "B", "C"});
    const auto a = link_count_matrix(toy.network, toy.partition);
    const auto kbar = mean_outlinks(toy.network, toy.partition);
    const auto dense = oracle::dense_adjacency(toy.network);
    double total = 0.0;
    for (std::size_t c = 0; c < 3; ++c)
        for (std::size_t d = 0; d < 3; ++d) {
            int count = 0;
            for (FirmIndex i = 0; i < 9; ++i)
                for (FirmIndex j = 0; j < 9; ++j)
                    if (dense[i][j] && toy.partition.region_of(i) == c && toy.partition.region_of(j) == d)
                        ++count;
            CHECK(a(c, d) == count);
            CHECK(kbar(c, d) == static_cast<double>(count) / toy.partition.size(static_cast<RegionIndex>(c)));
            total += a(c, d);
        }
    CHECK(total == toy.network.edge_count());
}

TEST_CASE("region degree aggregates") {
    const auto chain = make({{"a", "b"}, {"b", "c"}}, {{"a", "X"}, {"b", "X"}, {"c", "Y"}});
    const auto agg = region_degree_aggregates(chain.network, chain.partition);
    CHECK(agg[0].total_degree == 3);
    CHECK(agg[0].export_links == 1);
    CHECK(agg[0].import_links == 0);
    CHECK(agg[1].import_links == 1);

    const auto single = make({{"a", "b"}, {"b", "c"}}, {{"a", "X"}, {"b", "X"}, {"c", "X"}});
    const auto one = region_degree_aggregates(single.network, single.partition);
    CHECK(one[0].export_links == 0);
    CHECK(one[0].import_links == 0);

    std::mt19937_64 rng(3);
    const auto rg = oracle::random_graph(rng, 45, 0.07, 5);
    const auto built = build_network(rg.edges, rg.firms);
    const auto many = region_degree_aggregates(built.network, built.partition);
    std::uint64_t sum_k = 0;
    for (std::size_t c = 0; c < many.size(); ++c) {
        sum_k += many[c].total_degree;
        std::uint64_t out = 0, in = 0;
        for (const auto &[s, t] : built.network.edges()) {
            const bool cross = built.partition.region_of(s) != built.partition.region_of(t);
            out += cross && built.partition.region_of(s) == c;
            in += cross && built.partition.region_of(t) == c;
        }
        CHECK(many[c].export_links == out);
        CHECK(many[c].import_links == in);
    }
    CHECK(sum_k == 2 * built.network.edge_count());
}

TEST_CASE("preprocess removes small regions strictly at the threshold") {
    std::vector<EdgeRecord> edges;
    std::vector<FirmRecord> firms;
    for (int i = 0; i < 30; ++i) {
        firms.push_back({"x" + std::to_string(10 + i), "X", ""});
        firms.push_back({"y" + std::to_string(10 + i), "Y", ""});
    }
    firms.push_back({"y99", "Y", ""});
    for (int i = 0; i < 30; ++i) {
        edges.push_back({"x" + std::to_string(10 + i), "x" + std::to_string(10 + (i + 1) % 30)});
        edges.push_back({"y" + std::to_string(10 + i), "y" + std::to_string(10 + (i + 1) % 30)});
    }
    edges.push_back({"y99", "y10"});
    const auto built = build_network(edges, firms);
    const auto out = preprocess(built.network, built.partition, {});
    CHECK(out.partition.regions() == std::vector<std::string>{"Y"});
    CHECK(out.network.firm_count() == 31);
    CHECK(out.report.small_region_firms == 30);
}

TEST_CASE("preprocess with a 31-firm and a 5-firm region") {
    std::vector<EdgeRecord> edges;
    std::vector<FirmRecord> firms;
    for (int i = 0; i < 31; ++i)
        firms.push_back({"x" + std::to_string(10 + i), "X", ""});
    for (int i = 0; i < 5; ++i)
        firms.push_back({"y" + std::to_string(i), "Y", ""});
    for (int i = 0; i < 30; ++i)
        edges.push_back({"x" + std::to_string(10 + i), "x" + std::to_string(11 + i)});
    for (int i = 0; i < 4; ++i)
        edges.push_back({"y" + std::to_string(i), "y" + std::to_string(i + 1)});
    edges.push_back({"y0", "x40"});
    const auto built = build_network(edges, firms);
    const auto out = preprocess(built.network, built.partition, {});
    CHECK(out.partition.regions() == std::vector<std::string>{"X"});
    CHECK(out.network.firm_count() == 31);
    CHECK(out.network.edge_count() == 30);
}

TEST_CASE("preprocess with no filters is the identity") {
    const auto toy = toy_fixture();
    PreprocessConfig none;
    none.min_firms = 0;
    const auto out = preprocess(toy.network, toy.partition, none);
    CHECK(out.network == toy.network);
    CHECK(out.partition == toy.partition);
}

TEST_CASE("preprocess is idempotent and can empty the network") {
    std::mt19937_64 rng(21);
    for (int round = 0; round < 10; ++round) {
        const auto rg = oracle::random_graph(rng, 48, 0.05, 4);
        const auto built = build_network(rg.edges, rg.firms);
        PreprocessConfig config;
        config.min_firms = 9;
        config.excluded_regions = {"R3"};
        try {
            const auto once = preprocess(built.network, built.partition, config);
            const auto twice = preprocess(once.network, once.partition, config);
            CHECK(twice.network == once.network);
            CHECK(twice.partition == once.partition);
        } catch (const ComputationError &e) {
            CHECK(std::string(e.what()) == "empty network after preprocessing");
        }
    }
    const auto toy = toy_fixture();
    CHECK_THROWS_WITH_AS(preprocess(toy.network, toy.partition, {}), "empty network after preprocessing",
                         ComputationError);
}

TEST_CASE("excluded regions are removed with their newly isolated partners") {
    const auto built = make({{"a", "b"}, {"c", "d"}, {"d", "e"}},
                            {{"a", "X"}, {"b", "OFF"}, {"c", "X"}, {"d", "X"}, {"e", "OFF"}});
    PreprocessConfig config;
    config.min_firms = 0;
    config.excluded_regions = {"OFF"};
    const auto out = preprocess(built.network, built.partition, config);
    CHECK(out.network.firm_ids() == std::vector<std::string>{"c", "d"});
    CHECK(out.report.excluded_region_firms == 2);
    CHECK(out.report.isolated_firms == 1);
}

}
