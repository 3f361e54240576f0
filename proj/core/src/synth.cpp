#include "supplyrisk/synth.hpp"

#include <cmath>
#include <set>

#include "supplyrisk/error.hpp"

namespace supplyrisk {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
// Macro draws use streams far above any block index.
constexpr std::uint64_t kMacroStream = 1ULL << 48;

std::string firm_name(std::size_t index, std::size_t total) {
    std::size_t width = 1;
    for (std::size_t v = total - 1; v >= 10; v /= 10)
        ++width;
    std::string digits = std::to_string(index);
    return "f" + std::string(width > digits.size() ? width - digits.size() : 0, '0') + digits;
}

void check_probability(double p, const std::string &what) {
    if (!(p >= 0.0 && p <= 1.0))
        throw InputError(what + " probability must lie in [0, 1], got " + std::to_string(p));
}

} // namespace

std::uint64_t mix64(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xBF58476D1CE4E5B9ULL;
    x ^= x >> 27;
    x *= 0x94D049BB133111EBULL;
    x ^= x >> 31;
    return x;
}

std::uint64_t counter_draw(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) {
    const std::uint64_t x = mix64(seed + kGolden * (stream + 1));
    return mix64(x + kGolden * (counter + 1));
}

double counter_uniform(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) {
    return static_cast<double>(counter_draw(seed, stream, counter) >> 11) * 0x1.0p-53;
}

SyntheticData toy_fixture_data() {
    SyntheticData data;
    const std::pair<const char *, const char *> edges[] = {
        {"f1", "f2"}, {"f1", "f3"}, {"f1", "f4"}, {"f3", "f9"},
        {"f5", "f1"}, {"f6", "f8"}, {"f6", "f9"}, {"f8", "f7"},
    };
    for (const auto &[s, c] : edges)
        data.edges.push_back({s, c});
    const std::pair<const char *, const char *> firms[] = {
        {"f1", "A"}, {"f2", "A"}, {"f3", "B"}, {"f4", "B"}, {"f5", "B"},
        {"f6", "C"}, {"f7", "C"}, {"f8", "C"}, {"f9", "C"},
    };
    for (const auto &[id, region] : firms)
        data.firms.push_back({id, region, "toy"});
    data.macro = MacroTable({
        {"A", 4.0e12, 8.0e7, 1.1e12, 1.5e12},
        {"B", 6.0e11, 3.0e7, 2.0e11, 1.8e11},
        {"C", 9.0e10, 6.0e7, 3.0e10, 2.0e10},
    });
    return data;
}

BuiltNetwork toy_fixture() {
    const auto data = toy_fixture_data();
    return build_network(data.edges, data.firms);
}

SyntheticData generate_block_model(const GeneratorConfig &config) {
    if (config.regions.empty())
        throw InputError("generator needs at least one region");
    check_probability(config.intra_probability, "intra-region");
    check_probability(config.inter_probability, "inter-region");
    std::set<std::string> labels;
    std::size_t total = 0;
    for (const auto &region : config.regions) {
        if (region.firms < 1)
            throw InputError("region '" + region.label + "' needs at least one firm");
        if (region.label.empty() || !labels.insert(region.label).second)
            throw InputError("region labels must be non-empty and unique ('" + region.label + "')");
        total += region.firms;
    }
    for (const auto &[pair, p] : config.pair_probability) {
        if (!labels.contains(pair.first) || !labels.contains(pair.second))
            throw InputError("probability override for unknown region pair " + pair.first + "->" + pair.second);
        check_probability(p, "override");
    }

    SyntheticData data;
    std::vector<std::size_t> first(config.regions.size());
    std::size_t next = 0;
    for (std::size_t r = 0; r < config.regions.size(); ++r) {
        first[r] = next;
        for (std::size_t k = 0; k < config.regions[r].firms; ++k)
            data.firms.push_back({firm_name(next++, total), config.regions[r].label, ""});
    }

    const std::size_t regions = config.regions.size();
    for (std::size_t c = 0; c < regions; ++c) {
        for (std::size_t d = 0; d < regions; ++d) {
            double p = c == d ? config.intra_probability : config.inter_probability;
            if (auto it = config.pair_probability.find({config.regions[c].label, config.regions[d].label});
                it != config.pair_probability.end())
                p = it->second;
            const std::uint64_t rows = config.regions[c].firms;
            const std::uint64_t cols = c == d ? config.regions[d].firms - 1 : config.regions[d].firms;
            const std::uint64_t cells = rows * cols;
            if (p <= 0.0 || cells == 0)
                continue;

            auto emit = [&](std::uint64_t cell) {
                const std::uint64_t i = cell / cols;
                std::uint64_t j = cell % cols;
                if (c == d && j >= i)
                    ++j;  // skip the diagonal
                data.edges.push_back({data.firms[first[c] + i].firm_id, data.firms[first[d] + j].firm_id});
            };

            if (p >= 1.0) {
                for (std::uint64_t cell = 0; cell < cells; ++cell)
                    emit(cell);
                continue;
            }
            const std::uint64_t stream = c * regions + d;
            const double log_q = std::log1p(-p);
            std::uint64_t cell = 0;
            for (std::uint64_t k = 0;; ++k) {
                const double u = 1.0 - counter_uniform(config.seed, stream, k);  // (0, 1]
                const double skip = std::floor(std::log(u) / log_q);
                if (skip >= static_cast<double>(cells - cell))
                    break;
                cell += static_cast<std::uint64_t>(skip);
                emit(cell);
                if (++cell >= cells)
                    break;
            }
        }
    }
    data.macro = synthetic_macro(config.regions, config.seed);
    return data;
}

BuiltNetwork block_model(const GeneratorConfig &config) {
    const auto data = generate_block_model(config);
    if (data.edges.empty())
        throw ComputationError("generated block model has no edges");
    return build_network(data.edges, data.firms);
}

double expected_edge_count(const GeneratorConfig &config) {
    double expected = 0.0;
    for (const auto &a : config.regions) {
        for (const auto &b : config.regions) {
            double p = &a == &b ? config.intra_probability : config.inter_probability;
            if (auto it = config.pair_probability.find({a.label, b.label}); it != config.pair_probability.end())
                p = it->second;
            const double cells = static_cast<double>(a.firms) * static_cast<double>(&a == &b ? b.firms - 1 : b.firms);
            expected += p * cells;
        }
    }
    return expected;
}

GeneratorConfig scale_config(const ScaleSpec &spec) {
    if (spec.firms < 2 || spec.regions < 1 || spec.regions > spec.firms)
        throw InputError("scale fixture needs at least 2 firms and 1..firms regions");
    if (!(spec.mean_degree > 0.0) || !(spec.intra_share >= 0.0 && spec.intra_share <= 1.0))
        throw InputError("scale fixture needs a positive mean degree and an intra share in [0, 1]");

    GeneratorConfig config;
    config.seed = spec.seed;
    std::size_t width = 1;
    for (std::size_t v = spec.regions - 1; v >= 10; v /= 10)
        ++width;
    const std::size_t base = spec.firms / spec.regions;
    const std::size_t extra = spec.firms % spec.regions;
    double intra_cells = 0.0;
    double inter_cells = 0.0;
    for (std::size_t r = 0; r < spec.regions; ++r) {
        std::string digits = std::to_string(r);
        const std::size_t firms = base + (r < extra ? 1 : 0);
        config.regions.push_back({"R" + std::string(width - digits.size(), '0') + digits, firms});
        intra_cells += static_cast<double>(firms) * static_cast<double>(firms - 1);
    }
    inter_cells = static_cast<double>(spec.firms) * static_cast<double>(spec.firms - 1) - intra_cells;

    const double edges = spec.mean_degree * static_cast<double>(spec.firms) / 2.0;
    const double share = inter_cells > 0.0 ? spec.intra_share : 1.0;
    config.intra_probability = intra_cells > 0.0 ? share * edges / intra_cells : 0.0;
    config.inter_probability = inter_cells > 0.0 ? (1.0 - share) * edges / inter_cells : 0.0;
    check_probability(config.intra_probability, "derived intra-region");
    check_probability(config.inter_probability, "derived inter-region");
    return config;
}

BuiltNetwork scale_fixture(const ScaleSpec &spec) { return block_model(scale_config(spec)); }

MacroTable synthetic_macro(const std::vector<RegionSpec> &regions, std::uint64_t seed) {
    std::vector<MacroRow> rows;
    for (std::size_t r = 0; r < regions.size(); ++r) {
        auto draw = [&](std::uint64_t k) { return counter_uniform(seed, kMacroStream + r, k); };
        MacroRow row;
        row.region = regions[r].label;
        row.population = std::round(static_cast<double>(regions[r].firms) * 1.0e5 * (0.5 + draw(0)));
        const double gdp_per_capita = 1000.0 * std::exp(4.0 * draw(1));
        row.gdp_usd = std::round(row.population * gdp_per_capita);
        row.imports_usd = std::round(row.gdp_usd * (0.1 + 0.4 * draw(2)));
        row.exports_usd = std::round(row.gdp_usd * (0.1 + 0.4 * draw(3)));
        rows.push_back(std::move(row));
    }
    return MacroTable(std::move(rows));
}

} // namespace supplyrisk
