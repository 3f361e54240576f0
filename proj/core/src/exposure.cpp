#include "supplyrisk/exposure.hpp"

#include <algorithm>
#include <numeric>

#include "supplyrisk/batch.hpp"
#include "supplyrisk/error.hpp"

namespace supplyrisk {

namespace {

void check_positive(const Partition &partition, std::span<const double> region_size) {
    for (std::size_t c = 0; c < region_size.size(); ++c)
        if (!(region_size[c] > 0.0))
            throw ComputationError("region '" + partition.label(static_cast<RegionIndex>(c)) +
                                   "' has zero total size");
}

} // namespace

std::vector<double> region_sizes(const Partition &partition, std::span<const double> sizes) {
    if (sizes.size() != partition.firm_count())
        throw InputError("size vector length does not match firm count");
    std::vector<double> total(partition.region_count(), 0.0);
    for (FirmIndex i = 0; i < sizes.size(); ++i)
        total[partition.region_of(i)] += sizes[i];
    return total;
}

std::vector<double> firm_region_exposure(const CascadeResult &row, const Partition &partition,
                                         std::span<const double> sizes) {
    const auto totals = region_sizes(partition, sizes);
    check_positive(partition, totals);
    std::vector<double> exposure(partition.region_count(), 0.0);
    for (const auto &entry : row.distress)
        exposure[partition.region_of(entry.firm)] += entry.distress * sizes[entry.firm];
    for (std::size_t c = 0; c < exposure.size(); ++c)
        exposure[c] /= totals[c];
    return exposure;
}

ExposureMatrix region_region_exposure(const SupplyNetwork &network, const Partition &partition, Direction direction,
                                      const ExposureOptions &options) {
    const std::size_t n = network.firm_count();
    if (partition.firm_count() != n)
        throw InputError("partition does not cover the network");
    const std::size_t regions = partition.region_count();
    for (RegionIndex c = 0; c < regions; ++c)
        if (partition.size(c) == 0)
            throw ComputationError("region '" + partition.label(c) + "' has no firms");

    const std::vector<double> sizes = options.sizes.empty() ? degree_sizes(network) : options.sizes;
    if (sizes.size() != n)
        throw InputError("size vector length does not match firm count");
    if (!options.default_weights.empty() && options.default_weights.size() != n)
        throw InputError("default weight vector length does not match firm count");
    const std::vector<double> totals = region_sizes(partition, sizes);
    check_positive(partition, totals);

    struct Partial {
        std::vector<double> sums;
        std::vector<double> numerator;
    };
    ExposureMatrix result(partition.regions(), MatrixKind::Expected);
    std::vector<double> sums(regions * regions, 0.0);

    BatchOptions batch;
    batch.workers = options.workers;
    batch.chunk_size = options.chunk_size;
    batch.cascade = options.cascade;
    run_cascade_batch(
        network, direction, {}, batch,
        [&] { return Partial{std::vector<double>(regions * regions, 0.0), std::vector<double>(regions, 0.0)}; },
        [&](Partial &partial, FirmIndex seed, const CascadeResult &row) {
            for (const auto &entry : row.distress)
                partial.numerator[partition.region_of(entry.firm)] += entry.distress * sizes[entry.firm];
            const double p = options.default_weights.empty() ? 1.0 : options.default_weights[seed];
            double *out = partial.sums.data() + partition.region_of(seed) * regions;
            for (std::size_t d = 0; d < regions; ++d) {
                out[d] += p * (partial.numerator[d] / totals[d]);
                partial.numerator[d] = 0.0;
            }
        },
        [&](Partial &&partial) {
            for (std::size_t k = 0; k < sums.size(); ++k)
                sums[k] += partial.sums[k];
        });

    for (std::size_t c = 0; c < regions; ++c) {
        const auto firms = static_cast<double>(partition.size(static_cast<RegionIndex>(c)));
        for (std::size_t d = 0; d < regions; ++d)
            result(c, d) = sums[c * regions + d] / firms;
    }
    return result;
}

ExposureMatrix exposed_value(const ExposureMatrix &expected, std::span<const double> affected_sizes) {
    if (expected.kind() != MatrixKind::Expected)
        throw InputError("exposed value needs an expected-exposure matrix, got " +
                         std::string(to_string(expected.kind())));
    if (affected_sizes.size() != expected.size())
        throw InputError("affected size vector length does not match matrix size");
    ExposureMatrix value(expected.labels(), MatrixKind::ExposedValue);
    for (std::size_t c = 0; c < expected.size(); ++c)
        for (std::size_t d = 0; d < expected.size(); ++d)
            value(c, d) = affected_sizes[d] * expected(c, d);
    return value;
}

std::vector<double> total_exposure(const ExposureMatrix &expected) {
    if (expected.kind() != MatrixKind::Expected)
        throw InputError("total exposure needs an expected-exposure matrix, got " +
                         std::string(to_string(expected.kind())));
    return expected.column_sums();
}

std::map<std::string, std::string> income_terciles(std::span<const std::string> regions,
                                                   const std::map<std::string, double> &gdp_per_capita,
                                                   RemainderPolicy policy) {
    std::vector<std::pair<double, std::string>> ranked;
    std::vector<std::string> missing;
    for (const auto &region : regions) {
        auto it = gdp_per_capita.find(region);
        if (it == gdp_per_capita.end())
            missing.push_back(region);
        else
            ranked.emplace_back(it->second, region);
    }
    if (!missing.empty()) {
        std::string names;
        for (const auto &m : missing)
            names += (names.empty() ? "" : ", ") + m;
        throw InputError("missing GDP per capita for region(s): " + names);
    }
    std::sort(ranked.begin(), ranked.end());

    const auto &labels = income_group_labels();
    const std::size_t base = ranked.size() / 3;
    const std::size_t extra = ranked.size() % 3;
    std::size_t bounds[3];
    for (std::size_t g = 0; g < 3; ++g) {
        const bool bonus = policy == RemainderPolicy::LowerGroups ? g < extra : g >= 3 - extra;
        bounds[g] = base + (bonus ? 1 : 0);
    }

    std::map<std::string, std::string> out;
    std::size_t pos = 0;
    for (std::size_t g = 0; g < 3; ++g)
        for (std::size_t k = 0; k < bounds[g]; ++k)
            out[ranked[pos++].second] = labels[g];
    return out;
}

Partition group_partition(const Partition &partition, const std::map<std::string, std::string> &region_to_group) {
    std::vector<std::string> labels(partition.firm_count());
    for (FirmIndex i = 0; i < partition.firm_count(); ++i) {
        auto it = region_to_group.find(partition.label_of(i));
        if (it == region_to_group.end())
            throw InputError("region '" + partition.label_of(i) + "' has no group assignment");
        labels[i] = it->second;
    }
    return Partition(labels);
}

ExposureMatrix group_exposure(const SupplyNetwork &network, const Partition &groups, Direction direction,
                              const ExposureOptions &options) {
    return region_region_exposure(network, groups, direction, options);
}

} // namespace supplyrisk
