#include "supplyrisk/graph.hpp"

#include <algorithm>
#include <unordered_map>

#include "supplyrisk/error.hpp"
#include "supplyrisk/matrix.hpp"

namespace supplyrisk {

namespace {

void build_csr(std::size_t n, const std::vector<std::pair<FirmIndex, FirmIndex>> &pairs,
               std::vector<std::size_t> &offsets, std::vector<FirmIndex> &targets,
               std::vector<std::uint32_t> &degree) {
    degree.assign(n, 0);
    for (const auto &[from, to] : pairs) {
        (void)to;
        ++degree[from];
    }
    offsets.assign(n + 1, 0);
    for (std::size_t i = 0; i < n; ++i)
        offsets[i + 1] = offsets[i] + degree[i];
    targets.resize(pairs.size());
    std::vector<std::size_t> cursor(offsets.begin(), offsets.end() - 1);
    // pairs are sorted by (from, to) so each list comes out sorted
    for (const auto &[from, to] : pairs)
        targets[cursor[from]++] = to;
}

struct Subnetwork {
    SupplyNetwork network;
    Partition partition;
};

Subnetwork induced(const SupplyNetwork &network, const Partition &partition, const std::vector<bool> &keep) {
    const std::size_t n = network.firm_count();
    std::vector<FirmIndex> remap(n, 0);
    std::vector<std::string> ids;
    std::vector<std::string> labels;
    for (FirmIndex i = 0; i < n; ++i) {
        if (!keep[i])
            continue;
        remap[i] = static_cast<FirmIndex>(ids.size());
        ids.push_back(network.firm_id(i));
        labels.push_back(partition.label_of(i));
    }
    if (ids.empty())
        throw ComputationError("empty network after preprocessing");

    std::vector<std::pair<FirmIndex, FirmIndex>> edges;
    for (FirmIndex i = 0; i < n; ++i) {
        if (!keep[i])
            continue;
        for (FirmIndex j : network.customers(i))
            if (keep[j])
                edges.emplace_back(remap[i], remap[j]);
    }
    return {SupplyNetwork(std::move(ids), std::move(edges)), Partition(labels)};
}

} // namespace

SupplyNetwork::SupplyNetwork(std::vector<std::string> firm_ids, std::vector<std::pair<FirmIndex, FirmIndex>> edges)
    : firm_ids_(std::move(firm_ids)) {
    const std::size_t n = firm_ids_.size();
    for (std::size_t i = 1; i < n; ++i)
        if (!(firm_ids_[i - 1] < firm_ids_[i]))
            throw InputError("firm ids must be unique and sorted; offending id '" + firm_ids_[i] + "'");

    for (const auto &[from, to] : edges) {
        if (from >= n || to >= n)
            throw InputError("edge references firm index out of range");
        if (from == to)
            throw InputError("self-loop on firm '" + firm_ids_[from] + "'");
    }
    std::sort(edges.begin(), edges.end());
    if (auto dup = std::adjacent_find(edges.begin(), edges.end()); dup != edges.end())
        throw InputError("duplicate edge " + firm_ids_[dup->first] + " -> " + firm_ids_[dup->second]);

    build_csr(n, edges, out_offsets_, out_targets_, out_degree_);
    for (auto &e : edges)
        std::swap(e.first, e.second);
    std::sort(edges.begin(), edges.end());
    build_csr(n, edges, in_offsets_, in_sources_, in_degree_);

    for (std::size_t i = 0; i < n; ++i)
        if (in_degree_[i] + out_degree_[i] == 0)
            throw InputError("isolated firm '" + firm_ids_[i] + "'");
}

std::optional<FirmIndex> SupplyNetwork::find(std::string_view id) const {
    auto it = std::lower_bound(firm_ids_.begin(), firm_ids_.end(), id);
    if (it == firm_ids_.end() || *it != id)
        return std::nullopt;
    return static_cast<FirmIndex>(it - firm_ids_.begin());
}

std::vector<std::pair<FirmIndex, FirmIndex>> SupplyNetwork::edges() const {
    std::vector<std::pair<FirmIndex, FirmIndex>> out;
    out.reserve(edge_count());
    for (FirmIndex i = 0; i < firm_count(); ++i)
        for (FirmIndex j : customers(i))
            out.emplace_back(i, j);
    return out;
}

Partition::Partition(std::span<const std::string> labels) {
    regions_.assign(labels.begin(), labels.end());
    std::sort(regions_.begin(), regions_.end());
    regions_.erase(std::unique(regions_.begin(), regions_.end()), regions_.end());

    members_.resize(regions_.size());
    region_of_.resize(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) {
        auto r = static_cast<RegionIndex>(std::lower_bound(regions_.begin(), regions_.end(), labels[i]) -
                                          regions_.begin());
        region_of_[i] = r;
        members_[r].push_back(static_cast<FirmIndex>(i));
    }
}

std::optional<RegionIndex> Partition::find(std::string_view label) const {
    auto it = std::lower_bound(regions_.begin(), regions_.end(), label);
    if (it == regions_.end() || *it != label)
        return std::nullopt;
    return static_cast<RegionIndex>(it - regions_.begin());
}

std::vector<std::string> Partition::labels() const {
    std::vector<std::string> out(region_of_.size());
    for (std::size_t i = 0; i < region_of_.size(); ++i)
        out[i] = regions_[region_of_[i]];
    return out;
}

BuiltNetwork build_network(std::span<const EdgeRecord> edges, std::span<const FirmRecord> firms) {
    if (edges.empty())
        throw InputError("empty edge list");

    std::unordered_map<std::string_view, const FirmRecord *> table;
    table.reserve(firms.size());
    for (const auto &firm : firms)
        if (!table.emplace(firm.firm_id, &firm).second)
            throw InputError("duplicate firm id '" + firm.firm_id + "'");

    BuildReport report;
    std::vector<std::pair<const FirmRecord *, const FirmRecord *>> linked;
    linked.reserve(edges.size());
    for (const auto &edge : edges) {
        auto s = table.find(edge.supplier);
        if (s == table.end())
            throw InputError("edge references unknown firm id '" + edge.supplier + "'");
        auto c = table.find(edge.customer);
        if (c == table.end())
            throw InputError("edge references unknown firm id '" + edge.customer + "'");
        if (s->second == c->second) {
            ++report.self_loops_dropped;
            continue;
        }
        linked.emplace_back(s->second, c->second);
    }
    if (linked.empty())
        throw ComputationError("no edges left after dropping self-loops");

    std::vector<std::string_view> ids;
    ids.reserve(2 * linked.size());
    for (const auto &[s, c] : linked) {
        ids.push_back(s->firm_id);
        ids.push_back(c->firm_id);
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    report.isolated_dropped = firms.size() - ids.size();

    std::unordered_map<std::string_view, FirmIndex> index;
    index.reserve(ids.size());
    for (std::size_t i = 0; i < ids.size(); ++i)
        index.emplace(ids[i], static_cast<FirmIndex>(i));

    std::vector<std::pair<FirmIndex, FirmIndex>> pairs;
    pairs.reserve(linked.size());
    for (const auto &[s, c] : linked)
        pairs.emplace_back(index.at(s->firm_id), index.at(c->firm_id));
    std::sort(pairs.begin(), pairs.end());
    const auto unique_end = std::unique(pairs.begin(), pairs.end());
    report.duplicates_dropped = static_cast<std::size_t>(pairs.end() - unique_end);
    pairs.erase(unique_end, pairs.end());

    std::vector<std::string> firm_ids;
    std::vector<std::string> labels;
    firm_ids.reserve(ids.size());
    labels.reserve(ids.size());
    for (auto id : ids) {
        firm_ids.emplace_back(id);
        labels.push_back(table.at(id)->region);
    }
    return {SupplyNetwork(std::move(firm_ids), std::move(pairs)), Partition(labels), report};
}

PreprocessedNetwork preprocess(const SupplyNetwork &network, const Partition &partition,
                               const PreprocessConfig &config) {
    const std::size_t n = network.firm_count();
    if (partition.firm_count() != n)
        throw InputError("partition does not cover the network");

    PreprocessReport report;
    std::vector<bool> keep(n, true);
    std::vector<bool> region_removed(partition.region_count(), false);

    for (RegionIndex r = 0; r < partition.region_count(); ++r) {
        if (!config.excluded_regions.contains(partition.label(r)))
            continue;
        region_removed[r] = true;
        report.removed_regions.push_back(partition.label(r));
        for (FirmIndex i : partition.members(r)) {
            keep[i] = false;
            ++report.excluded_region_firms;
        }
    }

    // Alternate the region-size filter and the isolation sweep until neither
    // removes anything, so the result has no isolated firm and no small region.
    std::vector<std::size_t> count(partition.region_count());
    std::vector<std::uint32_t> degree(n);
    for (bool changed = true; changed;) {
        changed = false;
        ++report.passes;

        std::fill(count.begin(), count.end(), 0);
        for (FirmIndex i = 0; i < n; ++i)
            if (keep[i])
                ++count[partition.region_of(i)];
        for (RegionIndex r = 0; r < partition.region_count(); ++r) {
            if (count[r] == 0 || count[r] > config.min_firms)
                continue;
            if (!region_removed[r]) {
                region_removed[r] = true;
                report.removed_regions.push_back(partition.label(r));
            }
            for (FirmIndex i : partition.members(r)) {
                if (keep[i]) {
                    keep[i] = false;
                    ++report.small_region_firms;
                    changed = true;
                }
            }
        }

        std::fill(degree.begin(), degree.end(), 0);
        for (FirmIndex i = 0; i < n; ++i) {
            if (!keep[i])
                continue;
            for (FirmIndex j : network.customers(i)) {
                if (keep[j]) {
                    ++degree[i];
                    ++degree[j];
                }
            }
        }
        for (FirmIndex i = 0; i < n; ++i) {
            if (keep[i] && degree[i] == 0) {
                keep[i] = false;
                ++report.isolated_firms;
                changed = true;
            }
        }
    }
    std::sort(report.removed_regions.begin(), report.removed_regions.end());

    auto sub = induced(network, partition, keep);
    return {std::move(sub.network), std::move(sub.partition), std::move(report)};
}

SupplyNetwork reverse(const SupplyNetwork &network) {
    SupplyNetwork out = network;
    std::swap(out.out_offsets_, out.in_offsets_);
    std::swap(out.out_targets_, out.in_sources_);
    std::swap(out.out_degree_, out.in_degree_);
    return out;
}

ExposureMatrix link_count_matrix(const SupplyNetwork &network, const Partition &partition) {
    ExposureMatrix counts(partition.regions(), MatrixKind::LinkCount);
    for (FirmIndex i = 0; i < network.firm_count(); ++i) {
        const RegionIndex c = partition.region_of(i);
        for (FirmIndex j : network.customers(i))
            counts(c, partition.region_of(j)) += 1.0;
    }
    return counts;
}

ExposureMatrix mean_outlinks(const SupplyNetwork &network, const Partition &partition) {
    const ExposureMatrix counts = link_count_matrix(network, partition);
    ExposureMatrix mean(partition.regions(), MatrixKind::MeanOutlinks);
    for (std::size_t c = 0; c < counts.size(); ++c) {
        const auto firms = static_cast<double>(partition.size(static_cast<RegionIndex>(c)));
        for (std::size_t d = 0; d < counts.size(); ++d)
            mean(c, d) = counts(c, d) / firms;
    }
    return mean;
}

std::vector<RegionDegrees> region_degree_aggregates(const SupplyNetwork &network, const Partition &partition) {
    std::vector<RegionDegrees> out(partition.region_count());
    for (FirmIndex i = 0; i < network.firm_count(); ++i) {
        const RegionIndex c = partition.region_of(i);
        out[c].total_degree += network.degree(i);
        for (FirmIndex j : network.customers(i)) {
            const RegionIndex d = partition.region_of(j);
            if (c != d) {
                ++out[c].export_links;
                ++out[d].import_links;
            }
        }
    }
    return out;
}

std::vector<double> region_total_degrees(const SupplyNetwork &network, const Partition &partition) {
    std::vector<double> k(partition.region_count(), 0.0);
    for (FirmIndex i = 0; i < network.firm_count(); ++i)
        k[partition.region_of(i)] += network.degree(i);
    return k;
}

} // namespace supplyrisk
