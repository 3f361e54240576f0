#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace supplyrisk {

class ExposureMatrix;

using FirmIndex = std::uint32_t;
using RegionIndex = std::uint32_t;

// One row of an edge list: goods flow from supplier to customer.
struct EdgeRecord {
    std::string supplier;
    std::string customer;

    friend bool operator==(const EdgeRecord &, const EdgeRecord &) = default;
};

struct FirmRecord {
    std::string firm_id;
    std::string region;
    std::string sector;

    friend bool operator==(const FirmRecord &, const FirmRecord &) = default;
};

// Read-only CSR view of one propagation direction. neighbours(j) are the firms
// that receive distress from j; receiver_degree[i] counts the firms i receives from.
struct AdjacencyView {
    std::span<const std::size_t> offsets;
    std::span<const FirmIndex> targets;
    std::span<const std::uint32_t> receiver_degree;

    std::size_t firm_count() const noexcept { return receiver_degree.size(); }
    std::span<const FirmIndex> neighbours(FirmIndex j) const {
        return targets.subspan(offsets[j], offsets[j + 1] - offsets[j]);
    }
};

/**
 * Immutable directed supply network. Edges point from supplier to customer.
 *
 * Firms are indexed 0..N-1 in ascending order of their string ids. Both the
 * outgoing (customer) and incoming (supplier) adjacency lists are stored in CSR
 * form with sorted neighbour lists, so the network is cheap to reverse and safe
 * to share across threads.
 *
 * Invariants: no self-loops, no parallel edges, every firm has degree >= 1.
 */
class SupplyNetwork {
public:
    SupplyNetwork() = default;

    // ids must be strictly increasing; edges are (supplier, customer) index
    // pairs. Throws InputError when an invariant is violated.
    SupplyNetwork(std::vector<std::string> firm_ids, std::vector<std::pair<FirmIndex, FirmIndex>> edges);

    std::size_t firm_count() const noexcept { return firm_ids_.size(); }
    std::size_t edge_count() const noexcept { return out_targets_.size(); }

    const std::vector<std::string> &firm_ids() const noexcept { return firm_ids_; }
    const std::string &firm_id(FirmIndex i) const { return firm_ids_.at(i); }
    std::optional<FirmIndex> find(std::string_view id) const;

    std::span<const FirmIndex> customers(FirmIndex i) const {
        return {out_targets_.data() + out_offsets_[i], out_offsets_[i + 1] - out_offsets_[i]};
    }
    std::span<const FirmIndex> suppliers(FirmIndex i) const {
        return {in_sources_.data() + in_offsets_[i], in_offsets_[i + 1] - in_offsets_[i]};
    }

    std::uint32_t in_degree(FirmIndex i) const { return in_degree_[i]; }
    std::uint32_t out_degree(FirmIndex i) const { return out_degree_[i]; }
    std::uint32_t degree(FirmIndex i) const { return in_degree_[i] + out_degree_[i]; }

    // Distress travels along edges (supplier -> customer).
    AdjacencyView downstream() const noexcept { return {out_offsets_, out_targets_, in_degree_}; }
    // Distress travels against edges (customer -> supplier).
    AdjacencyView upstream() const noexcept { return {in_offsets_, in_sources_, out_degree_}; }

    // All edges as (supplier, customer) pairs, sorted.
    std::vector<std::pair<FirmIndex, FirmIndex>> edges() const;

    friend bool operator==(const SupplyNetwork &, const SupplyNetwork &) = default;

private:
    friend SupplyNetwork reverse(const SupplyNetwork &);

    std::vector<std::string> firm_ids_;
    std::vector<std::size_t> out_offsets_{0};
    std::vector<FirmIndex> out_targets_;
    std::vector<std::size_t> in_offsets_{0};
    std::vector<FirmIndex> in_sources_;
    std::vector<std::uint32_t> in_degree_;
    std::vector<std::uint32_t> out_degree_;
};

/**
 * Assignment of every firm to exactly one region. Regions are ordered
 * lexicographically by label; members of a region are listed in ascending
 * firm index.
 */
class Partition {
public:
    Partition() = default;

    // labels[i] is the region of firm i.
    explicit Partition(std::span<const std::string> labels);

    std::size_t firm_count() const noexcept { return region_of_.size(); }
    std::size_t region_count() const noexcept { return regions_.size(); }

    const std::vector<std::string> &regions() const noexcept { return regions_; }
    const std::string &label(RegionIndex r) const { return regions_.at(r); }
    std::optional<RegionIndex> find(std::string_view label) const;

    RegionIndex region_of(FirmIndex i) const { return region_of_[i]; }
    const std::string &label_of(FirmIndex i) const { return regions_[region_of_[i]]; }
    std::span<const FirmIndex> members(RegionIndex r) const { return members_.at(r); }
    std::size_t size(RegionIndex r) const { return members_.at(r).size(); }

    // Per-firm labels, the inverse of the constructor.
    std::vector<std::string> labels() const;

    friend bool operator==(const Partition &, const Partition &) = default;

private:
    std::vector<RegionIndex> region_of_;
    std::vector<std::string> regions_;
    std::vector<std::vector<FirmIndex>> members_;
};

struct BuildReport {
    std::size_t self_loops_dropped = 0;
    std::size_t duplicates_dropped = 0;
    std::size_t isolated_dropped = 0;
};

struct BuiltNetwork {
    SupplyNetwork network;
    Partition partition;
    BuildReport report;
};

// Builds the network from raw records. Self-loops and duplicate edges are
// dropped and counted; firms without any edge are dropped. Index assignment
// depends only on the sorted firm ids, never on row order.
BuiltNetwork build_network(std::span<const EdgeRecord> edges, std::span<const FirmRecord> firms);

struct PreprocessConfig {
    // Regions must hold strictly more than this many firms to survive.
    std::size_t min_firms = 30;
    std::set<std::string> excluded_regions;
};

struct PreprocessReport {
    std::size_t excluded_region_firms = 0;
    std::size_t small_region_firms = 0;
    std::size_t isolated_firms = 0;
    // Rounds of (region filter, isolation sweep) until nothing changed.
    std::size_t passes = 0;
    std::vector<std::string> removed_regions;
};

struct PreprocessedNetwork {
    SupplyNetwork network;
    Partition partition;
    PreprocessReport report;
};

PreprocessedNetwork preprocess(const SupplyNetwork &network, const Partition &partition,
                               const PreprocessConfig &config);

SupplyNetwork reverse(const SupplyNetwork &network);

// Number of edges from firms in region c to firms in region d.
ExposureMatrix link_count_matrix(const SupplyNetwork &network, const Partition &partition);

// A^cd / N^c: mean number of out-links from a firm in c into d.
ExposureMatrix mean_outlinks(const SupplyNetwork &network, const Partition &partition);

struct RegionDegrees {
    std::uint64_t total_degree = 0;  // k^c
    std::uint64_t export_links = 0;  // edges leaving c for another region
    std::uint64_t import_links = 0;  // edges entering c from another region
};

std::vector<RegionDegrees> region_degree_aggregates(const SupplyNetwork &network, const Partition &partition);

// k^c for every region, in partition order.
std::vector<double> region_total_degrees(const SupplyNetwork &network, const Partition &partition);

} // namespace supplyrisk
