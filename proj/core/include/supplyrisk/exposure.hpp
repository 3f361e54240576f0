#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "supplyrisk/cascade.hpp"
#include "supplyrisk/graph.hpp"
#include "supplyrisk/matrix.hpp"

namespace supplyrisk {

struct ExposureOptions {
    unsigned workers = 1;
    std::size_t chunk_size = 64;
    // Per-firm weight p_i of a firm failure; empty means p_i = 1, which makes
    // E^cd the plain mean of E_i^d over the firms of c.
    std::vector<double> default_weights;
    // Per-firm size q_i; empty means q_i = k_i.
    std::vector<double> sizes;
    CascadeOptions cascade;
};

// q^c = sum of q_i over the firms of each region.
std::vector<double> region_sizes(const Partition &partition, std::span<const double> sizes);

// E_i^c for every region c: the size-weighted share of c lost after the
// cascade in row. The seed counts in both numerator and denominator of its own
// region.
std::vector<double> firm_region_exposure(const CascadeResult &row, const Partition &partition,
                                         std::span<const double> sizes);

// E^cd = sum_{i in c} p_i E_i^d / |c|. Rows are streamed from a parallel
// cascade batch and never stored.
ExposureMatrix region_region_exposure(const SupplyNetwork &network, const Partition &partition, Direction direction,
                                      const ExposureOptions &options = {});

// V^cd = k^d E^cd, with affected_sizes[d] = k^d.
ExposureMatrix exposed_value(const ExposureMatrix &expected, std::span<const double> affected_sizes);

// E^d = sum_c E^cd, column sums including the diagonal.
std::vector<double> total_exposure(const ExposureMatrix &expected);

struct ExposureProfile {
    std::vector<std::string> labels;
    std::optional<std::vector<double>> downstream;
    std::optional<std::vector<double>> upstream;
};

enum class RemainderPolicy {
    LowerGroups,  // 7 regions -> 3/2/2
    UpperGroups,  // 7 regions -> 2/2/3
};

inline const std::vector<std::string> &income_group_labels() {
    static const std::vector<std::string> labels{"1_low", "2_middle", "3_high"};
    return labels;
}

// Splits regions into three groups of (nearly) equal region count by ascending
// GDP per capita. Ties are broken by label. Throws InputError naming any region
// without a value.
std::map<std::string, std::string> income_terciles(std::span<const std::string> regions,
                                                   const std::map<std::string, double> &gdp_per_capita,
                                                   RemainderPolicy policy = RemainderPolicy::LowerGroups);

// Coarsens a firm partition by mapping each region label to a group label.
Partition group_partition(const Partition &partition, const std::map<std::string, std::string> &region_to_group);

// E^gh: region_region_exposure with groups playing the role of regions.
ExposureMatrix group_exposure(const SupplyNetwork &network, const Partition &groups, Direction direction,
                              const ExposureOptions &options = {});

} // namespace supplyrisk
