#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "supplyrisk/graph.hpp"

namespace supplyrisk {

// Downstream: a failed supplier starves its customers (along edges).
// Upstream: a failed customer stops buying from its suppliers (against edges).
// Upstream on G is by definition Downstream on reverse(G).
enum class Direction { Downstream, Upstream };

std::string_view to_string(Direction direction);
Direction direction_from_string(std::string_view name);

AdjacencyView propagation_view(const SupplyNetwork &network, Direction direction);

struct DistressEntry {
    FirmIndex firm;
    double distress;

    friend bool operator==(const DistressEntry &, const DistressEntry &) = default;
};

// Final distress h_i(T) of one cascade, i.e. one row of the distress matrix.
// Only firms with positive distress are listed, in discovery order (seeds
// first, then in the order the cascade reached them).
struct CascadeResult {
    std::vector<DistressEntry> distress;
    std::uint32_t steps = 0;
    std::vector<FirmIndex> seeds;

    double distress_of(FirmIndex firm) const;
    std::vector<DistressEntry> sorted() const;
};

struct CascadeOptions {
    // Distress strictly below this value is treated as zero and never
    // propagates. 0 keeps the exact dynamics.
    double min_distress = 0.0;
};

/**
 * Synchronous distress cascade on a fixed network and direction.
 *
 * Every firm is Active, Distressed or Inactive. Seeds start Distressed with
 * h = 1. In each step every Distressed firm j passes h_j(t-1) / k_i^in to each
 * of its receivers i, all firms update at once with h capped at 1, Active firms
 * with h > 0 become Distressed and Distressed firms become Inactive. Inactive
 * firms still accumulate distress but never pass it on. The cascade stops once
 * no firm is Distressed; steps is the number of updates performed.
 *
 * Capping commutes with adding non-negative amounts, so the engine keeps raw
 * sums and caps on read. Only the Distressed frontier is scanned per step.
 * The engine owns O(N) scratch state that is reset after each run, so one
 * engine per thread can be reused across many seeds.
 */
class CascadeEngine {
public:
    // Called after every synchronous update with the full distress vector.
    using StepObserver = std::function<void(std::uint32_t step, std::span<const double> distress)>;

    CascadeEngine(const SupplyNetwork &network, Direction direction, CascadeOptions options = {});

    void run(std::span<const FirmIndex> seeds, CascadeResult &out, const StepObserver *observer = nullptr);
    CascadeResult run(std::span<const FirmIndex> seeds);

    std::size_t firm_count() const noexcept { return view_.firm_count(); }

private:
    // Distressed and Inactive firms behave the same when receiving, so the
    // engine only tracks whether a firm has been reached.
    enum class State : std::uint8_t { Active, Pending, Reached };

    // Hot per-firm data kept together so one edge visit touches one record.
    struct Node {
        double distress = 0.0;  // uncapped running sum; min(1, .) is the value
        double weight = 0.0;    // 1 / receiver degree
        State state = State::Active;
    };

    AdjacencyView view_;
    CascadeOptions options_;
    std::vector<Node> nodes_;
    struct Sender {
        FirmIndex firm;
        double amount;  // h at the step the firm became Distressed
    };

    std::vector<Sender> frontier_;
    std::vector<Sender> next_;
    std::vector<FirmIndex> reached_;
    std::vector<double> observed_;
};

// Single cascade from a seed set. Throws InputError on an empty seed set or an
// out-of-range index.
CascadeResult propagate(const SupplyNetwork &network, std::span<const FirmIndex> seeds, Direction direction,
                        CascadeOptions options = {});

// q_i = k_i for every firm.
std::vector<double> degree_sizes(const SupplyNetwork &network);

// DebtRank of one seed: sum_j h_j(T) q_j / sum_j q_j, the seed included.
// Empty sizes means q = degree_sizes(network).
double debt_rank(const SupplyNetwork &network, FirmIndex seed, Direction direction,
                 std::span<const double> sizes = {});

double debt_rank(const CascadeResult &row, std::span<const double> sizes);

using RowVisitor = std::function<void(FirmIndex seed, const CascadeResult &row)>;

// Runs one single-seed cascade per firm in seeds (all firms when empty) and
// hands each row to visit, in seed order. Rows are never stored.
void exposure_rows(const SupplyNetwork &network, Direction direction, const RowVisitor &visit,
                   std::span<const FirmIndex> seeds = {}, CascadeOptions options = {});

// Firms in region r, in index order; a seed filter for exposure_rows.
std::vector<FirmIndex> seeds_in_region(const Partition &partition, RegionIndex region);

} // namespace supplyrisk
