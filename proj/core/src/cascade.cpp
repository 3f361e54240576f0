#include "supplyrisk/cascade.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "supplyrisk/error.hpp"

namespace supplyrisk {

std::string_view to_string(Direction direction) {
    return direction == Direction::Downstream ? "down" : "up";
}

Direction direction_from_string(std::string_view name) {
    if (name == "down" || name == "downstream")
        return Direction::Downstream;
    if (name == "up" || name == "upstream")
        return Direction::Upstream;
    throw InputError("unknown direction '" + std::string(name) + "'");
}

AdjacencyView propagation_view(const SupplyNetwork &network, Direction direction) {
    return direction == Direction::Downstream ? network.downstream() : network.upstream();
}

double CascadeResult::distress_of(FirmIndex firm) const {
    for (const auto &entry : distress)
        if (entry.firm == firm)
            return entry.distress;
    return 0.0;
}

std::vector<DistressEntry> CascadeResult::sorted() const {
    auto out = distress;
    std::sort(out.begin(), out.end(), [](const auto &a, const auto &b) { return a.firm < b.firm; });
    return out;
}

CascadeEngine::CascadeEngine(const SupplyNetwork &network, Direction direction, CascadeOptions options)
    : view_(propagation_view(network, direction)), options_(options) {
    const std::size_t n = view_.firm_count();
    nodes_.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        nodes_[i].weight = view_.receiver_degree[i] > 0 ? 1.0 / view_.receiver_degree[i] : 0.0;
}

void CascadeEngine::run(std::span<const FirmIndex> seeds, CascadeResult &out, const StepObserver *observer) {
    const std::size_t n = view_.firm_count();
    if (seeds.empty())
        throw InputError("cascade needs at least one seed firm");
    for (FirmIndex s : seeds)
        if (s >= n)
            throw InputError("seed index " + std::to_string(s) + " out of range for " + std::to_string(n) + " firms");

    out.distress.clear();
    out.seeds.assign(seeds.begin(), seeds.end());
    std::sort(out.seeds.begin(), out.seeds.end());
    out.seeds.erase(std::unique(out.seeds.begin(), out.seeds.end()), out.seeds.end());

    frontier_.clear();
    for (FirmIndex s : out.seeds) {
        nodes_[s].distress = 1.0;
        nodes_[s].state = State::Reached;
        frontier_.push_back({s, 1.0});
        out.distress.push_back({s, 0.0});
    }

    Node *nodes = nodes_.data();
    std::uint32_t step = 0;
    while (!frontier_.empty()) {
        ++step;
        reached_.clear();
        for (const Sender &sender : frontier_) {
            for (FirmIndex i : view_.neighbours(sender.firm)) {
                Node &node = nodes[i];
                node.distress += sender.amount * node.weight;
                if (node.state == State::Active) {
                    node.state = State::Pending;
                    reached_.push_back(i);
                }
            }
        }

        next_.clear();
        for (FirmIndex i : reached_) {
            Node &node = nodes[i];
            if (!(node.distress > 0.0) || node.distress < options_.min_distress) {
                node.distress = 0.0;
                node.state = State::Active;
                continue;
            }
            node.state = State::Reached;
            next_.push_back({i, std::min(1.0, node.distress)});
            out.distress.push_back({i, 0.0});
        }
        std::swap(frontier_, next_);
        if (observer != nullptr) {
            observed_.assign(n, 0.0);
            for (const auto &entry : out.distress)
                observed_[entry.firm] = std::min(1.0, nodes[entry.firm].distress);
            (*observer)(step, observed_);
        }
    }
    out.steps = step;

    for (auto &entry : out.distress) {
        Node &node = nodes[entry.firm];
        entry.distress = std::min(1.0, node.distress);
        node.distress = 0.0;
        node.state = State::Active;
    }
}

CascadeResult CascadeEngine::run(std::span<const FirmIndex> seeds) {
    CascadeResult out;
    run(seeds, out);
    return out;
}

CascadeResult propagate(const SupplyNetwork &network, std::span<const FirmIndex> seeds, Direction direction,
                        CascadeOptions options) {
    CascadeEngine engine(network, direction, options);
    return engine.run(seeds);
}

std::vector<double> degree_sizes(const SupplyNetwork &network) {
    std::vector<double> q(network.firm_count());
    for (FirmIndex i = 0; i < network.firm_count(); ++i)
        q[i] = network.degree(i);
    return q;
}

double debt_rank(const CascadeResult &row, std::span<const double> sizes) {
    const double total = std::accumulate(sizes.begin(), sizes.end(), 0.0);
    if (!(total > 0.0))
        throw ComputationError("node sizes must have a positive sum");
    double lost = 0.0;
    for (const auto &entry : row.distress)
        lost += entry.distress * sizes[entry.firm];
    return lost / total;
}

double debt_rank(const SupplyNetwork &network, FirmIndex seed, Direction direction, std::span<const double> sizes) {
    const FirmIndex seeds[] = {seed};
    const CascadeResult row = propagate(network, seeds, direction);
    if (sizes.empty())
        return debt_rank(row, degree_sizes(network));
    if (sizes.size() != network.firm_count())
        throw InputError("size vector length does not match firm count");
    return debt_rank(row, sizes);
}

void exposure_rows(const SupplyNetwork &network, Direction direction, const RowVisitor &visit,
                   std::span<const FirmIndex> seeds, CascadeOptions options) {
    CascadeEngine engine(network, direction, options);
    CascadeResult row;
    auto one = [&](FirmIndex seed) {
        const FirmIndex single[] = {seed};
        engine.run(single, row);
        visit(seed, row);
    };
    if (seeds.empty()) {
        for (FirmIndex i = 0; i < network.firm_count(); ++i)
            one(i);
    } else {
        for (FirmIndex i : seeds)
            one(i);
    }
}

std::vector<FirmIndex> seeds_in_region(const Partition &partition, RegionIndex region) {
    auto members = partition.members(region);
    return {members.begin(), members.end()};
}

} // namespace supplyrisk
