#pragma once

#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "supplyrisk/cascade.hpp"
#include "supplyrisk/graph.hpp"
#include "supplyrisk/io.hpp"

namespace supplyrisk::cli {

// Offshore jurisdictions dropped by default (World Bank codes for Barbados,
// Bermuda, British Virgin Islands, Channel Islands, Gibraltar, Monaco and the
// Cayman Islands).
const std::set<std::string> &default_excluded_regions();

struct RunConfig {
    std::filesystem::path edges;
    std::filesystem::path firms;
    std::filesystem::path macro;
    std::string direction = "down";  // down | up | both
    std::size_t min_firms = 30;
    std::set<std::string> exclude = default_excluded_regions();
    unsigned workers = 1;
    std::filesystem::path out;
    std::string format = "csv";

    // Throws InputError before any computation.
    void validate(bool needs_macro, bool needs_out) const;
    std::vector<Direction> directions() const;

    // Settings that determine the results, echoed into every report. Worker
    // count and output directory are left out so that reports stay
    // byte-identical across machines and thread counts.
    std::vector<std::pair<std::string, std::string>> echo() const;
};

struct LoadedNetwork {
    SupplyNetwork network;
    Partition partition;
    BuildReport build;
    PreprocessReport preprocess;
    std::vector<InputDigest> inputs;
};

std::string sha256_file(const std::filesystem::path &path);

LoadedNetwork load_network(const RunConfig &config);

// A set of output files that are written together or not at all.
class OutputSet {
public:
    void add(std::string name, std::string content);
    // Writes every file into a staging directory under dir, then renames them
    // into dir. On failure nothing new is left in dir.
    void commit(const std::filesystem::path &dir) const;
    const std::vector<std::pair<std::string, std::string>> &files() const noexcept { return files_; }

private:
    std::vector<std::pair<std::string, std::string>> files_;
};

} // namespace supplyrisk::cli
