#pragma once

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "supplyrisk/graph.hpp"

namespace testutil {

inline supplyrisk::BuiltNetwork make(std::initializer_list<std::pair<const char *, const char *>> edges,
                                     std::initializer_list<std::pair<const char *, const char *>> firms) {
    std::vector<supplyrisk::EdgeRecord> e;
    for (const auto &[s, c] : edges)
        e.push_back({s, c});
    std::vector<supplyrisk::FirmRecord> f;
    for (const auto &[id, region] : firms)
        f.push_back({id, region, ""});
    return supplyrisk::build_network(e, f);
}

inline supplyrisk::FirmIndex idx(const supplyrisk::SupplyNetwork &network, const char *id) {
    return *network.find(id);
}

// Fresh empty directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string &name) {
    const auto dir = std::filesystem::temp_directory_path() / ("supplyrisk-test-" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

inline void write_file(const std::filesystem::path &path, const std::string &text) {
    std::ofstream(path, std::ios::binary) << text;
}

inline std::string read_file(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

} // namespace testutil
