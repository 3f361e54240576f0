#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "pipeline.hpp"
#include "supplyrisk/io.hpp"
#include "supplyrisk/synth.hpp"

namespace supplyrisk::cli {

// E, V, A and mean-outlink matrices plus the E^d profile for every requested
// direction, and a run.json manifest.
OutputSet exposure_outputs(const RunConfig &config, const LoadedNetwork &loaded);
void cmd_exposure(const RunConfig &config);

Report inequality_report(const RunConfig &config, const LoadedNetwork &loaded, const MacroTable &macro);
void cmd_inequality(const RunConfig &config);

struct GenerateOptions {
    std::filesystem::path out;
    bool toy = false;
    // Block model: explicit regions ("A:100,B:40") ...
    std::string regions;
    double intra_probability = 0.0;
    double inter_probability = 0.0;
    // ... or a scale fixture when regions is empty.
    std::size_t firms = 1000;
    std::size_t region_count = 10;
    double mean_degree = 5.7;
    double intra_share = 0.5;
    std::uint64_t seed = 0;
};

SyntheticData generated_data(const GenerateOptions &options);
void cmd_generate(const GenerateOptions &options);

std::string cascade_json(const RunConfig &config, const LoadedNetwork &loaded, const std::string &seed_firm);
// Prints to out when config.out is empty, otherwise writes <out>/cascade.json.
void cmd_cascade(const RunConfig &config, const std::string &seed_firm, std::ostream &out);

// Full command line entry point. Returns the process exit code:
// 0 success, 1 computation error, 2 usage or input error.
int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

} // namespace supplyrisk::cli
