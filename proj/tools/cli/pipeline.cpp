#include "pipeline.hpp"

#include <array>
#include <fstream>
#include <unistd.h>

#include <openssl/evp.h>

#include "supplyrisk/error.hpp"

namespace supplyrisk::cli {

const std::set<std::string> &default_excluded_regions() {
    static const std::set<std::string> regions{"BMU", "BRB", "CHI", "CYM", "GIB", "MCO", "VGB"};
    return regions;
}

void RunConfig::validate(bool needs_macro, bool needs_out) const {
    if (edges.empty() || firms.empty())
        throw InputError("--edges and --firms are required");
    if (needs_macro && macro.empty())
        throw InputError("--macro is required for this command");
    if (needs_out && out.empty())
        throw InputError("--out is required for this command");
    if (direction != "down" && direction != "up" && direction != "both")
        throw InputError("--direction must be down, up or both");
    if (workers == 0)
        throw InputError("--workers must be at least 1");
    (void)matrix_format_from_string(format);
    for (const auto &path : {edges, firms})
        if (!std::filesystem::is_regular_file(path))
            throw InputError("input file '" + path.string() + "' does not exist");
    if (needs_macro && !std::filesystem::is_regular_file(macro))
        throw InputError("input file '" + macro.string() + "' does not exist");
}

std::vector<Direction> RunConfig::directions() const {
    if (direction == "down")
        return {Direction::Downstream};
    if (direction == "up")
        return {Direction::Upstream};
    return {Direction::Downstream, Direction::Upstream};
}

std::vector<std::pair<std::string, std::string>> RunConfig::echo() const {
    std::string excluded;
    for (const auto &region : exclude)
        excluded += (excluded.empty() ? "" : ",") + region;
    std::vector<std::pair<std::string, std::string>> out{
        {"edges", edges.string()},
        {"firms", firms.string()},
    };
    if (!macro.empty())
        out.emplace_back("macro", macro.string());
    out.emplace_back("direction", direction);
    out.emplace_back("min_firms", std::to_string(min_firms));
    out.emplace_back("exclude", excluded);
    out.emplace_back("format", format);
    return out;
}

std::string sha256_file(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw InputError("cannot open '" + path.string() + "' for hashing");
    EVP_MD_CTX *ctx = EVP_MD_CTX_new();
    if (ctx == nullptr || EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) != 1) {
        EVP_MD_CTX_free(ctx);
        throw ComputationError("SHA-256 unavailable");
    }
    std::array<char, 1 << 16> buffer{};
    while (in) {
        in.read(buffer.data(), buffer.size());
        if (in.gcount() > 0)
            EVP_DigestUpdate(ctx, buffer.data(), static_cast<std::size_t>(in.gcount()));
    }
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int length = 0;
    EVP_DigestFinal_ex(ctx, digest, &length);
    EVP_MD_CTX_free(ctx);

    static constexpr char hex[] = "0123456789abcdef";
    std::string text;
    for (unsigned int k = 0; k < length; ++k) {
        text += hex[digest[k] >> 4];
        text += hex[digest[k] & 0xF];
    }
    return text;
}

LoadedNetwork load_network(const RunConfig &config) {
    const auto edges = read_edges(config.edges);
    const auto firms = read_firms(config.firms);
    auto built = build_network(edges, firms);

    PreprocessConfig pre;
    pre.min_firms = config.min_firms;
    pre.excluded_regions = config.exclude;
    auto cleaned = preprocess(built.network, built.partition, pre);

    LoadedNetwork loaded{std::move(cleaned.network), std::move(cleaned.partition), built.report,
                         std::move(cleaned.report), {}};
    loaded.inputs.push_back({"edges", config.edges.string(), sha256_file(config.edges)});
    loaded.inputs.push_back({"firms", config.firms.string(), sha256_file(config.firms)});
    if (!config.macro.empty())
        loaded.inputs.push_back({"macro", config.macro.string(), sha256_file(config.macro)});
    return loaded;
}

void OutputSet::add(std::string name, std::string content) { files_.emplace_back(std::move(name), std::move(content)); }

void OutputSet::commit(const std::filesystem::path &dir) const {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec)
        throw InputError("cannot create output directory '" + dir.string() + "': " + ec.message());
    const auto staging = dir / (".staging-" + std::to_string(::getpid()));
    std::filesystem::remove_all(staging, ec);
    std::filesystem::create_directory(staging, ec);
    if (ec)
        throw InputError("cannot create staging directory '" + staging.string() + "': " + ec.message());

    std::vector<std::filesystem::path> moved;
    try {
        for (const auto &[name, content] : files_) {
            std::ofstream out(staging / name, std::ios::binary | std::ios::trunc);
            out.write(content.data(), static_cast<std::streamsize>(content.size()));
            out.flush();
            if (!out)
                throw InputError("failed writing '" + (staging / name).string() + "'");
        }
        for (const auto &[name, content] : files_) {
            std::filesystem::rename(staging / name, dir / name, ec);
            if (ec)
                throw InputError("cannot move '" + name + "' into '" + dir.string() + "': " + ec.message());
            moved.push_back(dir / name);
        }
    } catch (...) {
        for (const auto &path : moved)
            std::filesystem::remove(path, ec);
        std::filesystem::remove_all(staging, ec);
        throw;
    }
    std::filesystem::remove_all(staging, ec);
}

} // namespace supplyrisk::cli
