#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "supplyrisk/cascade.hpp"
#include "supplyrisk/exposure.hpp"
#include "supplyrisk/graph.hpp"
#include "supplyrisk/matrix.hpp"
#include "supplyrisk/stats.hpp"

namespace supplyrisk {

// Macro variables of one region in current USD and persons. Per-capita values
// are always derived, never read.
struct MacroRow {
    std::string region;
    double gdp_usd = 0.0;
    double population = 0.0;
    double imports_usd = 0.0;
    double exports_usd = 0.0;

    double gdp_per_capita() const { return gdp_usd / population; }
    double imports_per_capita() const { return imports_usd / population; }
    double exports_per_capita() const { return exports_usd / population; }

    friend bool operator==(const MacroRow &, const MacroRow &) = default;
};

class MacroTable {
public:
    MacroTable() = default;
    // Sorts rows by region; throws InputError on duplicates or population <= 0.
    explicit MacroTable(std::vector<MacroRow> rows);

    const std::vector<MacroRow> &rows() const noexcept { return rows_; }
    const MacroRow *find(std::string_view region) const;
    std::map<std::string, double> gdp_per_capita() const;

    friend bool operator==(const MacroTable &, const MacroTable &) = default;

private:
    std::vector<MacroRow> rows_;
};

// supplier_id,customer_id
std::vector<EdgeRecord> read_edges(const std::filesystem::path &path);
// firm_id,region[,sector]
std::vector<FirmRecord> read_firms(const std::filesystem::path &path);
// region,gdp_usd,population,imports_usd,exports_usd
MacroTable read_macro(const std::filesystem::path &path);

void write_edges(std::span<const EdgeRecord> edges, const std::filesystem::path &path);
void write_firms(std::span<const FirmRecord> firms, const std::filesystem::path &path);
void write_macro(const MacroTable &table, const std::filesystem::path &path);

enum class MatrixFormat { Csv, Json };
MatrixFormat matrix_format_from_string(std::string_view name);
std::string_view file_extension(MatrixFormat format);

// 17 significant digits ("%.17g"); parses back to the same double.
std::string format_double(double value);

std::string render_matrix_csv(const ExposureMatrix &matrix);
std::string render_matrix_json(const ExposureMatrix &matrix, std::optional<Direction> direction);

void write_matrix(const ExposureMatrix &matrix, const std::filesystem::path &path, MatrixFormat format,
                  std::optional<Direction> direction = std::nullopt);
ExposureMatrix read_matrix_csv(const std::filesystem::path &path, MatrixKind kind);
ExposureMatrix read_matrix_json(const std::filesystem::path &path);

// region,E_down[,E_up],k
std::string render_profile_csv(const ExposureProfile &profile, std::span<const double> region_degree);

struct InputDigest {
    std::string role;
    std::string path;
    std::string sha256;
};

struct NamedLorenz {
    std::string name;
    std::vector<std::string> labels;  // region labels in curve order
    LorenzCurve curve;
};

struct NamedCorrelation {
    std::string name;
    Correlation value;
};

struct NamedPowerLaw {
    std::string name;
    PowerLawFit value;
};

struct NamedRegression {
    std::string name;
    RegressionResult value;
};

struct NamedMatrix {
    std::string name;
    std::optional<Direction> direction;
    ExposureMatrix value;
};

/**
 * Analysis report. Sections that are empty (or unset) are omitted from the
 * JSON document rather than written as null. Key order is fixed:
 * version, config, inputs, exposure_profile, lorenz, gini, group_exposure,
 * correlations, power_laws, regressions, notes.
 */
struct Report {
    std::string version;
    std::vector<std::pair<std::string, std::string>> config;
    std::vector<InputDigest> inputs;
    std::optional<ExposureProfile> exposure_profile;
    std::vector<NamedLorenz> lorenz;
    std::vector<std::pair<std::string, double>> gini;
    std::vector<NamedMatrix> group_exposure;
    std::vector<NamedCorrelation> correlations;
    std::vector<NamedPowerLaw> power_laws;
    std::vector<NamedRegression> regressions;
    std::vector<std::string> notes;
};

std::string render_report(const Report &report);
void write_report(const Report &report, const std::filesystem::path &path);

// Writes content to path via a sibling temporary file and a rename.
void write_text_atomic(const std::filesystem::path &path, std::string_view content);

} // namespace supplyrisk
