#include "supplyrisk/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <system_error>
#include <unistd.h>

#include <json.hpp>

#include "supplyrisk/error.hpp"

namespace supplyrisk {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string read_text(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw InputError("cannot open '" + path.string() + "' for reading");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return std::move(buffer).str();
}

struct CsvLine {
    std::size_t number;
    std::vector<std::string_view> fields;
};

std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

// Splits text into header and non-blank data lines. CRLF endings are accepted.
struct CsvTable {
    std::string_view header;
    std::vector<CsvLine> rows;
};

CsvTable parse_csv(std::string_view text, const std::filesystem::path &path) {
    CsvTable table;
    std::size_t number = 0;
    std::size_t pos = 0;
    bool have_header = false;
    while (pos < text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos)
            end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++number;
        if (!line.empty() && line.back() == '\r')
            line.remove_suffix(1);
        if (!have_header) {
            if (number == 1 && line.size() >= 3 && line.substr(0, 3) == "\xEF\xBB\xBF")
                line.remove_prefix(3);
            table.header = line;
            have_header = true;
            continue;
        }
        if (line.empty())
            continue;
        table.rows.push_back({number, split(line)});
    }
    if (!have_header)
        throw ParseError(path.string(), {{1, "missing header"}});
    return table;
}

bool valid_id(std::string_view id) {
    if (id.empty())
        return false;
    return std::all_of(id.begin(), id.end(), [](char ch) {
        return (ch >= 'A' && ch <= 'Z') || (ch >= 'a' && ch <= 'z') || (ch >= '0' && ch <= '9') || ch == '_' ||
               ch == '.' || ch == '-';
    });
}

bool valid_label(std::string_view label) {
    return !label.empty() && label.find('"') == std::string_view::npos;
}

std::optional<double> parse_number(std::string_view text) {
    double value = 0.0;
    if (text.empty())
        return std::nullopt;
    const char *begin = text.data();
    if (*begin == '+')
        ++begin;
    auto [ptr, ec] = std::from_chars(begin, text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(value))
        return std::nullopt;
    return value;
}

void expect_header(const CsvTable &table, const std::filesystem::path &path,
                   std::initializer_list<std::string_view> accepted) {
    for (auto header : accepted)
        if (table.header == header)
            return;
    throw ParseError(path.string(), {{1, "expected header '" + std::string(*accepted.begin()) + "', got '" +
                                             std::string(table.header) + "'"}});
}

std::string csv_escape_check(const std::string &field) {
    if (field.find_first_of(",\n\r\"") != std::string::npos)
        throw InputError("value '" + field + "' cannot be written to CSV without quoting");
    return field;
}

ordered_json matrix_json(const ExposureMatrix &matrix, std::optional<Direction> direction) {
    ordered_json out;
    out["kind"] = std::string(to_string(matrix.kind()));
    if (direction)
        out["direction"] = std::string(to_string(*direction));
    out["labels"] = matrix.labels();
    out["values"] = matrix.values();
    return out;
}

ordered_json lorenz_json(const NamedLorenz &named) {
    ordered_json out;
    out["name"] = named.name;
    out["order"] = named.labels;
    ordered_json points = ordered_json::array();
    for (const auto &p : named.curve.points)
        points.push_back({p.population_share, p.value_share});
    out["points"] = std::move(points);
    return out;
}

ordered_json regression_json(const NamedRegression &named) {
    const auto &r = named.value;
    ordered_json out;
    out["name"] = named.name;
    out["observations"] = r.observations;
    out["r_squared"] = r.r_squared;
    out["adjusted_r_squared"] = r.adjusted_r_squared;
    out["f_statistic"] = r.f_statistic;
    out["model_p_value"] = r.model_p_value;
    ordered_json coefs = ordered_json::array();
    for (const auto &c : r.coefficients) {
        ordered_json entry;
        entry["name"] = c.name;
        entry["estimate"] = c.estimate;
        entry["std_error"] = c.std_error;
        entry["t_value"] = c.t_value;
        entry["p_value"] = c.p_value;
        coefs.push_back(std::move(entry));
    }
    out["coefficients"] = std::move(coefs);
    return out;
}

} // namespace

MacroTable::MacroTable(std::vector<MacroRow> rows) : rows_(std::move(rows)) {
    std::sort(rows_.begin(), rows_.end(), [](const auto &a, const auto &b) { return a.region < b.region; });
    for (std::size_t k = 0; k < rows_.size(); ++k) {
        if (k > 0 && rows_[k - 1].region == rows_[k].region)
            throw InputError("duplicate macro region '" + rows_[k].region + "'");
        if (!(rows_[k].population > 0.0))
            throw InputError("population of region '" + rows_[k].region + "' must be positive");
    }
}

const MacroRow *MacroTable::find(std::string_view region) const {
    auto it = std::lower_bound(rows_.begin(), rows_.end(), region,
                               [](const MacroRow &row, std::string_view key) { return row.region < key; });
    if (it == rows_.end() || it->region != region)
        return nullptr;
    return &*it;
}

std::map<std::string, double> MacroTable::gdp_per_capita() const {
    std::map<std::string, double> out;
    for (const auto &row : rows_)
        out[row.region] = row.gdp_per_capita();
    return out;
}

std::vector<EdgeRecord> read_edges(const std::filesystem::path &path) {
    const std::string text = read_text(path);
    const CsvTable table = parse_csv(text, path);
    expect_header(table, path, {"supplier_id,customer_id"});

    std::vector<ParseIssue> issues;
    std::vector<EdgeRecord> edges;
    edges.reserve(table.rows.size());
    for (const auto &row : table.rows) {
        if (row.fields.size() != 2) {
            issues.push_back({row.number, "expected 2 columns, got " + std::to_string(row.fields.size())});
            continue;
        }
        bool ok = true;
        for (auto field : row.fields) {
            if (!valid_id(field)) {
                issues.push_back({row.number, "invalid firm id '" + std::string(field) + "'"});
                ok = false;
            }
        }
        if (ok)
            edges.push_back({std::string(row.fields[0]), std::string(row.fields[1])});
    }
    if (!issues.empty())
        throw ParseError(path.string(), std::move(issues));
    if (edges.empty())
        throw ParseError(path.string(), {{1, "no edges after the header"}});
    return edges;
}

std::vector<FirmRecord> read_firms(const std::filesystem::path &path) {
    const std::string text = read_text(path);
    const CsvTable table = parse_csv(text, path);
    expect_header(table, path, {"firm_id,region,sector", "firm_id,region"});
    const std::size_t columns = table.header == "firm_id,region" ? 2 : 3;

    std::vector<ParseIssue> issues;
    std::vector<FirmRecord> firms;
    std::map<std::string_view, std::size_t> seen;
    for (const auto &row : table.rows) {
        if (row.fields.size() != columns) {
            issues.push_back({row.number, "expected " + std::to_string(columns) + " columns, got " +
                                              std::to_string(row.fields.size())});
            continue;
        }
        if (!valid_id(row.fields[0])) {
            issues.push_back({row.number, "invalid firm id '" + std::string(row.fields[0]) + "'"});
            continue;
        }
        if (!valid_label(row.fields[1])) {
            issues.push_back({row.number, "invalid region label '" + std::string(row.fields[1]) + "'"});
            continue;
        }
        if (auto [it, inserted] = seen.emplace(row.fields[0], row.number); !inserted) {
            issues.push_back({row.number, "duplicate firm id '" + std::string(row.fields[0]) +
                                              "' (first seen on line " + std::to_string(it->second) + ")"});
            continue;
        }
        firms.push_back({std::string(row.fields[0]), std::string(row.fields[1]),
                         columns == 3 ? std::string(row.fields[2]) : std::string()});
    }
    if (!issues.empty())
        throw ParseError(path.string(), std::move(issues));
    if (firms.empty())
        throw ParseError(path.string(), {{1, "no firms after the header"}});
    return firms;
}

MacroTable read_macro(const std::filesystem::path &path) {
    const std::string text = read_text(path);
    const CsvTable table = parse_csv(text, path);
    expect_header(table, path, {"region,gdp_usd,population,imports_usd,exports_usd"});

    std::vector<ParseIssue> issues;
    std::vector<MacroRow> rows;
    std::map<std::string_view, std::size_t> seen;
    for (const auto &row : table.rows) {
        if (row.fields.size() != 5) {
            issues.push_back({row.number, "expected 5 columns, got " + std::to_string(row.fields.size())});
            continue;
        }
        if (!valid_label(row.fields[0])) {
            issues.push_back({row.number, "invalid region label '" + std::string(row.fields[0]) + "'"});
            continue;
        }
        MacroRow parsed;
        parsed.region = std::string(row.fields[0]);
        double *targets[] = {&parsed.gdp_usd, &parsed.population, &parsed.imports_usd, &parsed.exports_usd};
        bool ok = true;
        for (std::size_t k = 0; k < 4; ++k) {
            auto value = parse_number(row.fields[k + 1]);
            if (!value) {
                issues.push_back({row.number, "not a plain decimal number: '" + std::string(row.fields[k + 1]) + "'"});
                ok = false;
                break;
            }
            *targets[k] = *value;
        }
        if (!ok)
            continue;
        if (!(parsed.population > 0.0)) {
            issues.push_back({row.number, "population must be positive for region '" + parsed.region + "'"});
            continue;
        }
        if (auto [it, inserted] = seen.emplace(row.fields[0], row.number); !inserted) {
            issues.push_back({row.number, "duplicate region '" + parsed.region + "' (first seen on line " +
                                              std::to_string(it->second) + ")"});
            continue;
        }
        rows.push_back(std::move(parsed));
    }
    if (!issues.empty())
        throw ParseError(path.string(), std::move(issues));
    if (rows.empty())
        throw ParseError(path.string(), {{1, "no regions after the header"}});
    return MacroTable(std::move(rows));
}

void write_edges(std::span<const EdgeRecord> edges, const std::filesystem::path &path) {
    std::string out = "supplier_id,customer_id\n";
    for (const auto &e : edges)
        out += csv_escape_check(e.supplier) + "," + csv_escape_check(e.customer) + "\n";
    write_text_atomic(path, out);
}

void write_firms(std::span<const FirmRecord> firms, const std::filesystem::path &path) {
    std::string out = "firm_id,region,sector\n";
    for (const auto &f : firms)
        out += csv_escape_check(f.firm_id) + "," + csv_escape_check(f.region) + "," + csv_escape_check(f.sector) +
               "\n";
    write_text_atomic(path, out);
}

void write_macro(const MacroTable &table, const std::filesystem::path &path) {
    std::string out = "region,gdp_usd,population,imports_usd,exports_usd\n";
    for (const auto &row : table.rows())
        out += csv_escape_check(row.region) + "," + format_double(row.gdp_usd) + "," +
               format_double(row.population) + "," + format_double(row.imports_usd) + "," +
               format_double(row.exports_usd) + "\n";
    write_text_atomic(path, out);
}

MatrixFormat matrix_format_from_string(std::string_view name) {
    if (name == "csv")
        return MatrixFormat::Csv;
    if (name == "json")
        return MatrixFormat::Json;
    throw InputError("unknown output format '" + std::string(name) + "' (expected csv or json)");
}

std::string_view file_extension(MatrixFormat format) { return format == MatrixFormat::Csv ? ".csv" : ".json"; }

std::string format_double(double value) {
    char buffer[40];
    const int n = std::snprintf(buffer, sizeof buffer, "%.17g", value);
    return std::string(buffer, static_cast<std::size_t>(n));
}

std::string render_matrix_csv(const ExposureMatrix &matrix) {
    if (matrix.empty())
        throw InputError("refusing to write an empty matrix");
    std::string out = "region";
    for (const auto &label : matrix.labels())
        out += "," + csv_escape_check(label);
    out += "\n";
    for (std::size_t c = 0; c < matrix.size(); ++c) {
        out += matrix.labels()[c];
        for (double v : matrix.row(c))
            out += "," + format_double(v);
        out += "\n";
    }
    return out;
}

std::string render_matrix_json(const ExposureMatrix &matrix, std::optional<Direction> direction) {
    if (matrix.empty())
        throw InputError("refusing to write an empty matrix");
    return matrix_json(matrix, direction).dump(2) + "\n";
}

void write_matrix(const ExposureMatrix &matrix, const std::filesystem::path &path, MatrixFormat format,
                  std::optional<Direction> direction) {
    write_text_atomic(path, format == MatrixFormat::Csv ? render_matrix_csv(matrix)
                                                        : render_matrix_json(matrix, direction));
}

ExposureMatrix read_matrix_csv(const std::filesystem::path &path, MatrixKind kind) {
    const std::string text = read_text(path);
    const CsvTable table = parse_csv(text, path);
    auto header = split(table.header);
    if (header.empty() || header[0] != "region")
        throw ParseError(path.string(), {{1, "matrix header must start with 'region'"}});
    std::vector<std::string> labels(header.begin() + 1, header.end());
    const std::size_t n = labels.size();
    if (n == 0 || table.rows.size() != n)
        throw ParseError(path.string(), {{1, "matrix must be square with " + std::to_string(n) + " rows"}});

    std::vector<ParseIssue> issues;
    std::vector<double> values;
    values.reserve(n * n);
    for (std::size_t c = 0; c < n; ++c) {
        const auto &row = table.rows[c];
        if (row.fields.size() != n + 1 || row.fields[0] != labels[c]) {
            issues.push_back({row.number, "row must start with label '" + labels[c] + "' and hold " +
                                              std::to_string(n) + " values"});
            continue;
        }
        for (std::size_t d = 0; d < n; ++d) {
            auto value = parse_number(row.fields[d + 1]);
            if (!value) {
                issues.push_back({row.number, "bad number '" + std::string(row.fields[d + 1]) + "'"});
                break;
            }
            values.push_back(*value);
        }
    }
    if (!issues.empty())
        throw ParseError(path.string(), std::move(issues));
    return ExposureMatrix(std::move(labels), kind, std::move(values));
}

ExposureMatrix read_matrix_json(const std::filesystem::path &path) {
    try {
        const auto doc = nlohmann::json::parse(read_text(path));
        return ExposureMatrix(doc.at("labels").get<std::vector<std::string>>(),
                              matrix_kind_from_string(doc.at("kind").get<std::string>()),
                              doc.at("values").get<std::vector<double>>());
    } catch (const nlohmann::json::exception &e) {
        throw InputError("malformed matrix JSON '" + path.string() + "': " + e.what());
    }
}

std::string render_profile_csv(const ExposureProfile &profile, std::span<const double> region_degree) {
    if (region_degree.size() != profile.labels.size())
        throw InputError("region degree vector does not match the profile");
    std::string out = "region";
    if (profile.downstream)
        out += ",E_down";
    if (profile.upstream)
        out += ",E_up";
    out += ",k\n";
    for (std::size_t d = 0; d < profile.labels.size(); ++d) {
        out += profile.labels[d];
        if (profile.downstream)
            out += "," + format_double((*profile.downstream)[d]);
        if (profile.upstream)
            out += "," + format_double((*profile.upstream)[d]);
        out += "," + format_double(region_degree[d]) + "\n";
    }
    return out;
}

std::string render_report(const Report &report) {
    ordered_json doc;
    doc["version"] = report.version;
    if (!report.config.empty()) {
        ordered_json config;
        for (const auto &[key, value] : report.config)
            config[key] = value;
        doc["config"] = std::move(config);
    }
    if (!report.inputs.empty()) {
        ordered_json inputs = ordered_json::array();
        for (const auto &input : report.inputs)
            inputs.push_back({{"role", input.role}, {"path", input.path}, {"sha256", input.sha256}});
        doc["inputs"] = std::move(inputs);
    }
    if (report.exposure_profile) {
        const auto &profile = *report.exposure_profile;
        ordered_json section;
        section["labels"] = profile.labels;
        if (profile.downstream)
            section["downstream"] = *profile.downstream;
        if (profile.upstream)
            section["upstream"] = *profile.upstream;
        doc["exposure_profile"] = std::move(section);
    }
    if (!report.lorenz.empty()) {
        ordered_json curves = ordered_json::array();
        for (const auto &curve : report.lorenz)
            curves.push_back(lorenz_json(curve));
        doc["lorenz"] = std::move(curves);
    }
    if (!report.gini.empty()) {
        ordered_json section;
        for (const auto &[name, value] : report.gini)
            section[name] = value;
        doc["gini"] = std::move(section);
    }
    if (!report.group_exposure.empty()) {
        ordered_json section = ordered_json::array();
        for (const auto &m : report.group_exposure) {
            ordered_json entry;
            entry["name"] = m.name;
            entry.update(matrix_json(m.value, m.direction));
            section.push_back(std::move(entry));
        }
        doc["group_exposure"] = std::move(section);
    }
    if (!report.correlations.empty()) {
        ordered_json section = ordered_json::array();
        for (const auto &c : report.correlations)
            section.push_back({{"name", c.name}, {"n", c.value.n}, {"r", c.value.r}, {"p_value", c.value.p_value}});
        doc["correlations"] = std::move(section);
    }
    if (!report.power_laws.empty()) {
        ordered_json section = ordered_json::array();
        for (const auto &f : report.power_laws)
            section.push_back({{"name", f.name},
                               {"exponent", f.value.exponent},
                               {"prefactor", f.value.prefactor},
                               {"r_squared", f.value.r_squared},
                               {"used", f.value.used},
                               {"dropped", f.value.dropped}});
        doc["power_laws"] = std::move(section);
    }
    if (!report.regressions.empty()) {
        ordered_json section = ordered_json::array();
        for (const auto &r : report.regressions)
            section.push_back(regression_json(r));
        doc["regressions"] = std::move(section);
    }
    if (!report.notes.empty())
        doc["notes"] = report.notes;
    return doc.dump(2) + "\n";
}

void write_report(const Report &report, const std::filesystem::path &path) {
    write_text_atomic(path, render_report(report));
}

void write_text_atomic(const std::filesystem::path &path, std::string_view content) {
    std::filesystem::path tmp = path;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw InputError("cannot open '" + path.string() + "' for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) {
            std::error_code ignored;
            std::filesystem::remove(tmp, ignored);
            throw InputError("failed writing '" + path.string() + "'");
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::error_code ignored;
        std::filesystem::remove(tmp, ignored);
        throw InputError("cannot move output into place at '" + path.string() + "': " + ec.message());
    }
}

} // namespace supplyrisk
