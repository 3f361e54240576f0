#include "commands.hpp"

#include <functional>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "supplyrisk/error.hpp"
#include "supplyrisk/exposure.hpp"
#include "supplyrisk/stats.hpp"
#include "supplyrisk/version.hpp"

namespace supplyrisk::cli {

namespace {

std::string suffix(Direction direction) { return std::string(to_string(direction)); }

std::vector<std::string> build_notes(const LoadedNetwork &loaded) {
    const auto &b = loaded.build;
    const auto &p = loaded.preprocess;
    std::vector<std::string> notes;
    notes.push_back("build: dropped " + std::to_string(b.self_loops_dropped) + " self-loops, " +
                    std::to_string(b.duplicates_dropped) + " duplicate edges, " +
                    std::to_string(b.isolated_dropped) + " isolated firms");
    std::string regions;
    for (const auto &r : p.removed_regions)
        regions += (regions.empty() ? "" : ",") + r;
    notes.push_back("preprocess: removed " + std::to_string(p.excluded_region_firms) + " firms in excluded regions, " +
                    std::to_string(p.small_region_firms) + " firms in small regions, " +
                    std::to_string(p.isolated_firms) + " isolated firms in " + std::to_string(p.passes) +
                    (p.passes == 1 ? " pass" : " passes") + "; removed regions [" + regions + "]");
    notes.push_back("network: " + std::to_string(loaded.network.firm_count()) + " firms, " +
                    std::to_string(loaded.network.edge_count()) + " edges, " +
                    std::to_string(loaded.partition.region_count()) + " regions");
    return notes;
}

Report base_report(const RunConfig &config, const LoadedNetwork &loaded) {
    Report report;
    report.version = kVersion;
    report.config = config.echo();
    report.inputs = loaded.inputs;
    report.notes = build_notes(loaded);
    return report;
}

ExposureOptions exposure_options(const RunConfig &config) {
    ExposureOptions options;
    options.workers = config.workers;
    return options;
}

// Runs an optional statistic; failures become report notes instead of errors.
void attempt(Report &report, const std::string &what, const std::function<void()> &body) {
    try {
        body();
    } catch (const ComputationError &e) {
        report.notes.push_back(what + " skipped: " + e.what());
    } catch (const InputError &e) {
        report.notes.push_back(what + " skipped: " + e.what());
    }
}

std::vector<std::pair<std::string, double>> parse_region_list(const std::string &text) {
    std::vector<std::pair<std::string, double>> out;
    std::stringstream stream(text);
    std::string item;
    while (std::getline(stream, item, ',')) {
        const auto colon = item.find(':');
        if (colon == std::string::npos || colon == 0)
            throw InputError("region spec '" + item + "' must look like LABEL:FIRMS");
        try {
            std::size_t used = 0;
            const long count = std::stol(item.substr(colon + 1), &used);
            if (used != item.size() - colon - 1 || count < 1)
                throw std::invalid_argument("count");
            out.emplace_back(item.substr(0, colon), static_cast<double>(count));
        } catch (const std::logic_error &) {
            throw InputError("region spec '" + item + "' needs a positive firm count");
        }
    }
    if (out.empty())
        throw InputError("--regions is empty");
    return out;
}

} // namespace

OutputSet exposure_outputs(const RunConfig &config, const LoadedNetwork &loaded) {
    const auto format = matrix_format_from_string(config.format);
    const std::string ext(file_extension(format));
    auto render = [&](const ExposureMatrix &m, Direction d) {
        return format == MatrixFormat::Csv ? render_matrix_csv(m) : render_matrix_json(m, d);
    };

    OutputSet files;
    Report manifest = base_report(config, loaded);
    ExposureProfile profile;
    profile.labels = loaded.partition.regions();
    const auto degrees = region_total_degrees(loaded.network, loaded.partition);

    for (Direction direction : config.directions()) {
        const SupplyNetwork oriented =
            direction == Direction::Downstream ? loaded.network : reverse(loaded.network);
        const auto expected =
            region_region_exposure(loaded.network, loaded.partition, direction, exposure_options(config));
        const auto value = exposed_value(expected, degrees);
        const auto links = link_count_matrix(oriented, loaded.partition);
        const auto outlinks = mean_outlinks(oriented, loaded.partition);
        const auto totals = total_exposure(expected);

        const std::string s = suffix(direction);
        files.add("E_" + s + ext, render(expected, direction));
        files.add("V_" + s + ext, render(value, direction));
        files.add("A_" + s + ext, render(links, direction));
        files.add("kbar_" + s + ext, render(outlinks, direction));

        ExposureProfile single;
        single.labels = profile.labels;
        (direction == Direction::Downstream ? single.downstream : single.upstream) = totals;
        files.add("profile_" + s + ".csv", render_profile_csv(single, degrees));
        (direction == Direction::Downstream ? profile.downstream : profile.upstream) = totals;
    }
    manifest.exposure_profile = std::move(profile);
    files.add("run.json", render_report(manifest));
    return files;
}

void cmd_exposure(const RunConfig &config) {
    config.validate(false, true);
    const auto loaded = load_network(config);
    exposure_outputs(config, loaded).commit(config.out);
}

Report inequality_report(const RunConfig &config, const LoadedNetwork &loaded, const MacroTable &macro) {
    const auto &regions = loaded.partition.regions();
    std::vector<std::string> missing;
    std::vector<const MacroRow *> rows;
    for (const auto &region : regions) {
        const MacroRow *row = macro.find(region);
        if (row == nullptr)
            missing.push_back(region);
        rows.push_back(row);
    }
    if (!missing.empty()) {
        std::string names;
        for (const auto &m : missing)
            names += (names.empty() ? "" : ", ") + m;
        throw InputError("macro table does not cover region(s): " + names);
    }

    const std::size_t n = regions.size();
    std::vector<double> population(n), gdp(n), gdp_pc(n), exports(n), imports(n), exports_pc(n), imports_pc(n);
    for (std::size_t k = 0; k < n; ++k) {
        population[k] = rows[k]->population;
        gdp[k] = rows[k]->gdp_usd;
        gdp_pc[k] = rows[k]->gdp_per_capita();
        exports[k] = rows[k]->exports_usd;
        imports[k] = rows[k]->imports_usd;
        exports_pc[k] = rows[k]->exports_per_capita();
        imports_pc[k] = rows[k]->imports_per_capita();
    }

    Report report = base_report(config, loaded);
    ExposureProfile profile;
    profile.labels = regions;
    const auto degrees = region_total_degrees(loaded.network, loaded.partition);
    const auto groups = group_partition(loaded.partition, income_terciles(regions, macro.gdp_per_capita()));

    auto add_lorenz = [&](const std::string &name, std::span<const double> values) {
        const auto curve = lorenz(values, population);
        std::vector<std::string> ordered;
        for (std::size_t k : curve.order)
            ordered.push_back(regions[k]);
        report.lorenz.push_back({name, std::move(ordered), curve});
        report.gini.emplace_back(name, gini(curve));
    };
    auto add_association = [&](const std::string &name, std::span<const double> x, std::span<const double> y) {
        attempt(report, name + " correlation", [&] { report.correlations.push_back({name, pearson(x, y)}); });
        attempt(report, name + " power law", [&] { report.power_laws.push_back({name, loglog_fit(x, y)}); });
    };

    std::optional<std::vector<double>> downstream_totals;
    for (Direction direction : config.directions()) {
        const std::string s = suffix(direction);
        const auto expected =
            region_region_exposure(loaded.network, loaded.partition, direction, exposure_options(config));
        const auto totals = total_exposure(expected);
        (direction == Direction::Downstream ? profile.downstream : profile.upstream) = totals;
        if (direction == Direction::Downstream)
            downstream_totals = totals;

        add_lorenz("E_" + s, totals);
        report.group_exposure.push_back(
            {"income_groups", direction, group_exposure(loaded.network, groups, direction, exposure_options(config))});
        add_association("E_" + s + "_vs_gdp_per_capita", totals, gdp_pc);

        const SupplyNetwork oriented =
            direction == Direction::Downstream ? loaded.network : reverse(loaded.network);
        const auto value = exposed_value(expected, degrees);
        const auto outlinks = mean_outlinks(oriented, loaded.partition);
        add_association("V_" + s + "_vs_mean_outlinks", outlinks.values(), value.values());
    }
    add_lorenz("gdp", gdp);

    const auto aggregates = region_degree_aggregates(loaded.network, loaded.partition);
    std::vector<double> total_degree(n), export_links(n), import_links(n);
    for (std::size_t k = 0; k < n; ++k) {
        total_degree[k] = static_cast<double>(aggregates[k].total_degree);
        export_links[k] = static_cast<double>(aggregates[k].export_links);
        import_links[k] = static_cast<double>(aggregates[k].import_links);
    }
    add_association("total_degree_vs_gdp", total_degree, gdp);
    add_association("export_links_vs_exports", export_links, exports);
    add_association("import_links_vs_imports", import_links, imports);

    if (downstream_totals) {
        attempt(report, "model_1 regression", [&] {
            report.regressions.push_back(
                {"model_1", ols_multi(gdp_pc, {*downstream_totals, gdp, exports, imports, exports_pc, imports_pc},
                                      {"E_down", "gdp", "exports", "imports", "exports_per_capita",
                                       "imports_per_capita"})});
        });
        attempt(report, "model_2 regression", [&] {
            report.regressions.push_back(
                {"model_2", ols_multi(gdp_pc, {*downstream_totals, exports_pc}, {"E_down", "exports_per_capita"})});
        });
    } else {
        report.notes.push_back("regressions skipped: they need the downstream direction");
    }
    report.exposure_profile = std::move(profile);
    return report;
}

void cmd_inequality(const RunConfig &config) {
    config.validate(true, true);
    const auto loaded = load_network(config);
    const auto macro = read_macro(config.macro);
    OutputSet files;
    files.add("report.json", render_report(inequality_report(config, loaded, macro)));
    files.commit(config.out);
}

SyntheticData generated_data(const GenerateOptions &options) {
    if (options.toy)
        return toy_fixture_data();
    if (!options.regions.empty()) {
        GeneratorConfig config;
        for (const auto &[label, count] : parse_region_list(options.regions))
            config.regions.push_back({label, static_cast<std::size_t>(count)});
        config.intra_probability = options.intra_probability;
        config.inter_probability = options.inter_probability;
        config.seed = options.seed;
        return generate_block_model(config);
    }
    ScaleSpec spec;
    spec.firms = options.firms;
    spec.regions = options.region_count;
    spec.mean_degree = options.mean_degree;
    spec.intra_share = options.intra_share;
    spec.seed = options.seed;
    return generate_block_model(scale_config(spec));
}

void cmd_generate(const GenerateOptions &options) {
    if (options.out.empty())
        throw InputError("--out is required for generate");
    const auto data = generated_data(options);
    std::string edges = "supplier_id,customer_id\n";
    for (const auto &e : data.edges)
        edges += e.supplier + "," + e.customer + "\n";
    std::string firms = "firm_id,region,sector\n";
    for (const auto &f : data.firms)
        firms += f.firm_id + "," + f.region + "," + f.sector + "\n";
    std::string macro = "region,gdp_usd,population,imports_usd,exports_usd\n";
    for (const auto &r : data.macro.rows())
        macro += r.region + "," + format_double(r.gdp_usd) + "," + format_double(r.population) + "," +
                 format_double(r.imports_usd) + "," + format_double(r.exports_usd) + "\n";
    OutputSet files;
    files.add("edges.csv", std::move(edges));
    files.add("firms.csv", std::move(firms));
    files.add("macro.csv", std::move(macro));
    files.commit(options.out);
}

std::string cascade_json(const RunConfig &config, const LoadedNetwork &loaded, const std::string &seed_firm) {
    const auto seed = loaded.network.find(seed_firm);
    if (!seed)
        throw InputError("firm '" + seed_firm + "' is not in the preprocessed network");

    nlohmann::ordered_json doc;
    doc["version"] = kVersion;
    nlohmann::ordered_json echoed;
    for (const auto &[key, value] : config.echo())
        echoed[key] = value;
    doc["config"] = std::move(echoed);
    doc["seed"] = seed_firm;
    const auto sizes = degree_sizes(loaded.network);
    nlohmann::ordered_json cascades = nlohmann::ordered_json::array();
    for (Direction direction : config.directions()) {
        const FirmIndex seeds[] = {*seed};
        const auto row = propagate(loaded.network, seeds, direction);
        nlohmann::ordered_json entry;
        entry["direction"] = std::string(to_string(direction));
        entry["steps"] = row.steps;
        entry["debt_rank"] = debt_rank(row, sizes);
        nlohmann::ordered_json distress;
        for (const auto &d : row.sorted())
            distress[loaded.network.firm_id(d.firm)] = d.distress;
        entry["distress"] = std::move(distress);
        cascades.push_back(std::move(entry));
    }
    doc["cascades"] = std::move(cascades);
    return doc.dump(2) + "\n";
}

void cmd_cascade(const RunConfig &config, const std::string &seed_firm, std::ostream &out) {
    config.validate(false, false);
    const auto loaded = load_network(config);
    const auto text = cascade_json(config, loaded, seed_firm);
    if (config.out.empty()) {
        out << text;
        return;
    }
    OutputSet files;
    files.add("cascade.json", text);
    files.commit(config.out);
}

int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"Supply-network shock exposure and inequality analysis", "supplyrisk"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    RunConfig config;
    std::vector<std::string> exclude;
    auto add_run_options = [&](CLI::App *cmd, bool macro) {
        cmd->add_option("--edges", config.edges, "Edge list CSV (supplier_id,customer_id)")->required();
        cmd->add_option("--firms", config.firms, "Firm table CSV (firm_id,region,sector)")->required();
        if (macro)
            cmd->add_option("--macro", config.macro, "Macro table CSV")->required();
        cmd->add_option("--direction", config.direction, "down, up or both")
            ->check(CLI::IsMember({"down", "up", "both"}));
        cmd->add_option("--min-firms", config.min_firms, "Keep regions with more than this many firms");
        cmd->add_option("--exclude", exclude, "Regions to drop (replaces the default offshore list; 'none' for no exclusions)")
            ->delimiter(',');
        cmd->add_option("--workers", config.workers, "Cascade worker threads")->check(CLI::PositiveNumber);
        cmd->add_option("--format", config.format, "Matrix format")->check(CLI::IsMember({"csv", "json"}));
    };

    auto *exposure = app.add_subcommand("exposure", "Region-to-region exposure matrices and profiles");
    add_run_options(exposure, false);
    exposure->add_option("--out", config.out, "Output directory")->required();

    auto *inequality = app.add_subcommand("inequality", "Lorenz curves, Gini coefficients, correlations, regressions");
    add_run_options(inequality, true);
    inequality->add_option("--out", config.out, "Output directory")->required();

    std::string seed_firm;
    auto *cascade = app.add_subcommand("cascade", "Distress vector of a single firm failure");
    add_run_options(cascade, false);
    cascade->add_option("--seed-firm", seed_firm, "Firm id to fail")->required();
    cascade->add_option("--out", config.out, "Output directory (default: standard output)");

    GenerateOptions gen;
    auto *generate = app.add_subcommand("generate", "Write synthetic input CSVs");
    generate->add_option("--out", gen.out, "Output directory")->required();
    generate->add_flag("--toy", gen.toy, "Nine-firm toy economy");
    generate->add_option("--regions", gen.regions, "Block model regions, e.g. A:100,B:40");
    generate->add_option("--p-intra", gen.intra_probability, "Edge probability inside a region");
    generate->add_option("--p-inter", gen.inter_probability, "Edge probability between regions");
    generate->add_option("--firms", gen.firms, "Scale fixture firm count");
    generate->add_option("--region-count", gen.region_count, "Scale fixture region count");
    generate->add_option("--mean-degree", gen.mean_degree, "Scale fixture mean total degree");
    generate->add_option("--intra-share", gen.intra_share, "Scale fixture share of intra-region edges");
    generate->add_option("--seed", gen.seed, "Generator seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return e.get_exit_code() == static_cast<int>(CLI::ExitCodes::Success) ? code : 2;
    }

    if (!exclude.empty()) {
        config.exclude.clear();
        for (const auto &region : exclude)
            if (region != "none" && !region.empty())
                config.exclude.insert(region);
    }

    try {
        if (exposure->parsed())
            cmd_exposure(config);
        else if (inequality->parsed())
            cmd_inequality(config);
        else if (cascade->parsed())
            cmd_cascade(config, seed_firm, out);
        else if (generate->parsed())
            cmd_generate(gen);
    } catch (const InputError &e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const ComputationError &e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

} // namespace supplyrisk::cli
