#include <algorithm>
#include <filesystem>
#include <iostream>
#include <map>
#include <sstream>

#include "fedsurvey/experiment.hpp"
#include "fedsurvey/reports.hpp"
#include "fedsurvey/runner.hpp"

namespace fedsurvey {

namespace {

namespace fs = std::filesystem;

void ensure_out_dir(const ExperimentConfig& config) {
    std::error_code ec;
    fs::create_directories(config.out_dir, ec);
    if (ec) throw DataError("cannot create output directory '" + config.out_dir + "'");
    write_file(config.out_dir + "/config_used.json", config.materialized + "\n");
}

ExperimentSpec build_spec(const ExperimentConfig& config, std::vector<SiteTable> sites,
                          double fraction) {
    ExperimentSpec spec;
    spec.schema = config.schema;
    spec.sites = std::move(sites);
    spec.fold_plan = make_fold_plan(spec.sites, config.folds, config.seed);
    spec.algorithms = config.algorithms;
    spec.fed = config.fed;
    spec.seed = config.seed;
    spec.subsample_fraction = fraction;
    spec.test_subsets = config.test_subsets;
    return spec;
}

std::string fraction_tag(double fraction) {
    return std::to_string(static_cast<int>(fraction * 100.0 + 0.5));
}

}  // namespace

int cmd_run(const ExperimentConfig& config) {
    ensure_out_dir(config);
    const LoadResult data = load_experiment_data(config);
    const ExperimentResult result = run_experiment(build_spec(config, data.sites, 1.0));
    write_file(config.out_dir + "/results.csv", render_results_csv(result, config));
    write_file(config.out_dir + "/summary.md", render_summary_md(result, config));
    write_file(config.out_dir + "/hypotheses.csv", render_hypotheses_csv(result, config));
    write_file(config.out_dir + "/roundlog.csv", render_roundlog_csv(result, config));
    write_file(config.out_dir + "/fig3.csv", render_fig3_csv(result, config));
    std::cout << "run: " << result.records.size() << " metric cells, "
              << result.round_log.entries.size() << " federation messages -> "
              << config.out_dir << "\n";
    return 0;
}

int cmd_subsample(const ExperimentConfig& config) {
    ensure_out_dir(config);
    const LoadResult data = load_experiment_data(config);

    std::vector<double> fractions = config.subsample_fractions;
    fractions.push_back(1.0);
    std::sort(fractions.begin(), fractions.end());
    fractions.erase(std::unique(fractions.begin(), fractions.end()), fractions.end());

    std::map<double, ExperimentResult> by_fraction;
    for (double fraction : fractions) {
        const ExperimentResult result =
            run_experiment(build_spec(config, data.sites, fraction));
        write_file(config.out_dir + "/results_" + fraction_tag(fraction) + ".csv",
                   render_results_csv(result, config));
        by_fraction.emplace(fraction, result);
    }
    write_file(config.out_dir + "/fig4.csv", render_fig4_csv(by_fraction, config));
    write_file(config.out_dir + "/subsample_hypotheses.csv",
               render_subsample_hypotheses_csv(by_fraction, config));
    std::cout << "subsample: " << by_fraction.size() << " fractions -> " << config.out_dir
              << "\n";
    return 0;
}

int cmd_heterogeneity(const ExperimentConfig& config) {
    ensure_out_dir(config);
    const LoadResult data = load_experiment_data(config);
    if (data.sites.size() < 2)
        throw DataError("heterogeneity needs at least 2 sites");

    std::vector<std::string> site_ids;
    for (const auto& site : data.sites) site_ids.push_back(site.site_id);

    std::vector<std::string> variables;
    for (const auto& f : config.schema.features) variables.push_back(f.name);
    variables.push_back(config.schema.target.name);

    std::vector<HeterogeneityCell> cells;
    const std::size_t m = config.schema.feature_count();
    for (std::size_t v = 0; v <= m; ++v) {
        std::vector<std::vector<double>> groups;
        for (const auto& site : data.sites) {
            std::vector<double> column;
            if (v < m)
                for (std::size_t i = 0; i < site.n_rows(); ++i)
                    column.push_back(site.x[i * m + v]);
            else
                column = site.y;
            groups.push_back(std::move(column));
        }
        const auto p_matrix = scheffe_posthoc(groups);
        for (std::size_t i = 0; i < groups.size(); ++i)
            for (std::size_t j = i + 1; j < groups.size(); ++j)
                cells.push_back({variables[v], site_ids[i], site_ids[j], p_matrix[i][j],
                                 cohens_d(groups[i], groups[j])});
    }

    write_file(config.out_dir + "/heterogeneity_scheffe.csv",
               render_heterogeneity_csv(cells, site_ids, variables, true, config));
    write_file(config.out_dir + "/heterogeneity_cohens_d.csv",
               render_heterogeneity_csv(cells, site_ids, variables, false, config));
    std::cout << "heterogeneity: " << cells.size() << " cells -> " << config.out_dir
              << "\n";
    return 0;
}

int cmd_synth(const ExperimentConfig& config) {
    if (!config.use_synthetic)
        throw ConfigError("synth requires a synthetic data source in the config");
    ensure_out_dir(config);
    const auto sites = generate_synthetic(config.synth);

    std::ostringstream out;
    out << config.site_column;
    for (const auto& f : config.schema.features) out << "," << f.name;
    out << "," << config.schema.target.name << "\n";
    const std::size_t m = config.schema.feature_count();
    for (const auto& site : sites)
        for (std::size_t i = 0; i < site.n_rows(); ++i) {
            out << site.site_id;
            for (std::size_t j = 0; j < m; ++j) out << "," << format_double(site.x[i * m + j]);
            out << "," << format_double(site.y[i]) << "\n";
        }
    write_file(config.out_dir + "/synthetic.csv", out.str());
    std::cout << "synth: " << sites.size() << " sites -> " << config.out_dir
              << "/synthetic.csv\n";
    return 0;
}

int cmd_validate(const ExperimentConfig& config) {
    if (config.use_synthetic)
        throw ConfigError("validate requires a csv data source in the config");
    const LoadResult data = load_csv(config.csv_path, config.schema, config.site_column);
    std::size_t total = 0;
    for (const auto& site : data.sites) {
        std::cout << site.site_id << ": " << site.n_rows() << " rows\n";
        total += site.n_rows();
    }
    std::cout << "total: " << total << " rows, " << data.rows_dropped
              << " incomplete rows dropped\n";
    return 0;
}

}  // namespace fedsurvey
