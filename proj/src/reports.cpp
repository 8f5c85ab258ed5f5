#include <cstdio>
#include <fstream>
#include <sstream>

#include "fedsurvey/metrics.hpp"
#include "fedsurvey/reports.hpp"

namespace fedsurvey {

namespace {

std::string provenance_line(const ExperimentConfig& config) {
    return "# config_hash=" + config.hash + " seed=" + std::to_string(config.seed) + "\n";
}

std::vector<std::string> task_metrics(const ExperimentConfig& config) {
    return config.schema.task == TaskKind::kClassification
               ? std::vector<std::string>{"accuracy", "auroc"}
               : std::vector<std::string>{"r2", "rmse"};
}

Polarity metric_polarity(const std::string& metric) {
    return metric == "rmse" ? Polarity::kLowerBetter : Polarity::kHigherBetter;
}

std::string metric_label(const std::string& metric) {
    if (metric == "r2") return "R-squared";
    if (metric == "rmse") return "RMSE";
    if (metric == "accuracy") return "Accuracy";
    if (metric == "auroc") return "AUROC";
    return metric;
}

std::string fixed4(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.4f", v);
    return buf;
}

std::string test_name(TestVariant v) {
    return v == TestVariant::kStudent ? "student" : "welch";
}

void append_hypothesis_rows(std::ostringstream& out, const ExperimentResult& result,
                            const ExperimentConfig& config, const std::string& prefix) {
    for (const auto& algorithm : config.algorithms)
        for (const auto& metric : task_metrics(config)) {
            const SampleTriple triple = result.triple(algorithm, metric);
            const auto reports = decide_and_test(triple, metric_polarity(metric));
            for (const auto& r : reports)
                out << prefix << algorithm << "," << metric << "," << r.comparison << ","
                    << test_name(r.test_used) << "," << format_double(r.shapiro_p_a) << ","
                    << format_double(r.shapiro_p_b) << "," << format_double(r.bartlett_p)
                    << "," << format_double(r.t_statistic) << "," << format_double(r.df)
                    << "," << format_double(r.one_sided_p) << ","
                    << significance_mark(r.one_sided_p) << "\n";
        }
}

}  // namespace

std::string significance_mark(double p) {
    if (p < 0.001) return "***";
    if (p < 0.01) return "**";
    if (p < 0.05) return "*";
    return "n.s.";
}

std::string render_results_csv(const ExperimentResult& result,
                               const ExperimentConfig& config) {
    std::ostringstream out;
    out << provenance_line(config);
    out << "fold,scenario,algorithm,metric,subset,value\n";
    for (const auto& r : result.records)
        out << r.fold << "," << r.scenario << "," << r.algorithm << "," << r.metric << ","
            << r.subset << "," << format_double(r.value) << "\n";
    return out.str();
}

std::string render_summary_md(const ExperimentResult& result,
                              const ExperimentConfig& config) {
    std::ostringstream out;
    out << "# Experiment summary\n\n";
    out << "config_hash: `" << config.hash << "`  \nseed: " << config.seed
        << "  \nfolds: " << result.folds << "\n";
    for (const auto& algorithm : config.algorithms) {
        out << "\n## " << (algorithm == "linear" ? "Linear regression" : "Random forest")
            << "\n\n";
        out << "| Metric | Average of Locals | Centralized | Federated | Relative "
               "Improvement |\n";
        out << "|---|---|---|---|---|\n";
        for (const auto& metric : task_metrics(config)) {
            const double l = result.mean_metric("local_avg", algorithm, metric);
            const double c = result.mean_metric("centralized", algorithm, metric);
            const double f = result.mean_metric("federated", algorithm, metric);
            const double rel = relative_improvement(f, l, metric_polarity(metric));
            out << "| " << metric_label(metric) << " | " << fixed4(l) << " | " << fixed4(c)
                << " | " << fixed4(f) << " | " << fixed4(rel) << "% |\n";
        }
    }
    return out.str();
}

std::string render_hypotheses_csv(const ExperimentResult& result,
                                  const ExperimentConfig& config) {
    std::ostringstream out;
    out << provenance_line(config);
    out << "algorithm,metric,comparison,test_used,shapiro_p_a,shapiro_p_b,bartlett_p,"
           "t_statistic,df,one_sided_p,mark\n";
    append_hypothesis_rows(out, result, config, "");
    return out.str();
}

std::string render_roundlog_csv(const ExperimentResult& result,
                                const ExperimentConfig& config) {
    return provenance_line(config) + result.round_log.to_csv();
}

std::string render_fig3_csv(const ExperimentResult& result,
                            const ExperimentConfig& config) {
    std::ostringstream out;
    out << provenance_line(config);
    out << "algorithm,metric,scenario,fold,subset,value\n";
    for (const auto& r : result.records) {
        if (r.scenario == "local_avg") continue;
        out << r.algorithm << "," << r.metric << "," << r.scenario << "," << r.fold << ","
            << r.subset << "," << format_double(r.value) << "\n";
    }
    return out.str();
}

std::string render_fig4_csv(const std::map<double, ExperimentResult>& by_fraction,
                            const ExperimentConfig& config) {
    std::ostringstream out;
    out << provenance_line(config);
    out << "fraction,algorithm,metric,scenario,mean_value\n";
    for (const auto& [fraction, result] : by_fraction)
        for (const auto& algorithm : config.algorithms)
            for (const auto& metric : task_metrics(config))
                for (const std::string scenario :
                     {"local_avg", "centralized", "federated"})
                    out << format_double(fraction) << "," << algorithm << "," << metric
                        << "," << scenario << ","
                        << format_double(result.mean_metric(scenario, algorithm, metric))
                        << "\n";
    return out.str();
}

std::string render_subsample_hypotheses_csv(
    const std::map<double, ExperimentResult>& by_fraction,
    const ExperimentConfig& config) {
    std::ostringstream out;
    out << provenance_line(config);
    out << "fraction,algorithm,metric,comparison,test_used,shapiro_p_a,shapiro_p_b,"
           "bartlett_p,t_statistic,df,one_sided_p,mark\n";
    for (const auto& [fraction, result] : by_fraction)
        append_hypothesis_rows(out, result, config, format_double(fraction) + ",");
    return out.str();
}

std::string render_heterogeneity_csv(const std::vector<HeterogeneityCell>& cells,
                                     const std::vector<std::string>& site_ids,
                                     const std::vector<std::string>& variables,
                                     bool scheffe, const ExperimentConfig& config) {
    std::ostringstream out;
    out << provenance_line(config);
    out << "variable";
    for (std::size_t i = 0; i < site_ids.size(); ++i)
        for (std::size_t j = i + 1; j < site_ids.size(); ++j)
            out << "," << site_ids[i] << "vs" << site_ids[j];
    out << "\n";
    for (const auto& variable : variables) {
        out << variable;
        for (std::size_t i = 0; i < site_ids.size(); ++i)
            for (std::size_t j = i + 1; j < site_ids.size(); ++j) {
                bool found = false;
                for (const auto& cell : cells) {
                    if (cell.variable != variable || cell.site_a != site_ids[i] ||
                        cell.site_b != site_ids[j])
                        continue;
                    out << "," << format_double(scheffe ? cell.scheffe_p : cell.cohens_d);
                    found = true;
                    break;
                }
                if (!found) throw StatsError("heterogeneity cell missing: " + variable);
            }
        out << "\n";
    }
    return out.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write '" + path + "'");
    out << content;
    if (!out) throw DataError("write failed for '" + path + "'");
}

}  // namespace fedsurvey
