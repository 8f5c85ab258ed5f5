#pragma once

#include <map>
#include <string>
#include <vector>

#include "fedsurvey/config.hpp"
#include "fedsurvey/experiment.hpp"
#include "fedsurvey/stats.hpp"

namespace fedsurvey {

// Significance marking used in every emitted table:
// *** p<0.001, ** p<0.01, * p<0.05, "n.s." otherwise.
std::string significance_mark(double p);

std::string render_results_csv(const ExperimentResult& result, const ExperimentConfig& config);
std::string render_summary_md(const ExperimentResult& result, const ExperimentConfig& config);
std::string render_hypotheses_csv(const ExperimentResult& result,
                                  const ExperimentConfig& config);
std::string render_roundlog_csv(const ExperimentResult& result,
                                const ExperimentConfig& config);
std::string render_fig3_csv(const ExperimentResult& result, const ExperimentConfig& config);

// Subsampling study: fraction -> result (1.0 is the baseline).
std::string render_fig4_csv(const std::map<double, ExperimentResult>& by_fraction,
                            const ExperimentConfig& config);
std::string render_subsample_hypotheses_csv(
    const std::map<double, ExperimentResult>& by_fraction, const ExperimentConfig& config);

// Heterogeneity matrices: one row per variable, one column per site pair
// labeled "XvsY".
std::string render_heterogeneity_csv(const std::vector<HeterogeneityCell>& cells,
                                     const std::vector<std::string>& site_ids,
                                     const std::vector<std::string>& variables,
                                     bool scheffe, const ExperimentConfig& config);

void write_file(const std::string& path, const std::string& content);

}  // namespace fedsurvey
