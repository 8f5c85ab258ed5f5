#pragma once

#include <string>
#include <vector>

#include "fedsurvey/dataset.hpp"
#include "fedsurvey/federation.hpp"
#include "fedsurvey/metrics.hpp"
#include "fedsurvey/models.hpp"
#include "fedsurvey/stats.hpp"

namespace fedsurvey {

// One metric cell. Scenario is "local:<site>", "local_avg", "centralized" or
// "federated"; subset is the balanced-test-subset index for classification
// metrics and -1 for regression.
struct ResultRecord {
    std::size_t fold = 0;
    std::string scenario;
    std::string algorithm;  // "linear" or "rf"
    std::string metric;     // "r2", "rmse", "accuracy", "auroc"
    int subset = -1;
    double value = 0.0;
};

struct ExperimentResult {
    std::vector<ResultRecord> records;
    RoundLog round_log;
    std::size_t folds = 0;

    // Per-fold series for one (scenario, algorithm, metric); classification
    // subsets are averaged within each fold.
    std::vector<double> per_fold(const std::string& scenario, const std::string& algorithm,
                                 const std::string& metric) const;

    // Mean of per_fold across folds.
    double mean_metric(const std::string& scenario, const std::string& algorithm,
                       const std::string& metric) const;

    SampleTriple triple(const std::string& algorithm, const std::string& metric) const;
};

struct ExperimentSpec {
    Schema schema;
    std::vector<SiteTable> sites;
    FoldPlan fold_plan;
    std::vector<std::string> algorithms;  // subset of {"linear", "rf"}
    FedConfig fed;
    std::uint64_t seed = 0;
    double subsample_fraction = 1.0;  // training rows kept per site, per fold
    std::size_t test_subsets = 4;     // classification balanced test subsets
};

// Fig.-2 style three-scenario run: per fold, local models per site, one
// centralized model on the pooled training rows, one federated model over the
// distributed rows, all evaluated on the identical global test set (regression)
// or on the shared balanced test subsets (classification).
ExperimentResult run_experiment(const ExperimentSpec& spec);

}  // namespace fedsurvey
