#pragma once

#include <string>
#include <vector>

#include "fedsurvey/dataset.hpp"
#include "fedsurvey/federation.hpp"

namespace fedsurvey {

// Fully-defaulted experiment configuration. `materialized` is the canonical
// JSON text with every default filled in; it is echoed into the output
// directory and hashed into every emitted file for provenance.
struct ExperimentConfig {
    // data source: either a CSV or the synthetic generator
    bool use_synthetic = true;
    std::string csv_path;
    std::string site_column = "site";
    SynthSpec synth;

    Schema schema;
    std::vector<std::string> algorithms;  // {"linear","rf"} (regression), {"rf"} (classification)
    std::size_t folds = 5;
    std::uint64_t seed = 42;
    FedConfig fed;
    std::vector<double> subsample_fractions;  // besides the 1.0 baseline
    std::size_t test_subsets = 4;
    std::string out_dir = "out";
    int threads = 1;

    std::string materialized;
    std::string hash;  // 16 hex digits over `materialized`
};

ExperimentConfig parse_config_file(const std::string& path);
ExperimentConfig parse_config_text(const std::string& json_text);

// The built-in 5-site benchmark configuration: Table-1-sized sites with
// heterogeneous shifts, 51 features, seed 42.
ExperimentConfig default_synth_config(TaskKind task);

// Materializes sites from the configured source (synthetic or CSV).
LoadResult load_experiment_data(const ExperimentConfig& config);

// Canonical finite-double formatting used by every emitted file.
std::string format_double(double v);

}  // namespace fedsurvey
