#pragma once

#include "fedsurvey/config.hpp"

namespace fedsurvey {

// Subcommand bodies. Each writes its result files into config.out_dir and
// returns 0; failures are reported by throwing (ConfigError, DataError, ...),
// which the CLI entry point maps to exit codes.
int cmd_run(const ExperimentConfig& config);
int cmd_subsample(const ExperimentConfig& config);
int cmd_heterogeneity(const ExperimentConfig& config);
int cmd_synth(const ExperimentConfig& config);
int cmd_validate(const ExperimentConfig& config);

}  // namespace fedsurvey
