#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fedsurvey/errors.hpp"

namespace fedsurvey {

enum class FeatureKind { kContinuous, kOrdinal, kBinary, kNominal };
enum class TaskKind { kRegression, kClassification };

struct Bounds {
    double min = 0.0;
    double max = 0.0;
};

struct FeatureSpec {
    std::string name;
    FeatureKind kind = FeatureKind::kContinuous;
    std::optional<Bounds> bounds;
};

struct Schema {
    std::vector<FeatureSpec> features;  // the m predictors, ordered
    FeatureSpec target;
    TaskKind task = TaskKind::kRegression;

    std::size_t feature_count() const { return features.size(); }
    void validate() const;
};

// Column-typed rows of one site. X is row-major n x m.
struct SiteTable {
    std::string site_id;
    std::size_t n_features = 0;
    std::vector<double> x;
    std::vector<double> y;

    std::size_t n_rows() const { return y.size(); }
    const double* row(std::size_t i) const { return x.data() + i * n_features; }
};

struct LoadResult {
    std::vector<SiteTable> sites;
    std::size_t rows_dropped = 0;  // incomplete rows removed at ingestion
};

// Per-site fold assignment: fold id in [0, k) per row index.
struct FoldPlan {
    std::size_t k = 0;
    std::map<std::string, std::vector<std::size_t>> assignment;

    std::vector<std::size_t> train_indices(const std::string& site, std::size_t fold) const;
    std::vector<std::size_t> test_indices(const std::string& site, std::size_t fold) const;
};

enum class BalanceProvenance { kSupersampled, kSubsampled };

// Row indices into the table the set was drawn from (duplicates allowed only
// for supersampled sets).
struct BalancedSet {
    std::vector<std::size_t> indices;
    BalanceProvenance provenance = BalanceProvenance::kSupersampled;
    std::uint64_t seed = 0;
};

struct BalancedSubsetsResult {
    std::vector<BalancedSet> subsets;
    bool truncated = false;  // fewer subsets than requested (larger class exhausted)
};

struct SynthSite {
    std::string site_id;
    std::size_t n = 0;
    std::vector<double> feature_shift;  // per-feature mean shift; empty = all zero
    double target_shift = 0.0;          // site-level shift added to the outcome
};

struct SynthSpec {
    std::vector<SynthSite> sites;
    Schema schema;
    double noise_sd = 1.0;
    std::uint64_t seed = 0;
};

LoadResult load_csv(const std::string& path, const Schema& schema,
                    const std::string& site_column);

FoldPlan make_fold_plan(const std::vector<SiteTable>& sites, std::size_t k,
                        std::uint64_t seed);

// Balances a binary-outcome training split by drawing extra rows from the
// smaller class, with replacement. `train` holds row indices into `table`.
BalancedSet supersample_balance(const SiteTable& table,
                                const std::vector<std::size_t>& train,
                                std::uint64_t seed);

// Splits a merged test set (labels only) into up to `count` balanced subsets
// whose larger-class portions are pairwise disjoint.
BalancedSubsetsResult balanced_test_subsets(const std::vector<double>& labels,
                                            std::size_t count, std::uint64_t seed);

// Uniform draw without replacement of ceil(fraction * n) training rows.
std::vector<std::size_t> subsample_training(const std::vector<std::size_t>& train,
                                            double fraction, std::uint64_t seed,
                                            const std::string& site_id);

std::vector<SiteTable> generate_synthetic(const SynthSpec& spec);

// Fixed latent weights of the synthetic outcome, shared with tests.
std::vector<double> synthetic_latent_weights(std::size_t m);

}  // namespace fedsurvey
