#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fedsurvey/dataset.hpp"
#include "fedsurvey/errors.hpp"

namespace fedsurvey {

struct LinearModel {
    double intercept = 0.0;
    std::vector<double> coefficients;
    bool ridged = false;  // set when a rank-deficient design fell back to ridge
};

// Flat tree storage; node 0 is the root. Internal nodes route
// x[feature] <= threshold left, > threshold right.
struct TreeNode {
    int feature = -1;  // -1 marks a leaf
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    double value = 0.0;      // regression leaf mean
    double pos_count = 0.0;  // classification leaf class counts
    double neg_count = 0.0;

    bool is_leaf() const { return feature < 0; }
};

struct Tree {
    std::vector<TreeNode> nodes;
};

struct Forest {
    std::vector<Tree> trees;
    TaskKind task = TaskKind::kRegression;
    std::vector<std::uint64_t> tree_seeds;  // bootstrap stream record, one per tree
};

struct TrainConfig {
    std::size_t n_trees = 100;
    int max_depth = -1;  // -1 = unbounded
    std::size_t min_samples_leaf = 5;
    std::size_t features_per_split = 0;  // 0 = ceil(sqrt(m))
    std::uint64_t seed = 0;
    double ridge_jitter = 1e-8;
};

LinearModel fit_ols(const std::vector<double>& x, const std::vector<double>& y,
                    std::size_t n, std::size_t m, double jitter);

Forest fit_forest(const std::vector<double>& x, const std::vector<double>& y,
                  std::size_t n, std::size_t m, const TrainConfig& config,
                  TaskKind task);

double linear_predict_row(const LinearModel& model, const double* row, std::size_t m);
std::vector<double> linear_predict(const LinearModel& model, const std::vector<double>& x,
                                   std::size_t n, std::size_t m);

// Regression: the tree's leaf mean. Classification: the leaf's positive fraction.
double tree_predict_row(const Tree& tree, const double* row);

// Regression: unweighted mean over trees. Classification: mean positive
// fraction, i.e. the positive-class probability.
std::vector<double> forest_predict(const Forest& forest, const std::vector<double>& x,
                                   std::size_t n, std::size_t m);

inline double classify(double probability) { return probability >= 0.5 ? 1.0 : 0.0; }

std::size_t effective_features_per_split(std::size_t configured, std::size_t m);

// Versioned human-diffable text serialization (docs/model_format.md).
std::string serialize_linear(const LinearModel& model);
std::string serialize_forest(const Forest& forest);
LinearModel parse_linear(const std::string& text);
Forest parse_forest(const std::string& text);

}  // namespace fedsurvey
