#pragma once

#include <array>
#include <string>
#include <vector>

#include "fedsurvey/errors.hpp"

namespace fedsurvey {

enum class Polarity { kHigherBetter, kLowerBetter };
enum class TestVariant { kStudent, kWelch };
enum class Alternative { kAGreater, kALess };

struct ShapiroResult {
    double w = 0.0;
    double p = 0.0;
};

struct BartlettResult {
    double statistic = 0.0;
    double p = 0.0;
};

struct TTestResult {
    double t = 0.0;
    double df = 0.0;
    double p = 0.0;  // one-sided, matching the requested alternative
};

// Per-fold metric series for the three scenarios.
struct SampleTriple {
    std::vector<double> locals;       // average-of-locals per fold
    std::vector<double> centralized;  // centralized per fold
    std::vector<double> federated;    // federated per fold
};

struct HypothesisReport {
    std::string comparison;  // "C>L", "F>L", "C>F" (or the '<' variants)
    TestVariant test_used = TestVariant::kStudent;
    double shapiro_p_a = 0.0;
    double shapiro_p_b = 0.0;
    double bartlett_p = 0.0;
    double t_statistic = 0.0;
    double df = 0.0;
    double one_sided_p = 0.0;
    bool significant = false;  // at alpha = 0.05
};

struct HeterogeneityCell {
    std::string variable;
    std::string site_a;
    std::string site_b;
    double scheffe_p = 0.0;
    double cohens_d = 0.0;
};

ShapiroResult shapiro_wilk(const std::vector<double>& x);

BartlettResult bartlett(const std::vector<double>& x, const std::vector<double>& y);

TTestResult t_test_one_sided(const std::vector<double>& a, const std::vector<double>& b,
                             TestVariant variant, Alternative alternative);

// Runs the full gated decision procedure for the three pairwise comparisons
// (C vs L, F vs L, C vs F). Student's t is used only when both samples pass
// the normality gate and the pair passes the equal-variance gate at 0.05.
std::array<HypothesisReport, 3> decide_and_test(const SampleTriple& triple,
                                                Polarity polarity);

// Pairwise Scheffe p-value matrix (symmetric, unit diagonal).
std::vector<std::vector<double>> scheffe_posthoc(
    const std::vector<std::vector<double>>& groups);

double cohens_d(const std::vector<double>& a, const std::vector<double>& b);

double mean(const std::vector<double>& v);
double sample_variance(const std::vector<double>& v);

}  // namespace fedsurvey
