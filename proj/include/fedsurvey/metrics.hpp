#pragma once

#include <vector>

#include "fedsurvey/errors.hpp"
#include "fedsurvey/stats.hpp"

namespace fedsurvey {

double r_squared(const std::vector<double>& y_true, const std::vector<double>& y_pred);

double rmse(const std::vector<double>& y_true, const std::vector<double>& y_pred);

double accuracy(const std::vector<double>& y_true, const std::vector<double>& y_label);

// Mann-Whitney formulation: P(score_pos > score_neg) + 0.5 P(tie), via ranks.
double auroc(const std::vector<double>& y_true, const std::vector<double>& score);

double relative_improvement(double fed, double local, Polarity polarity);

}  // namespace fedsurvey
