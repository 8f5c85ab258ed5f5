#include "fedsurvey/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace fedsurvey {

namespace {

void check_lengths(const std::vector<double>& a, const std::vector<double>& b,
                   std::size_t min_n) {
    if (a.size() != b.size()) throw StatsError("metric: length mismatch");
    if (a.size() < min_n)
        throw StatsError("metric: need at least " + std::to_string(min_n) + " values");
}

}  // namespace

double r_squared(const std::vector<double>& y_true, const std::vector<double>& y_pred) {
    check_lengths(y_true, y_pred, 2);
    const double mu = mean(y_true);
    double ss_res = 0.0, ss_tot = 0.0;
    for (std::size_t i = 0; i < y_true.size(); ++i) {
        ss_res += (y_true[i] - y_pred[i]) * (y_true[i] - y_pred[i]);
        ss_tot += (y_true[i] - mu) * (y_true[i] - mu);
    }
    if (ss_tot == 0.0) throw StatsError("ZeroVariance: r_squared");
    return 1.0 - ss_res / ss_tot;
}

double rmse(const std::vector<double>& y_true, const std::vector<double>& y_pred) {
    check_lengths(y_true, y_pred, 1);
    double ss = 0.0;
    for (std::size_t i = 0; i < y_true.size(); ++i)
        ss += (y_true[i] - y_pred[i]) * (y_true[i] - y_pred[i]);
    return std::sqrt(ss / static_cast<double>(y_true.size()));
}

double accuracy(const std::vector<double>& y_true, const std::vector<double>& y_label) {
    check_lengths(y_true, y_label, 1);
    std::size_t correct = 0;
    for (std::size_t i = 0; i < y_true.size(); ++i)
        if (y_true[i] == y_label[i]) ++correct;
    return static_cast<double>(correct) / static_cast<double>(y_true.size());
}

double auroc(const std::vector<double>& y_true, const std::vector<double>& score) {
    check_lengths(y_true, score, 2);
    std::size_t n_pos = 0;
    for (double y : y_true) n_pos += y == 1.0 ? 1 : 0;
    const std::size_t n_neg = y_true.size() - n_pos;
    if (n_pos == 0 || n_neg == 0) throw StatsError("OneClassOnly: auroc");

    // Rank-sum with midranks for ties.
    std::vector<std::size_t> order(score.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return score[a] < score[b]; });

    double pos_rank_sum = 0.0;
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        while (j + 1 < order.size() && score[order[j + 1]] == score[order[i]]) ++j;
        const double midrank = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t k = i; k <= j; ++k)
            if (y_true[order[k]] == 1.0) pos_rank_sum += midrank;
        i = j + 1;
    }
    const double np = static_cast<double>(n_pos);
    const double nn = static_cast<double>(n_neg);
    return (pos_rank_sum - np * (np + 1.0) / 2.0) / (np * nn);
}

double relative_improvement(double fed, double local, Polarity polarity) {
    if (local == 0.0) throw StatsError("DivisionByZero: relative_improvement");
    const double delta =
        polarity == Polarity::kHigherBetter ? fed - local : local - fed;
    return delta / std::fabs(local) * 100.0;
}

}  // namespace fedsurvey
