#include "fedsurvey/stats.hpp"

#include <algorithm>
#include <cmath>

#include "fedsurvey/special.hpp"

namespace fedsurvey {

double mean(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

double sample_variance(const std::vector<double>& v) {
    const double mu = mean(v);
    double ss = 0.0;
    for (double x : v) ss += (x - mu) * (x - mu);
    return ss / static_cast<double>(v.size() - 1);
}

// Shapiro-Wilk W and p-value, Royston's AS R94 approximation (3 <= n <= 5000).
ShapiroResult shapiro_wilk(const std::vector<double>& x) {
    const std::size_t n = x.size();
    if (n < 3 || n > 5000)
        throw StatsError("SizeOutOfRange: shapiro_wilk needs 3 <= n <= 5000, got " +
                         std::to_string(n));
    std::vector<double> sorted = x;
    std::sort(sorted.begin(), sorted.end());
    if (sorted.front() == sorted.back())
        throw StatsError("ConstantSample: shapiro_wilk");

    const double dn = static_cast<double>(n);
    // Expected normal order statistics (Blom scores).
    std::vector<double> m(n);
    for (std::size_t i = 0; i < n; ++i)
        m[i] = std_normal_quantile((static_cast<double>(i + 1) - 0.375) / (dn + 0.25));
    double ssumm = 0.0;
    for (double v : m) ssumm += v * v;

    std::vector<double> a(n);
    const double rsn = 1.0 / std::sqrt(dn);
    if (n == 3) {
        a[0] = -std::sqrt(0.5);
        a[2] = std::sqrt(0.5);
        a[1] = 0.0;
    } else {
        const double norm = 1.0 / std::sqrt(ssumm);
        const double an =
            -2.706056 * std::pow(rsn, 5) + 4.434685 * std::pow(rsn, 4) -
            2.071190 * std::pow(rsn, 3) - 0.147981 * rsn * rsn + 0.221157 * rsn +
            m[n - 1] * norm;
        if (n <= 5) {
            const double phi = (ssumm - 2.0 * m[n - 1] * m[n - 1]) / (1.0 - 2.0 * an * an);
            a[n - 1] = an;
            a[0] = -an;
            for (std::size_t i = 1; i + 1 < n; ++i) a[i] = m[i] / std::sqrt(phi);
        } else {
            const double an1 =
                -3.582633 * std::pow(rsn, 5) + 5.682633 * std::pow(rsn, 4) -
                1.752461 * std::pow(rsn, 3) - 0.293762 * rsn * rsn + 0.042981 * rsn +
                m[n - 2] * norm;
            const double phi =
                (ssumm - 2.0 * m[n - 1] * m[n - 1] - 2.0 * m[n - 2] * m[n - 2]) /
                (1.0 - 2.0 * an * an - 2.0 * an1 * an1);
            a[n - 1] = an;
            a[n - 2] = an1;
            a[0] = -an;
            a[1] = -an1;
            for (std::size_t i = 2; i + 2 < n; ++i) a[i] = m[i] / std::sqrt(phi);
        }
    }

    const double xbar = mean(sorted);
    double numerator = 0.0;
    double denominator = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        numerator += a[i] * sorted[i];
        denominator += (sorted[i] - xbar) * (sorted[i] - xbar);
    }
    ShapiroResult result;
    result.w = numerator * numerator / denominator;
    result.w = std::min(result.w, 1.0);

    if (n == 3) {
        const double pi6 = 6.0 / M_PI;
        const double stqr = std::asin(std::sqrt(0.75));
        result.p = pi6 * (std::asin(std::sqrt(result.w)) - stqr);
        result.p = std::clamp(result.p, 0.0, 1.0);
        return result;
    }

    double mu, sigma, y;
    if (n <= 11) {
        const double g = -2.273 + 0.459 * dn;
        y = -std::log(g - std::log1p(-result.w));
        mu = 0.5440 - 0.39978 * dn + 0.025054 * dn * dn - 0.0006714 * dn * dn * dn;
        sigma = std::exp(1.3822 - 0.77857 * dn + 0.062767 * dn * dn -
                         0.0020322 * dn * dn * dn);
    } else {
        const double ln = std::log(dn);
        y = std::log1p(-result.w);
        mu = -1.5861 - 0.31082 * ln - 0.083751 * ln * ln + 0.0038915 * ln * ln * ln;
        sigma = std::exp(-0.4803 - 0.082676 * ln + 0.0030302 * ln * ln);
    }
    result.p = 1.0 - std_normal_cdf((y - mu) / sigma);
    return result;
}

BartlettResult bartlett(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() < 2 || y.size() < 2) throw StatsError("bartlett: each sample needs n >= 2");
    const double na = static_cast<double>(x.size());
    const double nb = static_cast<double>(y.size());
    const double va = sample_variance(x);
    const double vb = sample_variance(y);
    if (va <= 0.0 || vb <= 0.0) throw StatsError("ZeroVariance: bartlett");

    const double big_n = na + nb;
    const double pooled = ((na - 1.0) * va + (nb - 1.0) * vb) / (big_n - 2.0);
    const double correction =
        1.0 + (1.0 / (na - 1.0) + 1.0 / (nb - 1.0) - 1.0 / (big_n - 2.0)) / 3.0;
    double stat = ((big_n - 2.0) * std::log(pooled) - (na - 1.0) * std::log(va) -
                   (nb - 1.0) * std::log(vb)) /
                  correction;
    stat = std::max(stat, 0.0);  // rounding can push the equal-variance case below 0

    BartlettResult result;
    result.statistic = stat;
    result.p = chi2_sf(stat, 1.0);
    return result;
}

TTestResult t_test_one_sided(const std::vector<double>& a, const std::vector<double>& b,
                             TestVariant variant, Alternative alternative) {
    if (a.size() < 2 || b.size() < 2)
        throw StatsError("t_test: each sample needs n >= 2");
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    const double va = sample_variance(a);
    const double vb = sample_variance(b);
    const double diff = mean(a) - mean(b);
    if (va == 0.0 && vb == 0.0) {
        if (diff != 0.0) throw StatsError("ZeroVariance: t_test on two constant samples");
        // Degenerate identical-sample case: t = 0, one-sided p = 0.5.
        return {0.0, na + nb - 2.0, 0.5};
    }

    TTestResult result;
    if (variant == TestVariant::kStudent) {
        const double pooled = ((na - 1.0) * va + (nb - 1.0) * vb) / (na + nb - 2.0);
        result.df = na + nb - 2.0;
        result.t = diff / std::sqrt(pooled * (1.0 / na + 1.0 / nb));
    } else {
        const double sa = va / na;
        const double sb = vb / nb;
        result.df = (sa + sb) * (sa + sb) /
                    (sa * sa / (na - 1.0) + sb * sb / (nb - 1.0));
        result.t = diff / std::sqrt(sa + sb);
    }
    result.p = alternative == Alternative::kAGreater ? 1.0 - t_cdf(result.t, result.df)
                                                     : t_cdf(result.t, result.df);
    return result;
}

namespace {

HypothesisReport run_pair(const std::vector<double>& a, const std::vector<double>& b,
                          double shapiro_a, double shapiro_b, const std::string& label,
                          Alternative alternative) {
    HypothesisReport report;
    report.comparison = label;
    report.shapiro_p_a = shapiro_a;
    report.shapiro_p_b = shapiro_b;
    report.bartlett_p = bartlett(a, b).p;
    const bool gates_pass =
        shapiro_a > 0.05 && shapiro_b > 0.05 && report.bartlett_p > 0.05;
    report.test_used = gates_pass ? TestVariant::kStudent : TestVariant::kWelch;
    const TTestResult t = t_test_one_sided(a, b, report.test_used, alternative);
    report.t_statistic = t.t;
    report.df = t.df;
    report.one_sided_p = t.p;
    report.significant = t.p < 0.05;
    return report;
}

}  // namespace

std::array<HypothesisReport, 3> decide_and_test(const SampleTriple& triple,
                                                Polarity polarity) {
    const auto& l = triple.locals;
    const auto& c = triple.centralized;
    const auto& f = triple.federated;
    if (l.size() != c.size() || c.size() != f.size() || l.size() < 3)
        throw StatsError("decide_and_test: samples must share length >= 3");

    const double sl = shapiro_wilk(l).p;
    const double sc = shapiro_wilk(c).p;
    const double sf = shapiro_wilk(f).p;

    const bool higher = polarity == Polarity::kHigherBetter;
    const Alternative alt = higher ? Alternative::kAGreater : Alternative::kALess;
    const char* rel = higher ? ">" : "<";
    return {
        run_pair(c, l, sc, sl, std::string("C") + rel + "L", alt),
        run_pair(f, l, sf, sl, std::string("F") + rel + "L", alt),
        run_pair(c, f, sc, sf, std::string("C") + rel + "F", alt),
    };
}

std::vector<std::vector<double>> scheffe_posthoc(
    const std::vector<std::vector<double>>& groups) {
    const std::size_t k = groups.size();
    if (k < 2) throw StatsError("scheffe_posthoc: need >= 2 groups");
    double big_n = 0.0;
    for (const auto& g : groups) {
        if (g.size() < 2) throw StatsError("scheffe_posthoc: each group needs n >= 2");
        big_n += static_cast<double>(g.size());
    }

    std::vector<double> means(k);
    double sse = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        means[i] = mean(groups[i]);
        for (double v : groups[i]) sse += (v - means[i]) * (v - means[i]);
    }
    const double dk = static_cast<double>(k);
    const double mse = sse / (big_n - dk);

    std::vector<std::vector<double>> p(k, std::vector<double>(k, 1.0));
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i + 1; j < k; ++j) {
            double pij;
            const double num = (means[i] - means[j]) * (means[i] - means[j]);
            if (mse == 0.0) {
                pij = num == 0.0 ? 1.0 : 0.0;
            } else {
                const double ni = static_cast<double>(groups[i].size());
                const double nj = static_cast<double>(groups[j].size());
                const double fstat = num / (mse * (1.0 / ni + 1.0 / nj) * (dk - 1.0));
                pij = f_sf(fstat, dk - 1.0, big_n - dk);
            }
            p[i][j] = p[j][i] = pij;
        }
    }
    return p;
}

double cohens_d(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() < 2 || b.size() < 2) throw StatsError("cohens_d: each sample needs n >= 2");
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    const double pooled =
        ((na - 1.0) * sample_variance(a) + (nb - 1.0) * sample_variance(b)) /
        (na + nb - 2.0);
    if (pooled <= 0.0) throw StatsError("ZeroVariance: cohens_d");
    return (mean(a) - mean(b)) / std::sqrt(pooled);
}

}  // namespace fedsurvey
