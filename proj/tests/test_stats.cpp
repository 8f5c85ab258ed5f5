#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "fedsurvey/rng.hpp"
#include "fedsurvey/special.hpp"
#include "fedsurvey/stats.hpp"
#include "fixtures/stats_fixtures.h"

using namespace fedsurvey;

namespace {

template <std::size_t N>
std::vector<double> vec(const double (&a)[N]) {
    return std::vector<double>(a, a + N);
}

}  // namespace

TEST_CASE("shapiro-wilk matches reference fixtures") {
    const std::vector<std::vector<double>> samples = {
        vec(fixtures::kShapiroSample0), vec(fixtures::kShapiroSample1),
        vec(fixtures::kShapiroSample2), vec(fixtures::kShapiroSample3),
        vec(fixtures::kShapiroSample4), vec(fixtures::kShapiroSample5),
    };
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const auto r = shapiro_wilk(samples[i]);
        CHECK(std::fabs(r.w - fixtures::kShapiroExpected[i][1]) < 1e-6);
        CHECK(std::fabs(r.p - fixtures::kShapiroExpected[i][2]) < 1e-3);
    }
}

TEST_CASE("shapiro-wilk on exact normal quantiles scores high") {
    std::vector<double> q;
    for (int i = 1; i <= 10; ++i)
        q.push_back(std_normal_quantile(i / 11.0));
    CHECK(shapiro_wilk(q).w > 0.97);
}

TEST_CASE("shapiro-wilk flags the gross outlier sample") {
    CHECK(shapiro_wilk({1, 2, 3, 4, 100}).p < 0.05);
}

TEST_CASE("shapiro-wilk edge cases") {
    CHECK_THROWS_AS(shapiro_wilk({5, 5, 5, 5}), StatsError);
    CHECK_THROWS_AS(shapiro_wilk({1, 2}), StatsError);
}

TEST_CASE("bartlett matches reference fixtures") {
    const std::vector<std::pair<std::vector<double>, std::vector<double>>> pairs = {
        {vec(fixtures::kBartlettA0), vec(fixtures::kBartlettB0)},
        {vec(fixtures::kBartlettA1), vec(fixtures::kBartlettB1)},
        {vec(fixtures::kBartlettA2), vec(fixtures::kBartlettB2)},
        {vec(fixtures::kBartlettA3), vec(fixtures::kBartlettB3)},
    };
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const auto r = bartlett(pairs[i].first, pairs[i].second);
        CHECK(std::fabs(r.statistic - fixtures::kBartlettExpected[i][2]) < 1e-6);
        CHECK(std::fabs(r.p - fixtures::kBartlettExpected[i][3]) < 1e-3);
    }
}

TEST_CASE("bartlett on shifted copies is exactly null") {
    const std::vector<double> a = {1, 2, 3, 4, 5};
    std::vector<double> b;
    for (double v : a) b.push_back(v + 10.0);
    const auto r = bartlett(a, b);
    CHECK(r.statistic == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(r.p == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(bartlett(a, a).statistic == doctest::Approx(0.0));
}

TEST_CASE("bartlett detects a variance ratio of 100") {
    std::vector<double> a, b;
    Rng rng(7);
    for (int i = 0; i < 20; ++i) {
        a.push_back(rng.normal());
        b.push_back(10.0 * rng.normal());
    }
    CHECK(bartlett(a, b).p < 0.01);
    CHECK_THROWS_AS(bartlett({1, 1, 1}, {1, 2, 3}), StatsError);
}

TEST_CASE("t tests match reference fixtures") {
    const std::vector<std::pair<std::vector<double>, std::vector<double>>> pairs = {
        {vec(fixtures::kTTestA0), vec(fixtures::kTTestB0)},
        {vec(fixtures::kTTestA1), vec(fixtures::kTTestB1)},
        {vec(fixtures::kTTestA2), vec(fixtures::kTTestB2)},
        {vec(fixtures::kTTestA3), vec(fixtures::kTTestB3)},
    };
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const auto& e = fixtures::kTTestExpected[i];
        const auto s = t_test_one_sided(pairs[i].first, pairs[i].second,
                                        TestVariant::kStudent, Alternative::kAGreater);
        CHECK(std::fabs(s.t - e[2]) < 1e-6);
        CHECK(std::fabs(s.p - e[3]) < 1e-3);
        CHECK(s.df == doctest::Approx(e[4]));
        const auto w = t_test_one_sided(pairs[i].first, pairs[i].second,
                                        TestVariant::kWelch, Alternative::kAGreater);
        CHECK(std::fabs(w.t - e[5]) < 1e-6);
        CHECK(std::fabs(w.p - e[6]) < 1e-3);
        CHECK(std::fabs(w.df - e[7]) < 1e-6);
    }
}

TEST_CASE("t test hand-computed case") {
    // pooled sd = sqrt(2.5), mean diff = -1 -> t = -1, df = 8
    const auto r = t_test_one_sided({1, 2, 3, 4, 5}, {2, 3, 4, 5, 6},
                                    TestVariant::kStudent, Alternative::kALess);
    CHECK(r.t == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(r.df == doctest::Approx(8.0));
    CHECK(r.p == doctest::Approx(t_cdf(-1.0, 8.0)).epsilon(1e-12));
}

TEST_CASE("t test degenerate and forced cases") {
    const std::vector<double> a = {1, 2, 3, 4, 5};
    const auto same = t_test_one_sided(a, a, TestVariant::kStudent, Alternative::kAGreater);
    CHECK(same.t == doctest::Approx(0.0));
    CHECK(same.p == doctest::Approx(0.5).epsilon(1e-12));

    std::vector<double> shifted;
    for (double v : a) shifted.push_back(v + 10.0);
    CHECK(t_test_one_sided(shifted, a, TestVariant::kWelch, Alternative::kAGreater).p <
          0.001);

    const auto constant = t_test_one_sided({3, 3, 3}, {3, 3, 3}, TestVariant::kStudent,
                                           Alternative::kAGreater);
    CHECK(constant.p == doctest::Approx(0.5));
    CHECK_THROWS_AS(t_test_one_sided({3, 3, 3}, {4, 4, 4}, TestVariant::kStudent,
                                     Alternative::kAGreater),
                    StatsError);
}

TEST_CASE("student equals welch for equal sizes and equal variances") {
    const std::vector<double> a = {1, 2, 3, 4, 5};
    const std::vector<double> b = {4, 5, 6, 7, 8};
    const auto s = t_test_one_sided(a, b, TestVariant::kStudent, Alternative::kALess);
    const auto w = t_test_one_sided(a, b, TestVariant::kWelch, Alternative::kALess);
    CHECK(std::fabs(s.t - w.t) < 1e-12);
    CHECK(std::fabs(s.df - w.df) < 1e-12);
    CHECK(std::fabs(s.p - w.p) < 1e-12);
}

namespace {

// Builds a 5-element sample that passes (true) or fails (false) the normality
// gate, with controllable variance scale so the Bartlett gate can be toggled.
std::vector<double> gate_sample(bool normal_like, double scale, double shift = 0.0) {
    if (normal_like) return {shift - 1.2 * scale, shift - 0.5 * scale, shift,
                             shift + 0.5 * scale, shift + 1.2 * scale};
    return {shift, shift + 0.01 * scale, shift + 0.02 * scale, shift + 0.03 * scale,
            shift + 40.0 * scale};
}

}  // namespace

TEST_CASE("decide_and_test selects the mandated branch for all 8 gate outcomes") {
    // Gate bits: (shapiro A pass, shapiro B pass, bartlett pass).
    for (int bits = 0; bits < 8; ++bits) {
        const bool sa = bits & 1, sb = bits & 2, bp = bits & 4;
        const auto a = gate_sample(sa, 1.0);
        const auto b = gate_sample(sb, bp ? 1.0 : 50.0, 0.1);
        // Verify the constructed samples actually produce the intended gates.
        REQUIRE((shapiro_wilk(a).p > 0.05) == sa);
        REQUIRE((shapiro_wilk(b).p > 0.05) == sb);
        const bool bartlett_pass = bartlett(a, b).p > 0.05;
        if (bp != bartlett_pass) continue;  // only assert on realizable combos
        SampleTriple triple{b, a, a};       // pair (C=a, L=b) carries the gates
        const auto reports = decide_and_test(triple, Polarity::kHigherBetter);
        const bool want_student = sa && sb && bartlett_pass;
        CHECK(reports[0].test_used ==
              (want_student ? TestVariant::kStudent : TestVariant::kWelch));
    }
}

TEST_CASE("decide_and_test on three identical samples") {
    const std::vector<double> s = {0.31, 0.29, 0.33, 0.30, 0.32};
    const auto reports = decide_and_test({s, s, s}, Polarity::kHigherBetter);
    for (const auto& r : reports) {
        CHECK(r.one_sided_p == doctest::Approx(0.5).epsilon(1e-9));
        CHECK_FALSE(r.significant);
    }
    CHECK(reports[0].comparison == "C>L");
    CHECK(reports[1].comparison == "F>L");
    CHECK(reports[2].comparison == "C>F");
}

TEST_CASE("decide_and_test reproduces the applicability pattern") {
    // F clearly above L, C close to F: F-vs-L significant, C-vs-F not.
    const std::vector<double> l = {0.25, 0.27, 0.26, 0.28, 0.24};
    const std::vector<double> f = {0.33, 0.35, 0.34, 0.36, 0.32};
    const std::vector<double> c = {0.335, 0.345, 0.34, 0.355, 0.325};
    const auto reports = decide_and_test({l, c, f}, Polarity::kHigherBetter);
    CHECK(reports[1].significant);        // F>L
    CHECK_FALSE(reports[2].significant);  // C>F
}

TEST_CASE("decide_and_test outlier forces welch on pairs involving C") {
    const std::vector<double> l = {0.25, 0.27, 0.26, 0.28, 0.24};
    const std::vector<double> f = {0.26, 0.28, 0.27, 0.29, 0.25};
    const std::vector<double> c = {0.26, 0.27, 0.28, 0.25, 3.00};  // extreme outlier
    REQUIRE(shapiro_wilk(c).p <= 0.05);
    const auto reports = decide_and_test({l, c, f}, Polarity::kHigherBetter);
    CHECK(reports[0].test_used == TestVariant::kWelch);  // C vs L
    CHECK(reports[2].test_used == TestVariant::kWelch);  // C vs F
}

TEST_CASE("decide_and_test lower-better flips the alternative") {
    const std::vector<double> l = {19.0, 19.2, 18.9, 19.1, 19.3};
    const std::vector<double> f = {18.1, 18.3, 18.0, 18.2, 18.4};
    const std::vector<double> c = {18.15, 18.32, 18.05, 18.22, 18.41};
    const auto reports = decide_and_test({l, c, f}, Polarity::kLowerBetter);
    CHECK(reports[1].comparison == "F<L");
    CHECK(reports[1].significant);
    CHECK_FALSE(reports[2].significant);
}

TEST_CASE("scheffe matches reference fixtures") {
    const std::vector<std::vector<std::vector<double>>> cases = {
        {vec(fixtures::kScheffeG0_0), vec(fixtures::kScheffeG0_1), vec(fixtures::kScheffeG0_2)},
        {vec(fixtures::kScheffeG1_0), vec(fixtures::kScheffeG1_1), vec(fixtures::kScheffeG1_2)},
    };
    std::size_t flat = 0;
    for (const auto& groups : cases) {
        const auto p = scheffe_posthoc(groups);
        for (std::size_t i = 0; i < groups.size(); ++i)
            for (std::size_t j = i + 1; j < groups.size(); ++j, ++flat)
                CHECK(std::fabs(p[i][j] - fixtures::kScheffeExpected[flat][3]) < 1e-3);
    }
}

TEST_CASE("scheffe structural properties") {
    const std::vector<std::vector<double>> groups = {
        {1.0, 2.0, 3.0}, {1.0, 2.0, 3.0}, {6.0, 7.0, 8.0}};
    const auto p = scheffe_posthoc(groups);
    CHECK(p[0][1] == doctest::Approx(1.0));  // exactly equal groups
    CHECK(p[0][2] < 0.05);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(p[i][i] == 1.0);
        for (std::size_t j = 0; j < 3; ++j) CHECK(p[i][j] == p[j][i]);
    }
}

TEST_CASE("scheffe detects a 5-sd shift at n=100") {
    std::vector<double> a, b;
    Rng rng(11);
    for (int i = 0; i < 100; ++i) {
        a.push_back(rng.normal());
        b.push_back(5.0 + rng.normal());
    }
    CHECK(scheffe_posthoc({a, b})[0][1] < 1e-6);
}

TEST_CASE("scheffe with k=2 equals the two-sided pooled-t ANOVA p") {
    const std::vector<double> a = {1.2, 2.4, 1.8, 2.9, 2.2, 1.5};
    const std::vector<double> b = {2.0, 3.1, 2.6, 3.4, 2.8, 2.2};
    const auto p = scheffe_posthoc({a, b});
    const auto t = t_test_one_sided(a, b, TestVariant::kStudent, Alternative::kALess);
    const double two_sided = 2.0 * std::min(t.p, 1.0 - t.p);
    CHECK(p[0][1] == doctest::Approx(two_sided).epsilon(1e-9));
}

TEST_CASE("scheffe p never decreases as means move closer") {
    const std::vector<double> base = {-1.0, -0.5, 0.0, 0.5, 1.0};
    double prev = 0.0;
    for (double gap : {4.0, 2.0, 1.0, 0.5, 0.1}) {
        std::vector<double> shifted;
        for (double v : base) shifted.push_back(v + gap);
        const double p = scheffe_posthoc({base, shifted})[0][1];
        CHECK(p >= prev);
        prev = p;
    }
}

TEST_CASE("cohens d matches fixtures and hand values") {
    const std::vector<std::pair<std::vector<double>, std::vector<double>>> pairs = {
        {vec(fixtures::kCohenA0), vec(fixtures::kCohenB0)},
        {vec(fixtures::kCohenA1), vec(fixtures::kCohenB1)},
        {vec(fixtures::kCohenA2), vec(fixtures::kCohenB2)},
    };
    for (std::size_t i = 0; i < pairs.size(); ++i)
        CHECK(std::fabs(cohens_d(pairs[i].first, pairs[i].second) -
                        fixtures::kCohensDExpected[i][2]) < 1e-6);
    // pooled sd = 2 -> d = 0.5
    CHECK(cohens_d({2, 4, 6}, {1, 3, 5}) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("cohens d invariances") {
    Rng rng(3);
    std::vector<double> a, b;
    for (int i = 0; i < 25; ++i) {
        a.push_back(rng.normal() + 1.0);
        b.push_back(rng.normal() * 1.5);
    }
    const double d = cohens_d(a, b);
    CHECK(cohens_d(b, a) == doctest::Approx(-d).epsilon(1e-12));

    std::vector<double> a_shift = a, b_shift = b, a_scale = a, b_scale = b;
    for (double& v : a_shift) v += 7.5;
    for (double& v : b_shift) v += 7.5;
    for (double& v : a_scale) v *= 3.0;
    for (double& v : b_scale) v *= 3.0;
    CHECK(cohens_d(a_shift, b_shift) == doctest::Approx(d).epsilon(1e-10));
    CHECK(cohens_d(a_scale, b_scale) == doctest::Approx(d).epsilon(1e-10));

    CHECK(cohens_d({1, 2, 3}, {1, 2, 3}) == doctest::Approx(0.0));
    CHECK_THROWS_AS(cohens_d({2, 2, 2}, {2, 2, 2}), StatsError);
}
