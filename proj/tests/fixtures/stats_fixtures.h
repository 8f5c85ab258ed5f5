// Generated by tests/fixtures/generate_stats_fixtures.py -- do not edit by hand.
#pragma once

namespace fixtures {

// columns: a, x, P(a,x)
inline constexpr double kGammaP[][3] = {
    {0.5, 0.20000000000000001, 0.47291074313446191},
    {0.5, 1, 0.84270079294971489},
    {1, 1, 0.63212055882855767},
    {2.5, 0.29999999999999999, 0.011996757205906266},
    {2.5, 2.5, 0.58411981300449212},
    {5, 4, 0.37116306482012645},
    {10, 12, 0.75760783832948764},
    {0.5, 1.920723, 0.94999961769226582},
    {25, 20, 0.15677262182623772},
};

// columns: a, b, x, I_x(a,b)
inline constexpr double kBetaInc[][4] = {
    {0.5, 0.5, 0.29999999999999999, 0.36901011956554536},
    {2, 3, 0.40000000000000002, 0.52480000000000004},
    {2.5, 0.5, 0.90000000000000002, 0.48958974456442755},
    {10, 10, 0.5, 0.5},
    {0.5, 4, 0.050000000000000003, 0.46540785173875504},
    {4, 0.5, 0.94999999999999996, 0.53459214826124479},
    {2.5, 2.5, 0.01, 5.3743968195449381e-05},
    {100, 3, 0.98999999999999999, 0.91691101488943971},
};

// columns: df, x, cdf
inline constexpr double kTCdf[][3] = {
    {1, 0, 0.5},
    {1, 1, 0.75000000000000022},
    {5, -2.5710000000000002, 0.024987317341925688},
    {8, -1, 0.17329675354366708},
    {10, 1.8120000000000001, 0.94996236896707642},
    {4, 2.7759999999999998, 0.97498861084001176},
    {30, 2.0419999999999998, 0.97498566467190106},
    {100, 1.96, 0.97361054931688518},
};

// columns: df, x, cdf
inline constexpr double kChi2Cdf[][3] = {
    {1, 3.841458820694124, 0.95000000000000007},
    {2, 5.9909999999999997, 0.94998838497342086},
    {5, 11.07, 0.94999038137759462},
    {1, 0.5, 0.52049987781304663},
    {10, 3.9399999999999999, 0.049986909209909267},
};

// columns: d1, d2, x, cdf
inline constexpr double kFCdf[][4] = {
    {1, 8, 5.3200000000000003, 0.95003966456485223},
    {4, 20, 2.8700000000000001, 0.95021449144751313},
    {2, 10, 4.0999999999999996, 0.94992245151891619},
    {5, 5, 1, 0.50000000000000011},
};

// Shapiro-Wilk: each sample stored separately; results: n, W, p
inline constexpr double kShapiroSample0[] = {1, 2, 3, 4, 100};
inline constexpr double kShapiroSample1[] = {0.10000000000000001, 0.90000000000000002, 2.1000000000000001, 2.8999999999999999, 4.0999999999999996};
inline constexpr double kShapiroSample2[] = {-1.28, -0.52000000000000002, 0, 0.52000000000000002, 1.28, -0.83999999999999997, 0.83999999999999997, -0.25, 0.25, 1.6399999999999999};
inline constexpr double kShapiroSample3[] = {3.1000000000000001, 4.2000000000000002, 2.7999999999999998, 5.5999999999999996, 3.8999999999999999, 4.4000000000000004, 2.2000000000000002, 6.0999999999999996, 3.2999999999999998, 4.7999999999999998, 5.0999999999999996, 2.8999999999999999};
inline constexpr double kShapiroSample4[] = {12, 15, 11, 14, 13, 16, 10, 18, 12.5, 13.5, 14.5, 11.5, 15.5, 12.199999999999999, 13.800000000000001, 16.5, 10.5, 17, 12.800000000000001, 14.199999999999999};
inline constexpr double kShapiroSample5[] = {1, 1, 1, 1, 2, 5, 30};
// columns: n, W, p
inline constexpr double kShapiroExpected[][3] = {
    {5, 0.57730675795325781, 0.00030538885043861241},
    {5, 0.98204832325991165, 0.9452733144357478},
    {10, 0.98604804807553648, 0.98930262027333804},
    {12, 0.96908093310181731, 0.90094072553055571},
    {20, 0.98403624510423793, 0.97507976737800151},
    {7, 0.54450466177299006, 5.8861590995370952e-05},
};

inline constexpr double kBartlettA0[] = {1, 2, 3, 4, 5};
inline constexpr double kBartlettB0[] = {11, 12, 13, 14, 15};
inline constexpr double kBartlettA1[] = {1, 2, 3, 4, 5};
inline constexpr double kBartlettB1[] = {0, 3, 6, 9, 12};
inline constexpr double kBartlettA2[] = {0, 0.052631578947368418, 0.10526315789473684, 0.15789473684210525, 0.21052631578947367, 0.26315789473684209, 0.31578947368421051, 0.36842105263157893, 0.42105263157894735, 0.47368421052631576, 0.52631578947368418, 0.57894736842105265, 0.63157894736842102, 0.68421052631578938, 0.73684210526315785, 0.78947368421052633, 0.84210526315789469, 0.89473684210526305, 0.94736842105263153, 1};
inline constexpr double kBartlettB2[] = {0, 0.52631578947368418, 1.0526315789473684, 1.5789473684210527, 2.1052631578947367, 2.6315789473684208, 3.1578947368421053, 3.6842105263157894, 4.2105263157894735, 4.7368421052631575, 5.2631578947368416, 5.7894736842105257, 6.3157894736842106, 6.8421052631578947, 7.3684210526315788, 7.8947368421052628, 8.4210526315789469, 8.9473684210526319, 9.473684210526315, 10};
inline constexpr double kBartlettA3[] = {2.2999999999999998, 1.8999999999999999, 2.7999999999999998, 3.1000000000000001, 2, 2.6000000000000001};
inline constexpr double kBartlettB3[] = {4, 1, 5.5, 0.5, 3.2000000000000002, 6.0999999999999996};
// columns: na, nb, statistic, p
inline constexpr double kBartlettExpected[][4] = {
    {5, 5, 0, 1},
    {5, 5, 3.6325377690026022, 0.056660356937058384},
    {20, 20, 59.958887777097829, 9.6859619527790266e-15},
    {6, 6, 8.5136134228926377, 0.0035249940981610054},
};

inline constexpr double kTTestA0[] = {1, 2, 3, 4, 5};
inline constexpr double kTTestB0[] = {2, 3, 4, 5, 6};
inline constexpr double kTTestA1[] = {10, 11, 12, 13, 14};
inline constexpr double kTTestB1[] = {9.5, 10, 10.5, 11, 11.5};
inline constexpr double kTTestA2[] = {0.29999999999999999, 0.31, 0.33000000000000002, 0.34999999999999998, 0.32000000000000001};
inline constexpr double kTTestB2[] = {0.28999999999999998, 0.29999999999999999, 0.31, 0.29999999999999999, 0.33000000000000002};
inline constexpr double kTTestA3[] = {1, 4, 2, 8, 3, 9};
inline constexpr double kTTestB3[] = {2.5, 2.6000000000000001, 2.3999999999999999, 2.7000000000000002, 2.5499999999999998};
// columns: na, nb, t_student, p_student_greater, df_student, t_welch, p_welch_greater, df_welch
inline constexpr double kTTestExpected[][8] = {
    {5, 5, -1, 0.82670324645633286, 8, -1, 0.82670324645633286, 8},
    {5, 5, 1.8973665961010275, 0.047174886421218781, 8, 1.8973665961010275, 0.053765597465313592, 5.882352941176471},
    {5, 5, 1.460593486680444, 0.091128499307394292, 8, 1.460593486680444, 0.092131970327833379, 7.586933614330877},
    {6, 5, 1.3202020818992766, 0.10967790664205715, 9, 1.4591977417277515, 0.10208366554957735, 5.0140162006109135},
};

inline constexpr double kScheffeG0_0[] = {1.1000000000000001, 2.2999999999999998, 1.8999999999999999, 2.7999999999999998, 2.2000000000000002};
inline constexpr double kScheffeG0_1[] = {3.5, 4.0999999999999996, 3.7999999999999998, 4.4000000000000004, 3.2000000000000002};
inline constexpr double kScheffeG0_2[] = {1, 1.5, 2, 2.5, 3};
inline constexpr double kScheffeG1_0[] = {10, 11, 9, 10.5, 10.199999999999999, 9.8000000000000007};
inline constexpr double kScheffeG1_1[] = {10.1, 10.9, 9.1999999999999993, 10.4, 10, 9.9000000000000004};
inline constexpr double kScheffeG1_2[] = {14, 15, 13.5, 14.5, 14.199999999999999, 13.800000000000001};
// columns: case_index(flat), i, j, p  (group set 0 pairs first, then set 1)
inline constexpr double kScheffeExpected[][4] = {
    {0, 0, 1, 0.0038832353521584275},
    {1, 0, 2, 0.98920765710909087},
    {2, 1, 2, 0.0030278508946313511},
    {3, 0, 1, 1},
    {4, 0, 2, 2.2638154892148093e-08},
    {5, 1, 2, 2.2638154892148093e-08},
};

inline constexpr double kCohenA0[] = {2, 4, 6};
inline constexpr double kCohenB0[] = {1, 3, 5};
inline constexpr double kCohenA1[] = {1, 2, 3, 4};
inline constexpr double kCohenB1[] = {4, 5, 6, 7};
inline constexpr double kCohenA2[] = {0.5, 1.5, 2.5, 3.5, 4.5};
inline constexpr double kCohenB2[] = {0.59999999999999998, 1.3999999999999999, 2.6000000000000001, 3.3999999999999999, 4.5999999999999996};
// columns: na, nb, d
inline constexpr double kCohensDExpected[][3] = {
    {3, 3, 0.5},
    {4, 4, -2.3237900077244502},
    {5, 5, -0.012633958975454052},
};

}  // namespace fixtures
