#pragma once

namespace fedsurvey {

// Special functions backing every statistical test in the project.
// Accuracy target: <= 1e-10 absolute against high-precision references on the
// fixture grid (tests/fixtures/stats_fixtures.h).

double std_normal_cdf(double x);
double std_normal_quantile(double p);  // inverse of std_normal_cdf, p in (0, 1)

// Regularized lower incomplete gamma P(a, x), a > 0, x >= 0.
double gamma_p(double a, double x);

// Regularized incomplete beta I_x(a, b), a, b > 0, x in [0, 1].
double beta_inc(double a, double b, double x);

double t_cdf(double x, double df);
double chi2_cdf(double x, double df);
double chi2_sf(double x, double df);
double f_cdf(double x, double d1, double d2);
double f_sf(double x, double d1, double d2);

}  // namespace fedsurvey
