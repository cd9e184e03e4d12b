#pragma once

namespace biomon::stats {

// Inverse of the standard normal CDF, Wichura's AS 241 (PPND16) rational
// approximation. Absolute error is far below 1e-7 over (0, 1).
// Throws InvalidParams unless 0 < p < 1.
double normal_quantile(double p);

// Standard normal CDF via erfc.
double normal_cdf(double x);

// Regularized incomplete beta function I_x(a, b), continued fraction
// (modified Lentz). Requires a > 0, b > 0, 0 <= x <= 1.
double reg_inc_beta(double a, double b, double x);

// Student-t CDF and quantile for dof > 0. The quantile is solved by
// safeguarded bisection on the CDF, accurate to near machine precision.
double t_cdf(double x, double dof);
double t_quantile(double p, double dof);

}  // namespace biomon::stats
