#pragma once

namespace inspsim {

/// Regularized incomplete beta function I_x(a, b), x in [0, 1], a, b > 0.
/// Continued-fraction evaluation (Lentz), accurate to ~1e-14.
double incomplete_beta(double a, double b, double x);

/// Upper-tail probability P(F > f) of the F distribution with (d1, d2)
/// degrees of freedom. f < 0 returns 1.
double f_tail(double f, double d1, double d2);

/// Two-sided p-value P(|T| > |t|) of Student's t with nu degrees of freedom.
double t_two_sided(double t, double nu);

/// Standard normal CDF.
double normal_cdf(double x);

/// Standard normal quantile function (Acklam's rational approximation with a
/// Halley refinement step). Throws std::domain_error outside (0, 1).
double normal_quantile(double p);

}  // namespace inspsim
