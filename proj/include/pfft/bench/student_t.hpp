#pragma once

namespace pfft::bench {

// Regularized incomplete beta function I_x(a, b), continued-fraction
// evaluation. a, b > 0; x in [0, 1].
double regularized_incomplete_beta(double a, double b, double x);

// CDF of the Student t distribution with dof degrees of freedom.
double student_t_cdf(double t, int dof);

// Quantile of the Student t distribution, inverted by bisection on the CDF
// to an interval width of 1e-10. The default is the one-sided convention the
// measurement loop uses: P(T <= result) = confidence_level. With
// two_sided = true the returned value satisfies
// P(|T| <= result) = confidence_level instead.
// confidence_level must lie in (0, 1); dof must be >= 1.
// t_critical(0.5, dof) is exactly 0.
double t_critical(double confidence_level, int dof, bool two_sided = false);

}  // namespace pfft::bench
