#pragma once

// Special functions backing the distributions and stats modules.

namespace gw::special {

/// Lanczos approximation (g = 7, 9 terms); relative accuracy ~1e-15 on (0, 30).
double gamma(double z);
double log_gamma(double z);

/// Gamma(twice_z / 2) for a positive integer `twice_z`, built from
/// Gamma(1/2) = sqrt(pi), Gamma(1) = 1 and the recursion Gamma(z+1) = z Gamma(z).
double gamma_half_integer(int twice_z);

/// Regularized incomplete beta I_x(a, b) by Lentz's continued fraction.
double incomplete_beta(double a, double b, double x);

/// Regularized lower / upper incomplete gamma P(a, x), Q(a, x).
double incomplete_gamma_p(double a, double x);
double incomplete_gamma_q(double a, double x);

double normal_cdf(double x);
/// Inverse of normal_cdf on (0, 1).
double normal_quantile(double p);

/// Q_KS(lambda) = 2 sum_{k>=1} (-1)^{k-1} exp(-2 k^2 lambda^2), clamped to [0, 1].
double kolmogorov_survival(double lambda);

/// Upper-tail chi-square quantile: x with Q(dof/2, x/2) = alpha.
double chi_square_quantile_upper(double dof, double alpha);

}  // namespace gw::special
