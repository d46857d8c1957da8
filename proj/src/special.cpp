#include "gw/special.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace gw::special {

namespace {

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

constexpr double kTiny = 1e-300;
constexpr double kEps = 1e-16;
constexpr int kMaxIterations = 10000;

double lanczos_sum(double z) {
  double sum = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) {
    sum += kLanczos[i] / (z + static_cast<double>(i));
  }
  return sum;
}

// Modified Lentz evaluation of the incomplete beta continued fraction.
double beta_continued_fraction(double a, double b, double x) {
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIterations; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < kEps) return h;
  }
  throw std::runtime_error("incomplete_beta: continued fraction did not converge");
}

double gamma_series(double a, double x) {
  double ap = a;
  double sum = 1.0 / a;
  double term = sum;
  for (int n = 0; n < kMaxIterations; ++n) {
    ap += 1.0;
    term *= x / ap;
    sum += term;
    if (std::abs(term) < std::abs(sum) * kEps) {
      return sum * std::exp(-x + a * std::log(x) - log_gamma(a));
    }
  }
  throw std::runtime_error("incomplete_gamma: series did not converge");
}

double gamma_continued_fraction(double a, double x) {
  double b = x + 1.0 - a;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= kMaxIterations; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < kEps) {
      return std::exp(-x + a * std::log(x) - log_gamma(a)) * h;
    }
  }
  throw std::runtime_error("incomplete_gamma: continued fraction did not converge");
}

}  // namespace

double gamma(double z) {
  if (z < 0.5) {
    return std::numbers::pi / (std::sin(std::numbers::pi * z) * gamma(1.0 - z));
  }
  const double shifted = z - 1.0;
  const double t = shifted + kLanczosG + 0.5;
  return std::sqrt(2.0 * std::numbers::pi) * std::pow(t, shifted + 0.5) *
         std::exp(-t) * lanczos_sum(shifted);
}

double log_gamma(double z) {
  if (z <= 0.0) throw std::domain_error("log_gamma: z must be positive");
  if (z < 0.5) {
    return std::log(std::numbers::pi / std::sin(std::numbers::pi * z)) -
           log_gamma(1.0 - z);
  }
  const double shifted = z - 1.0;
  const double t = shifted + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * std::numbers::pi) + (shifted + 0.5) * std::log(t) -
         t + std::log(lanczos_sum(shifted));
}

double gamma_half_integer(int twice_z) {
  if (twice_z < 1) throw std::domain_error("gamma_half_integer: argument must be positive");
  double value = (twice_z % 2 == 0) ? 1.0 : std::sqrt(std::numbers::pi);
  for (int k = (twice_z % 2 == 0) ? 2 : 1; k + 2 <= twice_z; k += 2) {
    value *= 0.5 * k;
  }
  return value;
}

double incomplete_beta(double a, double b, double x) {
  if (a <= 0.0 || b <= 0.0) throw std::domain_error("incomplete_beta: a, b must be positive");
  if (x < 0.0 || x > 1.0) throw std::domain_error("incomplete_beta: x must lie in [0, 1]");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double log_front = log_gamma(a + b) - log_gamma(a) - log_gamma(b) +
                           a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * beta_continued_fraction(a, b, x) / a;
  }
  return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double incomplete_gamma_p(double a, double x) {
  if (a <= 0.0 || x < 0.0) throw std::domain_error("incomplete_gamma: bad arguments");
  if (x == 0.0) return 0.0;
  if (x < a + 1.0) return gamma_series(a, x);
  return 1.0 - gamma_continued_fraction(a, x);
}

double incomplete_gamma_q(double a, double x) {
  if (a <= 0.0 || x < 0.0) throw std::domain_error("incomplete_gamma: bad arguments");
  if (x == 0.0) return 1.0;
  if (x < a + 1.0) return 1.0 - gamma_series(a, x);
  return gamma_continued_fraction(a, x);
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::domain_error("normal_quantile: p must lie in (0, 1)");
  // Acklam's rational approximation followed by one Halley step.
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                 -2.759285104469687e+02, 1.383577518672690e+02,
                                 -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                 -1.556989798598866e+02, 6.680131188771972e+01,
                                 -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                 -2.400758277161838e+00, -2.549732539343734e+00,
                                 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                 2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double p_low = 0.02425;
  double x;
  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= 1.0 - p_low) {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log1p(-p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double e = normal_cdf(x) - p;
  const double u = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(0.5 * x * x);
  return x - u / (1.0 + 0.5 * x * u);
}

double kolmogorov_survival(double lambda) {
  if (lambda <= 0.0) return 1.0;
  if (lambda < 1.0) {
    // Jacobi theta form of the same function; the alternating series
    // converges too slowly here.
    const double pi2 = std::numbers::pi * std::numbers::pi;
    double cdf = 0.0;
    for (int k = 1; k <= 50; ++k) {
      const double odd = 2.0 * k - 1.0;
      cdf += std::exp(-odd * odd * pi2 / (8.0 * lambda * lambda));
    }
    cdf *= std::sqrt(2.0 * std::numbers::pi) / lambda;
    return std::clamp(1.0 - cdf, 0.0, 1.0);
  }
  double sum = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += (k % 2 == 1) ? term : -term;
    if (term < 1e-18) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

double chi_square_quantile_upper(double dof, double alpha) {
  if (dof <= 0.0 || !(alpha > 0.0 && alpha < 1.0)) {
    throw std::domain_error("chi_square_quantile_upper: bad arguments");
  }
  double lo = 0.0;
  double hi = dof + 10.0 * std::sqrt(2.0 * dof) + 100.0;
  while (incomplete_gamma_q(0.5 * dof, 0.5 * hi) > alpha) hi *= 2.0;
  for (int i = 0; i < 200 && hi - lo > 1e-12 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (incomplete_gamma_q(0.5 * dof, 0.5 * mid) > alpha) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace gw::special
