#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

namespace rgg {

inline constexpr double kInvSqrt2Pi = 0.39894228040143267794;
inline constexpr double kSqrt2 = 1.41421356237309504880;
inline constexpr double kLn2 = 0.69314718055994530942;

inline double std_normal_pdf(double x) {
  return kInvSqrt2Pi * std::exp(-0.5 * x * x);
}

inline double std_normal_cdf(double x) {
  return 0.5 * std::erfc(-x / kSqrt2);
}

namespace detail {

// Acklam's rational approximation to the normal quantile (|rel err| < 1.2e-9),
// used as the Newton starting point.
inline double normal_quantile_estimate(double u) {
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
  const double plow = 0.02425;
  if (u < plow) {
    double q = std::sqrt(-2.0 * std::log(u));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  if (u > 1.0 - plow) {
    double q = std::sqrt(-2.0 * std::log(1.0 - u));
    return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  double q = u - 0.5, r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

}  // namespace detail

// Inverse standard normal CDF, refined to ~1e-15 in probability space by
// safeguarded Newton on the erfc-based CDF.
inline double std_normal_quantile(double u) {
  if (!(u > 0.0 && u < 1.0))
    throw std::domain_error("std_normal_quantile: u must lie in (0,1)");
  double x = detail::normal_quantile_estimate(u);
  double lo = x - 1e-6, hi = x + 1e-6;
  while (std_normal_cdf(lo) > u) lo -= 0.5;
  while (std_normal_cdf(hi) < u) hi += 0.5;
  for (int it = 0; it < 60; ++it) {
    const double f = std_normal_cdf(x) - u;
    if (f > 0.0) hi = x; else lo = x;
    const double deriv = std_normal_pdf(x);
    double step = deriv > 0.0 ? f / deriv : 0.0;
    double next = x - step;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::abs(f) < 4e-16 * (u < 0.5 ? u : 1.0 - u) + 1e-300) break;
    if (next == x) break;
    x = next;
  }
  return x;
}

// c_p > 0 for p < 1/2, with P(Z <= -c_p) = p; a is the normal density there.
struct NormalConstants {
  double c_p;
  double a;
};

inline NormalConstants c_p_of(double p) {
  if (!(p > 0.0 && p < 1.0))
    throw std::domain_error("c_p_of: p must lie in (0,1)");
  const double c = -std_normal_quantile(p);
  return {c, kInvSqrt2Pi * std::exp(-0.5 * c * c)};
}

namespace detail {

// Lentz continued fraction for the regularized incomplete beta.
inline double beta_cont_fraction(double a, double b, double x) {
  constexpr double eps = 1e-16, fpmin = 1e-300;
  const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < fpmin) d = fpmin;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= 50000; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < fpmin) d = fpmin;
    c = 1.0 + aa / c;
    if (std::abs(c) < fpmin) c = fpmin;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < fpmin) d = fpmin;
    c = 1.0 + aa / c;
    if (std::abs(c) < fpmin) c = fpmin;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < eps) break;
  }
  return h;
}

}  // namespace detail

// Regularized incomplete beta I_x(s1,s2). Stable for the very large
// symmetric shape parameters the sphere CDF needs (up to ~5e5).
inline double reg_inc_beta(double x, double s1, double s2) {
  if (!(s1 > 0.0) || !(s2 > 0.0))
    throw std::domain_error("reg_inc_beta: shape parameters must be positive");
  if (!(x >= 0.0 && x <= 1.0))
    throw std::domain_error("reg_inc_beta: x must lie in [0,1]");
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  if (s1 == s2 && x == 0.5) return 0.5;  // exact by symmetry
  const double lfront = std::lgamma(s1 + s2) - std::lgamma(s1) -
                        std::lgamma(s2) + s1 * std::log(x) +
                        s2 * std::log1p(-x);
  const double front = std::exp(lfront);
  if (x < (s1 + 1.0) / (s1 + s2 + 2.0))
    return front * detail::beta_cont_fraction(s1, s2, x) / s1;
  return 1.0 - front * detail::beta_cont_fraction(s2, s1, 1.0 - x) / s2;
}

// CDF of <u,u'> for independent uniform points on S^{d-1}:
// I_{(1+t)/2}((d-1)/2,(d-1)/2).
inline double sphere_ip_cdf(double t, int d) {
  if (d < 2) throw std::domain_error("sphere_ip_cdf: d must be >= 2");
  if (!(t >= -1.0 && t <= 1.0))
    throw std::domain_error("sphere_ip_cdf: t must lie in [-1,1]");
  if (t == -1.0) return 0.0;
  if (t == 1.0) return 1.0;
  const double s = 0.5 * (d - 1);
  return reg_inc_beta(0.5 * (1.0 + t), s, s);
}

// The edge threshold: the unique tau with P(<u,u'> < tau) = p.
// Bisection on [-1,1]; the CDF is continuous and strictly increasing.
inline double solve_tau(int d, double p) {
  if (d < 2) throw std::domain_error("solve_tau: d must be >= 2");
  if (!(p > 0.0 && p < 1.0))
    throw std::domain_error("solve_tau: p must lie in (0,1)");
  double lo = -1.0, hi = 1.0;
  double t = 0.0;
  for (int it = 0; it < 200; ++it) {
    t = 0.5 * (lo + hi);
    const double f = sphere_ip_cdf(t, d) - p;
    if (std::abs(f) < 1e-13) return t;
    if (f < 0.0) lo = t; else hi = t;
    if (hi - lo < 4e-17 * (1.0 + std::abs(t))) break;
  }
  return 0.5 * (lo + hi);
}

}  // namespace rgg
