#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <vector>

#include "rgg/numerics.hpp"

namespace rgg {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

inline double pairs_of(double r) { return 0.5 * r * (r - 1.0); }
inline double triples_of(double r) { return r * (r - 1.0) * (r - 2.0) / 6.0; }

// log C(n,k) without ever forming a binomial in linear space. Works for n
// far beyond 2^53 (the product is accumulated term by term).
inline double log_binomial(double n, long long k) {
  if (k < 0 || !(n >= static_cast<double>(k)))
    throw std::domain_error("log_binomial: need 0 <= k <= n");
  if (k == 0) return 0.0;
  if (k <= 2000000) {
    double s = 0.0;
    if (n <= 9e15) {
      for (long long i = 0; i < k; ++i) s += std::log(n - static_cast<double>(i));
    } else {
      const double ln_n = std::log(n);
      for (long long i = 0; i < k; ++i)
        s += ln_n + std::log1p(-static_cast<double>(i) / n);
    }
    return s - std::lgamma(static_cast<double>(k) + 1.0);
  }
  return std::lgamma(n + 1.0) - std::lgamma(static_cast<double>(k) + 1.0) -
         std::lgamma(n - static_cast<double>(k) + 1.0);
}

struct KappaLambda {
  double kappa;
  double lambda;
};

// kappa = a^3/(6p^3), lambda = a^3/(6(1-p)^3).
inline KappaLambda kappa_lambda(double p) {
  const NormalConstants nc = c_p_of(p);  // validates p
  const double a3 = nc.a * nc.a * nc.a;
  const double q = 1.0 - p;
  return {a3 / (6.0 * p * p * p), a3 / (6.0 * q * q * q)};
}

// g(p) = (4 ln(1-p) - ln p) ln p / (8 ln(1-p)); the natural-log t^2
// coefficient of the Erdos-Renyi route. Negative on (0,1/2).
inline double sawin_exponent(double p) {
  if (!(p > 0.0 && p < 1.0))
    throw std::domain_error("sawin_exponent: p must lie in (0,1)");
  const double lp = std::log(p), lq = std::log1p(-p);
  return (4.0 * lq - lp) * lp / (8.0 * lq);
}

struct SawinOptimum {
  double p_star;
  double base2_coeff;  // -g(p*)/ln 2
};

// Golden-section minimization of g over (0.3, 0.5).
inline SawinOptimum optimize_sawin_p() {
  constexpr double invphi = 0.61803398874989484820;
  double a = 0.3, b = 0.5;
  double c = b - invphi * (b - a), d = a + invphi * (b - a);
  double fc = sawin_exponent(c), fd = sawin_exponent(d);
  while (b - a > 1e-9) {
    if (fc < fd) {
      b = d; d = c; fd = fc;
      c = b - invphi * (b - a);
      fc = sawin_exponent(c);
    } else {
      a = c; c = d; fc = fd;
      d = a + invphi * (b - a);
      fd = sawin_exponent(d);
    }
  }
  const double p = 0.5 * (a + b);
  return {p, -sawin_exponent(p) / kLn2};
}

enum class TupleKind { clique, independent };

// Log upper bound on P(H(r,d,p) is a clique / an independent set).
// Convention: the clique bound carries the p^C(r,2) prefactor with a
// negative (suppression) cubic correction; the independent-set bound
// carries (1-p)^C(r,2) with a positive (enhancement) correction.
inline double prop22_log_bound(long long r, long long d, double D, double p,
                               double K, TupleKind kind) {
  if (r < 1) throw std::domain_error("prop22_log_bound: r must be >= 1");
  if (d < 2) throw std::domain_error("prop22_log_bound: d must be >= 2");
  if (!(D > 0.0)) throw std::domain_error("prop22_log_bound: D must be > 0");
  const NormalConstants nc = c_p_of(p);
  const double a3 = nc.a * nc.a * nc.a;
  const double rr = static_cast<double>(r);
  const double sq = std::sqrt(static_cast<double>(d));
  const double slack = K * rr * rr * rr / (D * sq);
  if (kind == TupleKind::clique)
    return pairs_of(rr) * std::log(p) - a3 / (p * p * p) * triples_of(rr) / sq +
           slack;
  const double q = 1.0 - p;
  return pairs_of(rr) * std::log1p(-p) + a3 / (q * q * q) * triples_of(rr) / sq +
         slack;
}

// Parameter bundle of the geometric construction. D may be +infinity, in
// which case every 1/D correction drops out (IEEE semantics give this for
// free in the closed forms below).
struct ModelParams {
  double p = 0.455;
  double D = kInfinity;
  double K = 0.0;
  double delta = 0.0;
  long long t = 2;

  bool d_finite() const { return std::isfinite(D); }

  // d = ceil(D^2 t^2); only meaningful for finite D.
  long long d() const {
    if (!d_finite())
      throw std::domain_error("ModelParams::d: D is infinite");
    return static_cast<long long>(
        std::ceil(D * D * static_cast<double>(t) * static_cast<double>(t)));
  }
};

// m = -1/2 ln p + kappa/D - K/D^2 - delta.
inline double m_choice(const ModelParams& prm) {
  const KappaLambda kl = kappa_lambda(prm.p);
  return -0.5 * std::log(prm.p) + kl.kappa / prm.D - prm.K / (prm.D * prm.D) -
         prm.delta;
}

// M = floor(exp(m t)). Beyond 2^53 the floor is not representable; the
// value is then exp(mt) and log_M is m*t (the floor changes the log by
// less than 1/M).
inline double vertex_count(const ModelParams& prm) {
  const double mt = m_choice(prm) * static_cast<double>(prm.t);
  const double e = std::exp(mt);
  return e < 9e15 ? std::floor(e) : e;
}

inline double log_vertex_count(const ModelParams& prm) {
  const double mt = m_choice(prm) * static_cast<double>(prm.t);
  const double e = std::exp(mt);
  return e < 9e15 ? std::log(std::floor(e)) : mt;
}

// log E[X] where X counts K_t's in H(M,d,p): log C(M,t) + clique bound.
// Negative output certifies the first-moment K_t-freeness argument.
inline double expected_kt_count_log(const ModelParams& prm) {
  const double M = vertex_count(prm);
  if (!(M >= 1.0)) throw std::domain_error("expected_kt_count_log: M < 1");
  if (static_cast<double>(prm.t) > M)
    throw std::domain_error("expected_kt_count_log: t exceeds M");
  double log_choose;
  if (M < 9e15) {
    log_choose = log_binomial(M, prm.t);
  } else {
    log_choose = static_cast<double>(prm.t) * log_vertex_count(prm) -
                 std::lgamma(static_cast<double>(prm.t) + 1.0);
  }
  const double clique_log =
      prm.d_finite()
          ? prop22_log_bound(prm.t, prm.d(), prm.D, prm.p, prm.K,
                             TupleKind::clique)
          : pairs_of(static_cast<double>(prm.t)) * std::log(prm.p);
  return log_choose + clique_log;
}

struct MaxKBound {
  double value;
  long long k_star;
};

// max over 1<=k<=t of -(t-k) ln M + C(k,2) ln(1-p) + (6 lambda/D) C(k,3)/t
// + K t^2/D^2, evaluated in log space. Smallest k wins ties.
inline MaxKBound ctt_log_bound_max_k(const ModelParams& prm) {
  const double lM = log_vertex_count(prm);
  const double lq = std::log1p(-prm.p);
  const KappaLambda kl = kappa_lambda(prm.p);
  const double tt = static_cast<double>(prm.t);
  const double tail = prm.K * tt * tt / (prm.D * prm.D);
  double best = -kInfinity;
  long long k_star = 1;
  for (long long k = 1; k <= prm.t; ++k) {
    const double kk = static_cast<double>(k);
    const double v = -(tt - kk) * lM + pairs_of(kk) * lq +
                     6.0 * kl.lambda / prm.D * triples_of(kk) / tt + tail;
    if (v > best) {
      best = v;
      k_star = k;
    }
  }
  return {best, k_star};
}

// f(theta) = (1-theta)(-1/2 ln p + kappa/D) - theta^2/2 ln(1-p)
//            - lambda/D theta^3 - (2-theta) K/D^2.
inline double f_theta(double theta, const ModelParams& prm) {
  if (!(theta >= 0.0 && theta <= 1.0))
    throw std::domain_error("f_theta: theta must lie in [0,1]");
  const KappaLambda kl = kappa_lambda(prm.p);
  const double lp = std::log(prm.p), lq = std::log1p(-prm.p);
  return (1.0 - theta) * (-0.5 * lp + kl.kappa / prm.D) -
         0.5 * theta * theta * lq - kl.lambda / prm.D * theta * theta * theta -
         (2.0 - theta) * prm.K / (prm.D * prm.D);
}

namespace detail {

// Discriminant of the stationary-point quadratic
// (3 lambda/D) theta^2 + ln(1-p) theta + (-1/2 ln p + kappa/D - K/D^2) = 0.
struct StationaryRoots {
  double disc;
  double lower;  // the "-" root, written in cancellation-free form
  double upper;  // the "+" root (infinite at D = infinity)
};

inline StationaryRoots stationary_roots(const ModelParams& prm) {
  const KappaLambda kl = kappa_lambda(prm.p);
  const double lq = std::log1p(-prm.p);
  const double c0 = -0.5 * std::log(prm.p) + kl.kappa / prm.D -
                    prm.K / (prm.D * prm.D);
  const double disc = lq * lq - 12.0 * kl.lambda / prm.D * c0;
  if (disc < 0.0) return {disc, 0.0, 0.0};
  const double sq = std::sqrt(disc);
  // lower root as 2c0/(-lq + sqrt(disc)): exact in the D -> infinity limit.
  const double lower = 2.0 * c0 / (-lq + sq);
  const double upper = prm.D / (6.0 * kl.lambda) * (-lq + sq);
  return {disc, lower, upper};
}

}  // namespace detail

struct AlphaFormal {
  double alpha;       // min f - delta
  double theta_star;  // argmin of f over [0,1]
};

// Minimum of f over [0,1] from closed-form candidates only: the two
// quadratic roots restricted to [0,1] plus the endpoints. Ties go to the
// smallest theta.
inline AlphaFormal alpha_formal(const ModelParams& prm) {
  std::vector<double> cand = {0.0, 1.0};
  const auto roots = detail::stationary_roots(prm);
  if (roots.disc >= 0.0) {
    if (roots.lower >= 0.0 && roots.lower <= 1.0) cand.push_back(roots.lower);
    if (std::isfinite(roots.upper) && roots.upper >= 0.0 && roots.upper <= 1.0)
      cand.push_back(roots.upper);
  }
  std::sort(cand.begin(), cand.end());
  double best_theta = cand.front();
  double best = f_theta(best_theta, prm);
  for (std::size_t i = 1; i < cand.size(); ++i) {
    const double v = f_theta(cand[i], prm);
    if (v < best) {
      best = v;
      best_theta = cand[i];
    }
  }
  return {best - prm.delta, best_theta};
}

// The "-" stationary root clamped to [0,1]; empty when the discriminant is
// negative (no interior stationary point, the minimum sits at an endpoint).
inline std::optional<double> theta_star(const ModelParams& prm) {
  const auto roots = detail::stationary_roots(prm);
  if (roots.disc < 0.0) return std::nullopt;
  return std::clamp(roots.lower, 0.0, 1.0);
}

struct ThetaExpansion {
  double theta0;
  double theta1;
};

// theta* = theta0 + theta1/D + O(1/D^2) with
// theta0 = ln p / (2 ln(1-p)), theta1 = (-kappa - 3 lambda theta0^2)/ln(1-p).
inline ThetaExpansion theta_expansion(double p) {
  const KappaLambda kl = kappa_lambda(p);
  const double lp = std::log(p), lq = std::log1p(-p);
  const double theta0 = lp / (2.0 * lq);
  const double theta1 = (-kl.kappa - 3.0 * kl.lambda * theta0 * theta0) / lq;
  return {theta0, theta1};
}

// h(p) = (1-theta0)/p^3 - (ln p)^3/(8 (ln(1-p))^3 (1-p)^3).
// Positive exactly where the geometric model improves on Erdos-Renyi;
// the actual improvement at order 1/D is (a^3/6) h(p) / D.
inline double gamma_bracket(double p) {
  if (!(p > 0.0 && p < 1.0))
    throw std::domain_error("gamma_bracket: p must lie in (0,1)");
  const double lp = std::log(p), lq = std::log1p(-p);
  const double theta0 = lp / (2.0 * lq);
  const double q = 1.0 - p;
  const double ratio = lp / lq;
  return (1.0 - theta0) / (p * p * p) -
         ratio * ratio * ratio / (8.0 * q * q * q);
}

// First-order improvement of alpha over the D = infinity exponent:
// alpha(p,D) - alpha(p,inf) = gamma_first_order(p)/D + O(1/D^2).
inline double gamma_first_order(double p) {
  const NormalConstants nc = c_p_of(p);
  const double a3 = nc.a * nc.a * nc.a;
  return a3 / 6.0 * gamma_bracket(p);
}

// Bisection root of h on [lo,hi]; requires a sign change.
inline double find_gamma_root(double lo, double hi) {
  double flo = gamma_bracket(lo), fhi = gamma_bracket(hi);
  if (!(flo * fhi < 0.0))
    throw std::domain_error("find_gamma_root: no sign change on [lo,hi]");
  for (int it = 0; it < 80 && hi - lo > 1e-9; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = gamma_bracket(mid);
    if (fm == 0.0) return mid;
    if (flo * fm < 0.0) {
      hi = mid;
    } else {
      lo = mid;
      flo = fm;
    }
  }
  return 0.5 * (lo + hi);
}

// beta(ell) = (ell-2) alpha / ln 2 + 1/2: the coefficient in
// r(t;ell) >= 2^{beta(ell) t + o(t)}.
inline double ramsey_base2_coeff(long long ell, double alpha) {
  if (ell < 2) throw std::domain_error("ramsey_base2_coeff: ell must be >= 2");
  if (!(alpha >= 0.0))
    throw std::domain_error("ramsey_base2_coeff: alpha must be >= 0");
  return static_cast<double>(ell - 2) * alpha / kLn2 + 0.5;
}

// log C(N,t) + (ell-2) log_c + (1 - C(t,2)) ln 2 < 0, in log space.
inline bool union_bound_feasible(long long N, long long t, long long ell,
                                 double log_c) {
  if (!(t >= 2 && t <= N))
    throw std::domain_error("union_bound_feasible: need 2 <= t <= N");
  if (ell < 2) throw std::domain_error("union_bound_feasible: ell must be >= 2");
  if (!(log_c <= 0.0))
    throw std::domain_error("union_bound_feasible: log_c must be <= 0");
  const double lhs = log_binomial(static_cast<double>(N), t) +
                     static_cast<double>(ell - 2) * log_c +
                     (1.0 - pairs_of(static_cast<double>(t))) * kLn2;
  return lhs < 0.0;
}

// One row of closed-form quantities for a given (p, D, K, delta).
struct ExponentReport {
  double p, D, K, delta;
  double c_p, a;
  double kappa, lambda;
  double sawin_g;
  double alpha;        // alpha_formal(p,D) - delta
  double theta_star;   // argmin of f
  double theta0, theta1;
  double h;            // gamma_bracket(p)
  double gamma;        // (a^3/6) h / D, 0 at D = infinity
};

inline ExponentReport make_exponent_report(const ModelParams& prm) {
  ExponentReport r{};
  r.p = prm.p;
  r.D = prm.D;
  r.K = prm.K;
  r.delta = prm.delta;
  const NormalConstants nc = c_p_of(prm.p);
  r.c_p = nc.c_p;
  r.a = nc.a;
  const KappaLambda kl = kappa_lambda(prm.p);
  r.kappa = kl.kappa;
  r.lambda = kl.lambda;
  r.sawin_g = sawin_exponent(prm.p);
  const AlphaFormal af = alpha_formal(prm);
  r.alpha = af.alpha;
  r.theta_star = af.theta_star;
  const ThetaExpansion te = theta_expansion(prm.p);
  r.theta0 = te.theta0;
  r.theta1 = te.theta1;
  r.h = gamma_bracket(prm.p);
  r.gamma = gamma_first_order(prm.p) / prm.D;
  return r;
}

}  // namespace rgg
