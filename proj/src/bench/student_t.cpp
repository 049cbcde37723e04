#include "pfft/bench/student_t.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "pfft/errors.hpp"

namespace pfft::bench {

namespace {

// Continued fraction for the incomplete beta function, modified Lentz method.
double betacf(double a, double b, double x) {
  constexpr int kMaxIter = 300;
  constexpr double kEps = 3e-16;
  constexpr double kFpMin = 1e-300;

  double qab = a + b;
  double qap = a + 1.0;
  double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kFpMin) d = kFpMin;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;  // even step
    if (std::abs(d) < kFpMin) d = kFpMin;
    c = 1.0 + aa / c;
    if (std::abs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;  // odd step
    if (std::abs(d) < kFpMin) d = kFpMin;
    c = 1.0 + aa / c;
    if (std::abs(c) < kFpMin) c = kFpMin;
    d = 1.0 / d;
    double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) return h;
  }
  throw Error("incomplete beta continued fraction did not converge");
}

}  // namespace

double regularized_incomplete_beta(double a, double b, double x) {
  if (!(a > 0) || !(b > 0))
    throw DomainError("incomplete beta requires a, b > 0");
  if (x < 0 || x > 1)
    throw DomainError("incomplete beta requires x in [0, 1], got " +
                      std::to_string(x));
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  double bt = std::exp(std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                       a * std::log(x) + b * std::log1p(-x));
  // Use the continued fraction directly where it converges fast, the
  // symmetry relation elsewhere.
  if (x < (a + 1.0) / (a + b + 2.0)) return bt * betacf(a, b, x) / a;
  return 1.0 - bt * betacf(b, a, 1.0 - x) / b;
}

double student_t_cdf(double t, int dof) {
  if (dof < 1) throw DomainError("dof must be >= 1, got " + std::to_string(dof));
  if (t == 0.0) return 0.5;
  double nu = dof;
  double x = nu / (nu + t * t);
  // I_x(nu/2, 1/2) is the two-tail probability P(|T| > |t|).
  double tail = 0.5 * regularized_incomplete_beta(0.5 * nu, 0.5, x);
  return t > 0 ? 1.0 - tail : tail;
}

double t_critical(double confidence_level, int dof, bool two_sided) {
  if (dof < 1) throw DomainError("dof must be >= 1, got " + std::to_string(dof));
  if (!(confidence_level > 0.0) || !(confidence_level < 1.0))
    throw DomainError("confidence_level must lie in (0, 1), got " +
                      std::to_string(confidence_level));
  double p = two_sided ? 0.5 * (1.0 + confidence_level) : confidence_level;
  if (p == 0.5) return 0.0;
  bool negate = false;
  if (p < 0.5) {
    p = 1.0 - p;
    negate = true;
  }
  // Bracket the quantile, then bisect. The CDF is strictly increasing.
  double lo = 0.0;
  double hi = 1.0;
  while (student_t_cdf(hi, dof) < p) {
    hi *= 2.0;
    if (hi > 1e300) throw Error("t quantile bracket expansion failed");
  }
  for (int i = 0; i < 200 && hi - lo > 1e-10; ++i) {
    double mid = 0.5 * (lo + hi);
    if (student_t_cdf(mid, dof) < p)
      lo = mid;
    else
      hi = mid;
  }
  double q = 0.5 * (lo + hi);
  return negate ? -q : q;
}

}  // namespace pfft::bench
