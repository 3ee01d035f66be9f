#include "moserlp/bessel.hpp"

#include <cmath>
#include <string>

#include "moserlp/errors.hpp"

namespace moser {

namespace {

constexpr double kMaxArg = 1e7;
constexpr double kSeriesCut = 16.0;

// Double-double arithmetic for the power series. Near the cutoff the terms
// peak around 2e5 while the sum stays below one, so plain doubles would lose
// six digits to cancellation; two compensated limbs keep roughly 32.
struct DD {
  double hi = 0, lo = 0;
};

DD two_sum(double a, double b) {
  double s = a + b;
  double bb = s - a;
  return {s, (a - (s - bb)) + (b - bb)};
}

DD quick_two_sum(double a, double b) {
  double s = a + b;
  return {s, b - (s - a)};
}

// Dekker split product; avoids relying on a fused multiply-add.
DD two_prod(double a, double b) {
  constexpr double split = 134217729.0;  // 2^27 + 1
  double p = a * b;
  double ca = split * a, cb = split * b;
  double ah = ca - (ca - a), al = a - ah;
  double bh = cb - (cb - b), bl = b - bh;
  double err = ((ah * bh - p) + ah * bl + al * bh) + al * bl;
  return {p, err};
}

DD dd_add(DD a, DD b) {
  DD s = two_sum(a.hi, b.hi);
  s.lo += a.lo + b.lo;
  return quick_two_sum(s.hi, s.lo);
}

DD dd_mul(DD a, DD b) {
  DD p = two_prod(a.hi, b.hi);
  p.lo += a.hi * b.lo + a.lo * b.hi;
  return quick_two_sum(p.hi, p.lo);
}

DD dd_div_d(DD a, double d) {
  double q0 = a.hi / d;
  DD r = two_prod(q0, d);
  double rem = ((a.hi - r.hi) - r.lo) + a.lo;
  double q1 = rem / d;
  return quick_two_sum(q0, q1);
}

double series_j0(double x) {
  DD q = two_prod(x * 0.5, x * 0.5);
  DD sum{1.0, 0.0}, term{1.0, 0.0};
  for (int k = 1; k <= 80; ++k) {
    term = dd_div_d(dd_mul(term, q), -static_cast<double>(k) * k);
    sum = dd_add(sum, term);
    if (std::fabs(term.hi) < 1e-34) break;
  }
  return sum.hi + sum.lo;
}

double series_j1(double x) {
  DD q = two_prod(x * 0.5, x * 0.5);
  DD sum{1.0, 0.0}, term{1.0, 0.0};
  for (int k = 1; k <= 80; ++k) {
    term = dd_div_d(dd_mul(term, q), -static_cast<double>(k) * (k + 1));
    sum = dd_add(sum, term);
    if (std::fabs(term.hi) < 1e-34) break;
  }
  DD out = dd_mul(sum, two_prod(x, 0.5));
  return out.hi + out.lo;
}

// Tail sums of the large-argument expansion, truncated where the terms stop
// shrinking. P collects the even coefficients, Q the odd ones.
void hankel_pq(double mu, double x, double& P, double& Q) {
  P = 1;
  Q = 0;
  double a = 1, xk = 1, prev = HUGE_VAL;
  for (int k = 1; k <= 40; ++k) {
    double m = 2.0 * k - 1;
    a *= (mu - m * m) / (8.0 * k);
    xk /= x;
    double t = a * xk;
    if (std::fabs(t) >= prev) break;
    prev = std::fabs(t);
    if (k & 1)
      Q += (k / 2) & 1 ? -t : t;
    else
      P += (k / 2) & 1 ? -t : t;
    if (prev < 1e-19) break;
  }
}

// The oscillatory factors are taken at shifted phase. Forming x - pi/4
// first would round away the shift's low bits for x near 1e7, so the shift
// is folded in exactly via angle addition; libm handles the large-argument
// reduction of sin/cos itself.
void phase_quarter(double x, double& cosw, double& sinw) {
  constexpr double inv_sqrt2 = 0.70710678118654752440;
  double c = std::cos(x), s = std::sin(x);
  cosw = (c + s) * inv_sqrt2;   // cos(x - pi/4)
  sinw = (s - c) * inv_sqrt2;   // sin(x - pi/4)
}

double asymptotic_j0(double x) {
  double P, Q, cosw, sinw;
  hankel_pq(0.0, x, P, Q);
  phase_quarter(x, cosw, sinw);
  return std::sqrt(2.0 / (M_PI * x)) * (P * cosw - Q * sinw);
}

double asymptotic_j1(double x) {
  double P, Q, cosw, sinw;
  hankel_pq(4.0, x, P, Q);
  phase_quarter(x, cosw, sinw);
  // cos(x - 3pi/4) = sin(x - pi/4), sin(x - 3pi/4) = -cos(x - pi/4)
  return std::sqrt(2.0 / (M_PI * x)) * (P * sinw + Q * cosw);
}

void check_domain(double x) {
  if (!(x >= 0) || x > kMaxArg)
    throw UsageError("Bessel argument " + std::to_string(x) + " outside [0, 1e7]");
}

}  // namespace

double bessel_j0(double x) {
  check_domain(x);
  return x <= kSeriesCut ? series_j0(x) : asymptotic_j0(x);
}

double bessel_j1(double x) {
  check_domain(x);
  return x <= kSeriesCut ? series_j1(x) : asymptotic_j1(x);
}

double largest_j1_zero_below(double limit) {
  constexpr double first_zero = 3.8317059702075123;
  if (!(limit > first_zero) || limit > kMaxArg)
    throw UsageError("no J1 zero below " + std::to_string(limit));

  // McMahon estimate for the m-th zero, good to ~1e-3 already at m = 1.
  auto estimate = [](int m) {
    double beta = (m + 0.25) * M_PI;
    return beta - 3.0 / (8.0 * beta);
  };
  auto refine = [](double est) {
    double lo = std::max(first_zero - 0.5, est - 0.5), hi = std::min(kMaxArg, est + 0.5);
    double flo = bessel_j1(lo), fhi = bessel_j1(hi);
    if ((flo < 0) == (fhi < 0)) throw SolverError("J1 zero bracket failed");
    for (int it = 0; it < 60; ++it) {
      double mid = 0.5 * (lo + hi);
      double fm = bessel_j1(mid);
      if ((fm < 0) == (flo < 0)) {
        lo = mid;
        flo = fm;
      } else {
        hi = mid;
      }
    }
    return 0.5 * (lo + hi);
  };

  for (int m = std::max(1, static_cast<int>(std::floor(limit / M_PI - 0.25)) + 1); m >= 1; --m) {
    if (estimate(m) >= limit + 0.01) continue;
    double root = refine(estimate(m));
    if (root < limit) return root;
  }
  throw UsageError("no J1 zero below " + std::to_string(limit));
}

}  // namespace moser
