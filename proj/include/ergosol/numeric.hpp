#pragma once

#include <cmath>
#include <cstdint>

// Small numeric kernels shared across the library: double-double arithmetic
// for circle orbits, compensated summation, and the C^2 smoothstep profile.
//
// Orbit angles {theta + n*alpha} are needed for |n| up to ~1e7.  In plain
// double arithmetic n*alpha already carries an absolute error of order
// n*eps ~ 1e-9, far above the angle spacing tolerances we certify, so the
// product is formed in double-double (hi + lo with |lo| <= ulp(hi)/2) and
// reduced mod 1 before rounding to double.  Final results are accurate to
// ~1e-17 absolute, well below the minimal orbit-point separation.

namespace ergosol {

struct DD {
  double hi = 0.0;
  double lo = 0.0;
};

inline DD dd_two_sum(double a, double b) {
  double s = a + b;
  double bb = s - a;
  double err = (a - (s - bb)) + (b - bb);
  return {s, err};
}

inline DD dd_two_prod(double a, double b) {
  double p = a * b;
  double err = std::fma(a, b, -p);
  return {p, err};
}

inline DD dd_add(DD a, double b) {
  DD s = dd_two_sum(a.hi, b);
  s.lo += a.lo;
  DD t = dd_two_sum(s.hi, s.lo);
  return t;
}

inline DD dd_from_ratio(std::int64_t num, std::int64_t den) {
  // hi + lo representation of num/den; the residue num - hi*den fits in
  // long double exactly enough for a second division.
  double hi = static_cast<double>(num) / static_cast<double>(den);
  long double r = static_cast<long double>(num) -
                  static_cast<long double>(hi) * static_cast<long double>(den);
  double lo = static_cast<double>(r / static_cast<long double>(den));
  return {hi, lo};
}

// frac(theta0 + n*alpha) with alpha in double-double.  Exact two-product for
// n*alpha.hi; the floor subtraction is exact (both operands agree to within 1).
inline double frac_orbit(double theta0, std::int64_t n, DD alpha) {
  DD p = dd_two_prod(static_cast<double>(n), alpha.hi);
  DD acc = dd_add(p, theta0);
  acc = dd_add(acc, static_cast<double>(n) * alpha.lo);
  double k = std::floor(acc.hi);
  double r = (acc.hi - k) + acc.lo;
  if (r >= 1.0) r -= 1.0;
  if (r < 0.0) r += 1.0;
  return r;
}

inline double frac(double x) {
  double r = x - std::floor(x);
  if (r >= 1.0) r -= 1.0;  // x slightly below an integer rounds up
  return r;
}

// Distance between two circle points along the shorter arc.
inline double circle_dist(double a, double b) {
  double d = frac(a - b);
  return d > 0.5 ? 1.0 - d : d;
}

// Compensated accumulator; error stays O(eps * sum|x|) independent of count.
struct KahanSum {
  double sum = 0.0;
  double carry = 0.0;
  void add(double x) {
    double y = x - carry;
    double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
  double value() const { return sum; }
};

// Quintic smoothstep: 0 at u<=0, 1 at u>=1, C^2 at both ends.
inline double smoothstep5(double u) {
  if (u <= 0.0) return 0.0;
  if (u >= 1.0) return 1.0;
  return u * u * u * (10.0 + u * (-15.0 + 6.0 * u));
}

inline double smoothstep5_deriv(double u) {
  if (u <= 0.0 || u >= 1.0) return 0.0;
  return 30.0 * u * u * (1.0 - u) * (1.0 - u);
}

}  // namespace ergosol
