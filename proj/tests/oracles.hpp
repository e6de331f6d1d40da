#pragma once

// Independent reference implementations the tests compare the library
// against.  Deliberately naive: long-double arithmetic, direct series
// summation, finite differences, composite Simpson.  None of this shares
// code with the library paths under test.

#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

namespace oracles {

inline long double frac_l(long double x) {
  long double r = x - std::floor(x);
  if (r >= 1.0L) r -= 1.0L;
  if (r < 0.0L) r += 1.0L;
  return r;
}

// Direct series evaluation of the blown-up coordinate
//
//   Phi(theta) = (theta + sum_{orbit_n < theta} l_n) / (1 + G),
//   l_n = c * (|n| + 1)^(-s),
//
// truncated at |n| <= n_half by walking the orbit incrementally in long
// double.  The missing tail mass is bounded by the integral estimate
// 2c * (n_half + 1)^(1-s) / (s - 1); in the worst case all of it sits on one
// side of theta and also perturbs 1 + G, so |value - Phi| <= 2 * tail.
class BlowUpOracle {
 public:
  BlowUpOracle(long double alpha, long double seed, long double c,
               long double s, std::int64_t n_half)
      : alpha_(alpha), seed_(seed), c_(c), s_(s), n_half_(n_half) {
    mass_ = c_;  // n = 0 term
    for (std::int64_t m = 1; m <= n_half_; ++m)
      mass_ += 2.0L * c_ * std::pow(static_cast<long double>(m) + 1.0L, -s_);
    tail_ = 2.0L * c_ *
            std::pow(static_cast<long double>(n_half_) + 1.0L, 1.0L - s_) /
            (s_ - 1.0L);
  }

  double value(double theta) const {
    long double below = 0.0L;
    long double fwd = frac_l(seed_);
    long double bwd = fwd;
    if (fwd < theta) below += c_;  // n = 0
    for (std::int64_t m = 1; m <= n_half_; ++m) {
      fwd += alpha_;
      if (fwd >= 1.0L) fwd -= 1.0L;
      bwd -= alpha_;
      if (bwd < 0.0L) bwd += 1.0L;
      const long double len =
          c_ * std::pow(static_cast<long double>(m) + 1.0L, -s_);
      if (fwd < theta) below += len;
      if (bwd < theta) below += len;
    }
    return static_cast<double>((theta + below) / (1.0L + mass_));
  }

  double bound() const { return static_cast<double>(2.0L * tail_); }
  double total_mass() const { return static_cast<double>(mass_); }
  double mass_bound() const { return static_cast<double>(tail_); }

 private:
  long double alpha_, seed_, c_, s_;
  std::int64_t n_half_;
  long double mass_, tail_;
};

// #{ n in [0, count) : frac(theta + n*alpha) in the ccw arc [lo, hi) },
// wrap-aware, by incremental long-double walking.
inline std::int64_t arc_hits(long double theta, long double alpha,
                             std::int64_t count, double lo, double hi) {
  std::int64_t hits = 0;
  long double x = frac_l(theta);
  for (std::int64_t n = 0; n < count; ++n) {
    const double xd = static_cast<double>(x);
    const bool in = lo <= hi ? (xd >= lo && xd < hi) : (xd >= lo || xd < hi);
    if (in) ++hits;
    x += alpha;
    if (x >= 1.0L) x -= 1.0L;
  }
  return hits;
}

// Central-difference gradient of a scalar field on R^n.
inline std::vector<double> fd_gradient(
    const std::function<double(const std::vector<double>&)>& f,
    std::vector<double> x, double h) {
  std::vector<double> g(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) {
    const double saved = x[j];
    x[j] = saved + h;
    const double up = f(x);
    x[j] = saved - h;
    const double down = f(x);
    x[j] = saved;
    g[j] = (up - down) / (2.0 * h);
  }
  return g;
}

// Composite Simpson rule with `intervals` subdivisions (rounded up to even).
inline double simpson(const std::function<double(double)>& f, double a,
                      double b, int intervals) {
  if (intervals % 2 != 0) ++intervals;
  const double h = (b - a) / intervals;
  double acc = f(a) + f(b);
  for (int i = 1; i < intervals; ++i)
    acc += f(a + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
  return acc * h / 3.0;
}

// a^T Q a in plain integer arithmetic.
inline long long quadratic_form(const std::vector<long long>& a,
                                const std::vector<std::vector<long long>>& q) {
  long long out = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) out += a[i] * q[i][j] * a[j];
  return out;
}

}  // namespace oracles
