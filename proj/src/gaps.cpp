#include "ergosol/gaps.hpp"

#include <cmath>

#include "ergosol/errors.hpp"
#include "ergosol/numeric.hpp"

namespace ergosol {

namespace {

struct TailSum {
  double value;
  double error;
};

// sum_{m >= M} m^(-s) by direct summation of the first 1000 terms and
// Euler-Maclaurin beyond: for f(x) = x^(-s) and a = M + 1000,
//   sum_{m>=a} f(m) = a^(1-s)/(s-1) + f(a)/2 + s*a^(-s-1)/12
//                     - s(s+1)(s+2)*a^(-s-3)/720 + R,
// |R| <= s(s+1)(s+2)(s+3)(s+4) * a^(-s-5) / 30240  (next Bernoulli term).
TailSum zeta_tail(double s, std::int64_t M) {
  KahanSum head;
  const std::int64_t direct = 1000;
  for (std::int64_t m = M; m < M + direct; ++m) head.add(std::pow(static_cast<double>(m), -s));
  const double a = static_cast<double>(M + direct);
  double em = std::pow(a, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(a, -s) +
              s * std::pow(a, -s - 1.0) / 12.0 -
              s * (s + 1.0) * (s + 2.0) * std::pow(a, -s - 3.0) / 720.0;
  double rem = s * (s + 1.0) * (s + 2.0) * (s + 3.0) * (s + 4.0) * std::pow(a, -s - 5.0) / 30240.0;
  return {head.value() + em, rem + 1e-16 * head.value()};
}

}  // namespace

GapSchedule::GapSchedule(double c, double s) : c_(c), s_(s) {
  if (!(c >= 0.0) || !std::isfinite(c)) throw ConfigError("gap amplitude must be >= 0");
  if (!(s > 1.0) || !std::isfinite(s))
    throw ConfigError("gap exponent must exceed 1 (series would not converge)");
  if (c_ > 0.0) {
    TailSum z = zeta_tail(s_, 1);  // zeta(s)
    total_mass_ = c_ * (2.0 * z.value - 1.0);
    total_mass_error_ = 2.0 * c_ * z.error + 4e-16 * total_mass_;
  }
}

double GapSchedule::length(std::int64_t n) const {
  if (c_ == 0.0) return 0.0;
  double m = static_cast<double>(n < 0 ? -n : n) + 1.0;
  return c_ * std::pow(m, -s_);
}

double GapSchedule::tail_mass(std::int64_t N) const {
  if (c_ == 0.0) return 0.0;
  if (N < 0) throw ConfigError("tail index must be >= 0");
  return 2.0 * c_ * zeta_tail(s_, N + 2).value;
}

double GapSchedule::tail_mass_error(std::int64_t N) const {
  if (c_ == 0.0) return 0.0;
  return 2.0 * c_ * zeta_tail(s_, N + 2).error;
}

double GapSchedule::tail_bound(std::int64_t N) const {
  if (c_ == 0.0) return 0.0;
  if (N < 0) throw ConfigError("tail index must be >= 0");
  // sum_{m >= N+2} m^(-s) <= integral_{N+1}^inf x^(-s) dx
  return 2.0 * c_ * std::pow(static_cast<double>(N + 1), 1.0 - s_) / (s_ - 1.0);
}

}  // namespace ergosol
