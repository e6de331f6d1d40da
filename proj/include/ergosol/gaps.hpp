#pragma once

#include <cstdint>

namespace ergosol {

// Family of gap lengths l_n = c * (|n|+1)^(-s) indexed by n in Z, with s > 1
// so the total mass G = sum l_n is finite.  c = 0 is the degenerate test mode
// (no gaps; the blown-up map collapses back to the rigid rotation).
//
// Tail sums are evaluated by Euler-Maclaurin with an explicit remainder term,
// so total_mass()/tail_mass() come with certified error bounds; tail_bound()
// is a closed-form integral overestimate used wherever a one-sided bound is
// enough.
class GapSchedule {
 public:
  GapSchedule(double c, double s);

  double c() const { return c_; }
  double s() const { return s_; }
  bool degenerate() const { return c_ == 0.0; }

  double length(std::int64_t n) const;

  // G = c * (2*zeta(s) - 1), with |error| <= total_mass_error().
  double total_mass() const { return total_mass_; }
  double total_mass_error() const { return total_mass_error_; }

  // Exact-to-quoted-error value of sum_{|n| > N} l_n.
  double tail_mass(std::int64_t N) const;
  double tail_mass_error(std::int64_t N) const;

  // Overestimate of the same tail: 2c*(N+1)^(1-s)/(s-1); strictly decreasing
  // in N with limit 0.
  double tail_bound(std::int64_t N) const;

 private:
  double c_;
  double s_;
  double total_mass_ = 0.0;
  double total_mass_error_ = 0.0;
};

}  // namespace ergosol
