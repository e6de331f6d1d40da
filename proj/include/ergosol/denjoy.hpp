#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "ergosol/gaps.hpp"
#include "ergosol/numeric.hpp"
#include "ergosol/rotation.hpp"

namespace ergosol {

// Circle homeomorphism obtained by blowing up the rotation orbit
// {seed + n*alpha} into gaps of length l_n and rescaling by 1/(1+G):
//
//   Phi(theta) = (theta + sum_{n : {seed+n*alpha} < theta} l_n) / (1 + G).
//
// The minimal set K is the complement of the open gaps; collapse() is the
// monotone left inverse of Phi (constant on gap closures), and the map h
// acts as the rotation in collapse coordinates while sending gap I_n onto
// gap I_{n+1} affinely.
//
// Series evaluation.  The gap sum is tabulated for |n| <= N0 (angles sorted
// once, compensated prefix sums); the remaining tail enters as the
// equidistributed term theta * T with T = sum_{|n|>N0} l_n.  The residual of
// that replacement is certified a priori: orbit segments are decomposed into
// blocks whose lengths are continued-fraction denominators q_j, each block's
// indicator sum deviates from its mean by at most 2 (total variation of an
// arc indicator), and summation by parts turns this into
//
//   |residual| <= 2 * sum_j a_{j+1} * l(N0 + q_j)   (per side)
//                 + tail_mass(N0) / q_top,
//
// where q_top is the largest trusted denominator.  N0 is grown until the
// bound meets the requested tolerance; the achieved bound is reported by
// certified_error().  Evaluation is then a binary search: the map actually
// computed is a fixed strictly monotone model within certified_error() of
// the true blow-up, and all operations (collapse, apply, measures) are
// mutually exact against that model, so round-trip and conjugacy residuals
// sit at rounding level, far below the certified envelope.
//
// Near a gap endpoint the certification is backward: a query within one
// angle-rounding ulp (~1e-17) of an orbit point may be classified to the
// adjacent side of the jump.
//
// Instances are immutable after construction; all methods are const and
// re-entrant.
class DenjoyMap {
 public:
  // Full blow-up construction.  Rejects rational (terminating) rotation
  // numbers; degenerate schedules (c = 0) yield the rigid rotation.
  static DenjoyMap build(const RotationNumber& alpha, const GapSchedule& gaps,
                         double seed_angle = 0.0, double tol = 1e-12);

  // G = 0 closed-form path, same contracts.
  static DenjoyMap rigid_rotation(const RotationNumber& alpha);

  // Test-only: rigid rotation by an arbitrary value, including rationals.
  // Exists so negative controls can build solenoids that must fail
  // verification; never constructed by the realization pipeline.
  static DenjoyMap unchecked_rotation(double alpha_value);

  // Phi(theta); at tabulated orbit angles returns the gap's left endpoint.
  double blow_up(double theta, double tol) const;
  double blow_up(double theta) const { return blow_up(theta, default_tol_); }

  // Monotone inverse of blow_up, constant on gap closures.
  double collapse(double x, double tol) const;
  double collapse(double x) const { return collapse(x, default_tol_); }

  double apply(double x, double tol) const;  // h
  double apply(double x) const { return apply(x, default_tol_); }
  double apply_inverse(double x, double tol) const;
  double apply_inverse(double x) const { return apply_inverse(x, default_tol_); }

  // Transversal measure of the oriented arc [x1, x2]; equal endpoints denote
  // the full circle (measure 1).
  double arc_measure(double x1, double x2) const;

  // Lift-displacement average over `iterations` steps of h starting at x0;
  // within 1/iterations + evaluation noise of the rotation number.
  double estimate_rotation_number(double x0, std::int64_t iterations) const;

  // frac(seed + n*alpha), the collapse coordinate of gap I_n.
  double orbit_angle(std::int64_t n) const;
  // frac(theta + steps*alpha): the holonomy in collapse coordinates.
  double rotate_angle(double theta, std::int64_t steps) const;

  struct Probe {
    double angle;       // collapse coordinate
    bool in_gap;        // x lies in a tabulated gap's closure
    double gap_left = 0.0;
    double gap_right = 0.0;
    double gap_length = 0.0;  // pre-rescaling length l_n
  };
  Probe probe(double x) const;

  // Endpoints of gap I_n in the image circle; |n| must be tabulated.
  std::pair<double, double> gap_interval(std::int64_t n) const;

  const std::optional<RotationNumber>& rotation() const { return rotation_; }
  DD alpha_dd() const { return alpha_; }
  double alpha_value() const { return alpha_.hi + alpha_.lo; }
  const GapSchedule& gap_schedule() const { return gaps_; }
  double seed_angle() const { return seed_; }
  double default_tol() const { return default_tol_; }
  double certified_error() const { return certified_error_; }
  double total_mass() const { return mass_; }  // G as realized (table + tail)
  bool rigid() const { return angles_.empty(); }
  std::size_t table_size() const { return angles_.size(); }

 private:
  DenjoyMap(std::optional<RotationNumber> rotation, GapSchedule gaps, DD alpha,
            double seed_angle, double tol);

  void build_table(std::int64_t n_half);
  double raw_blow_up(double theta) const;
  void require_tol(double tol) const;
  double gap_left_endpoint(std::size_t i) const;
  double cum_before(std::size_t i) const { return i == 0 ? 0.0 : cum_[i - 1]; }
  // Index of the tabulated angle equal to theta, if theta is an orbit angle.
  std::optional<std::size_t> find_angle(double theta) const;

  std::optional<RotationNumber> rotation_;
  GapSchedule gaps_;
  DD alpha_{};
  double seed_ = 0.0;
  double default_tol_ = 1e-12;
  double certified_error_ = 0.0;
  double tail_ = 0.0;          // T: untabulated gap mass
  double mass_ = 0.0;          // G = table total + T
  double one_plus_tail_ = 1.0;
  double one_plus_mass_ = 1.0;
  double match_eps_ = 1e-9;    // quarter of the minimal tabulated angle spacing, capped
  std::int64_t n_half_ = 0;    // table covers |n| <= n_half_
  std::vector<double> angles_;  // sorted orbit angles, |n| <= N0
  std::vector<double> cum_;     // compensated prefix sums of gap lengths
};

}  // namespace ergosol
