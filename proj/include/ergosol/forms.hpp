#pragma once

#include <vector>

#include "ergosol/homology.hpp"

namespace ergosol {

// A closed k-form known only through its periods against the basis cycles.
struct AbstractForm {
  std::vector<double> periods;  // <C_i, omega> per basis cycle
  bool is_exact = false;        // implies all periods vanish

  void validate(const HomologyBasis& basis) const;
};

// Period vector of column j of the basis period matrix, as an AbstractForm.
AbstractForm abstract_form_from_column(const HomologyBasis& basis,
                                       std::size_t column);

// Concrete ambient model: the flat n-torus (n >= 2k+1) with cycles the first
// coordinate circles, a designated ball around `ball_center` where forms are
// made to vanish, and a small transversal circle of radius
// `transversal_radius` inside that ball, living in the last two coordinate
// directions.
struct TorusModel {
  int dimension = 3;  // n >= 2k+1
  std::vector<double> ball_center;     // size n; defaults to (1/2, ..., 1/2)
  double transversal_radius = 0.02;

  void validate(int degree, std::size_t rank) const;
  std::vector<double> transversal_point(double theta) const;  // on the circle
};

// A closed 1-form on the torus model, cohomologous to sum_j c_j dx_j but
// deformed to vanish identically on the inner ball:
//
//   omega = sum_j c_j dx_j - d(psi) + d(probe)
//   psi(x) = B(r(x)) * sum_j c_j w_j(x)
//
// where w(x) is the offset from the ball center wrapped to [-1/2, 1/2)^n,
// r = |w|, and B is a quintic cutoff equal to 1 for r <= ball_inner and 0 for
// r >= ball_outer.  Inside the ball, d(psi) cancels the constant part
// exactly.  The optional probe term adds the differential of a function
// supported on the annulus [probe_inner, probe_outer] — an exact form with
// zero periods, used to exercise closedness.
struct TorusForm {
  std::vector<double> coefficients;  // c_j, one per torus coordinate
  double ball_inner = 0.06;
  double ball_outer = 0.22;
  double probe_amplitude = 0.0;
  double probe_inner = 0.26;
  double probe_outer = 0.48;

  void validate(const TorusModel& model) const;

  // Periods against the coordinate-circle cycles: just the leading
  // coefficients (the deformation terms are exact).
  AbstractForm abstract_periods(std::size_t rank) const;
};

// Potential of the ball deformation at a point (for derivative cross-checks).
double torus_psi(const TorusForm& form, const TorusModel& model,
                 const std::vector<double>& x);
// Annulus probe potential at a point.
double torus_probe(const TorusForm& form, const TorusModel& model,
                   const std::vector<double>& x);
// Covector of the full form at a point: c - grad(psi) + grad(probe).
// Exactly zero (componentwise) wherever r(x) <= ball_inner.
std::vector<double> torus_form_covector(const TorusForm& form,
                                        const TorusModel& model,
                                        const std::vector<double>& x);

// a*f + b*g for forms sharing the same shell radii (covector is linear in the
// coefficients and the probe amplitude).
TorusForm combine(double a, const TorusForm& f, double b, const TorusForm& g);

}  // namespace ergosol
