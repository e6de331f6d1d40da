#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ergosol/numeric.hpp"
#include "ergosol/solenoid.hpp"

namespace ergosol {

// Symbolic audit of the trapping region around the transversal.  The width
// coordinate pi runs linearly from -epsilon0 (entry face) to +epsilon0 (exit
// face) across the straightening collar and is pinned at +epsilon0 outside,
// so the region is exactly pi^{-1}((-epsilon0, epsilon0)).  The zero slice
// splits into one sphere component per transversal point; the model samples
// finitely many of them along the holonomy orbit.
//
// One leaf component between consecutive zero-slice hits leaves through the
// exit face and comes back through the entry face at the holonomy image, so
// its closure meets the transversal in exactly the pair (y, h(y)).
struct TrappingCrossing {
  double angle_in = 0.0;   // transversal angle the component leaves from
  double angle_out = 0.0;  // transversal angle it returns to (= h applied)
  int exit_side = +1;      // sign of pi just after leaving
  int entry_side = -1;     // sign of pi just before returning
};

struct TrappingModel {
  double epsilon0 = 0.25;
  double window_lo = -0.25, window_hi = 0.25;  // the region in pi coordinates
  double pi_slope_at_zero = 0.5;               // d(pi)/dt across the collar
  std::vector<double> component_angles;        // sampled zero-slice components
  std::vector<int> marks_per_component;        // transversal points seen in each
  std::vector<double> pi_at_marks;             // pi value at each marked point
  std::vector<std::size_t> component_blocks;   // partition block of each sample
  std::size_t block_count = 0;
  std::vector<TrappingCrossing> crossings;
  DD alpha{0.0, 0.0};  // holonomy rotation, for recomputing return targets
};

struct TrappingReport {
  struct Condition {
    int index = 0;  // 1..5
    bool pass = false;
    std::string detail;  // witness on failure, summary on pass
  };
  std::vector<Condition> conditions;
  bool all_pass = false;
};

// Builds the audit model from a constructed solenoid, sampling
// `samples_per_block` zero-slice components inside every partition block.
TrappingModel make_trapping_model(const SolenoidSpec& spec,
                                  int samples_per_block = 16);

// Checks the five trapping conditions on a model:
//   (1) the region is the pi-preimage of (-epsilon0, epsilon0), 0<epsilon0<1/2
//   (2) the transversal sits in the zero slice and meets every block
//   (3) every sampled zero-slice component carries exactly one transversal point
//   (4) zero is a regular value of pi (nonzero slope across the collar)
//   (5) each complementary component closure meets the transversal in exactly
//       one exit point (pi >= 0 side) and one entry point (pi <= 0 side),
//       related by the holonomy
TrappingReport audit_trapping(const TrappingModel& model);

// Convenience: build the model and audit it.
TrappingReport check_trapping(const SolenoidSpec& spec);

// Fixed library of mutations, each violating exactly one condition.
enum class TrappingDefect {
  window_mismatch,   // (1) region boundary moved off +/- epsilon0
  off_slice_mark,    // (2) a transversal point pushed off the zero slice
  missing_mark,      // (3) a component's transversal point deleted
  degenerate_slope,  // (4) pi made critical at the zero slice
  broken_crossing,   // (5) a component returning away from the holonomy image
};

TrappingModel seeded_defect(const SolenoidSpec& spec, TrappingDefect which);

}  // namespace ergosol
