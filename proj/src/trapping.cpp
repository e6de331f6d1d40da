#include "ergosol/trapping.hpp"

#include <cmath>
#include <cstddef>
#include <string>

#include "ergosol/errors.hpp"
#include "ergosol/numeric.hpp"

namespace ergosol {

TrappingModel make_trapping_model(const SolenoidSpec& spec,
                                  int samples_per_block) {
  if (samples_per_block < 1)
    throw ConfigError("need at least one sample per block");
  const MeasuredPartition& part = spec.partition();
  const DenjoyMap& map = spec.map();

  TrappingModel m;
  m.epsilon0 = spec.epsilon0();
  m.window_lo = -spec.epsilon0();
  m.window_hi = spec.epsilon0();
  m.pi_slope_at_zero = 2.0 * spec.epsilon0();  // collar time in [0,1]
  m.block_count = part.size();
  m.alpha = map.alpha_dd();

  // Walk the holonomy orbit until every block holds its quota of sampled
  // zero-slice components.
  std::vector<int> quota(part.size(), samples_per_block);
  std::size_t open_blocks = part.size();
  const std::int64_t n_cap = 1000000;
  for (std::int64_t n = 0; n < n_cap && open_blocks > 0; ++n) {
    const double angle = map.orbit_angle(n);
    const std::size_t b = part.block_of_angle(angle);
    if (quota[b] == 0) continue;
    if (--quota[b] == 0) --open_blocks;
    m.component_angles.push_back(angle);
    m.marks_per_component.push_back(1);
    m.pi_at_marks.push_back(0.0);
    m.component_blocks.push_back(b);
    m.crossings.push_back(TrappingCrossing{angle, map.rotate_angle(angle, 1),
                                           +1, -1});
  }
  if (open_blocks > 0)
    throw ConstructionError(
        "holonomy orbit failed to reach every block; a partition arc is too "
        "thin to sample");
  return m;
}

TrappingReport audit_trapping(const TrappingModel& m) {
  TrappingReport rep;
  rep.conditions.reserve(5);

  {  // (1) region = pi^{-1}((-epsilon0, epsilon0)) with admissible width
    TrappingReport::Condition c{1, true, ""};
    if (!(m.epsilon0 > 0.0 && m.epsilon0 < 0.5)) {
      c.pass = false;
      c.detail = "width " + std::to_string(m.epsilon0) + " outside (0, 1/2)";
    } else if (m.window_lo != -m.epsilon0 || m.window_hi != m.epsilon0) {
      c.pass = false;
      c.detail = "region is pi^{-1}((" + std::to_string(m.window_lo) + ", " +
                 std::to_string(m.window_hi) + ")), expected (+/-" +
                 std::to_string(m.epsilon0) + ")";
    } else {
      c.detail = "region matches pi^{-1}((-e0, e0)), e0 = " +
                 std::to_string(m.epsilon0);
    }
    rep.conditions.push_back(c);
  }

  {  // (2) transversal inside the zero slice and global across blocks
    TrappingReport::Condition c{2, true, ""};
    for (std::size_t i = 0; i < m.pi_at_marks.size() && c.pass; ++i)
      if (m.pi_at_marks[i] != 0.0) {
        c.pass = false;
        c.detail = "transversal point at component angle " +
                   std::to_string(m.component_angles[i]) + " has pi = " +
                   std::to_string(m.pi_at_marks[i]);
      }
    if (c.pass) {
      std::vector<bool> seen(m.block_count, false);
      for (std::size_t b : m.component_blocks)
        if (b < seen.size()) seen[b] = true;
      for (std::size_t b = 0; b < seen.size(); ++b)
        if (!seen[b]) {
          c.pass = false;
          c.detail = "no transversal sample in block " + std::to_string(b);
          break;
        }
    }
    if (c.pass)
      c.detail = "all marks on the zero slice, every block reached";
    rep.conditions.push_back(c);
  }

  {  // (3) exactly one transversal point per zero-slice component
    TrappingReport::Condition c{3, true, ""};
    for (std::size_t i = 0; i < m.marks_per_component.size(); ++i)
      if (m.marks_per_component[i] != 1) {
        c.pass = false;
        c.detail = "component at angle " +
                   std::to_string(m.component_angles[i]) + " meets the "
                   "transversal " + std::to_string(m.marks_per_component[i]) +
                   " times";
        break;
      }
    if (c.pass)
      c.detail = std::to_string(m.marks_per_component.size()) +
                 " components, one transversal point each";
    rep.conditions.push_back(c);
  }

  {  // (4) zero is a regular value of pi
    TrappingReport::Condition c{4, true, ""};
    if (m.pi_slope_at_zero == 0.0) {
      c.pass = false;
      c.detail = "pi has vanishing slope across the zero slice";
    } else {
      c.detail = "pi slope at the zero slice = " +
                 std::to_string(m.pi_slope_at_zero);
    }
    rep.conditions.push_back(c);
  }

  {  // (5) complementary components: one exit, one entry, holonomy-related
    TrappingReport::Condition c{5, true, ""};
    for (std::size_t i = 0; i < m.crossings.size(); ++i) {
      const TrappingCrossing& x = m.crossings[i];
      if (x.exit_side != +1 || x.entry_side != -1) {
        c.pass = false;
        c.detail = "crossing " + std::to_string(i) +
                   " has sides (" + std::to_string(x.exit_side) + ", " +
                   std::to_string(x.entry_side) + "), expected (+1, -1)";
        break;
      }
      const double expected = frac_orbit(x.angle_in, 1, m.alpha);
      if (circle_dist(x.angle_out, expected) > 1e-9) {
        c.pass = false;
        c.detail = "component leaving angle " + std::to_string(x.angle_in) +
                   " returns at " + std::to_string(x.angle_out) +
                   ", not at the holonomy image " + std::to_string(expected);
        break;
      }
    }
    if (c.pass)
      c.detail = std::to_string(m.crossings.size()) +
                 " crossings, each exit rejoining at its holonomy image";
    rep.conditions.push_back(c);
  }

  rep.all_pass = true;
  for (const auto& c : rep.conditions) rep.all_pass = rep.all_pass && c.pass;
  return rep;
}

TrappingReport check_trapping(const SolenoidSpec& spec) {
  return audit_trapping(make_trapping_model(spec));
}

TrappingModel seeded_defect(const SolenoidSpec& spec, TrappingDefect which) {
  TrappingModel m = make_trapping_model(spec);
  switch (which) {
    case TrappingDefect::window_mismatch:
      m.window_hi = 0.5 * m.epsilon0;
      break;
    case TrappingDefect::off_slice_mark:
      m.pi_at_marks.at(0) = 0.05;
      break;
    case TrappingDefect::missing_mark:
      m.marks_per_component.at(0) = 0;
      break;
    case TrappingDefect::degenerate_slope:
      m.pi_slope_at_zero = 0.0;
      break;
    case TrappingDefect::broken_crossing:
      m.crossings.at(0).angle_out = frac(m.crossings.at(0).angle_out + 0.1);
      break;
  }
  return m;
}

}  // namespace ergosol
