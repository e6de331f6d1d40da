#include "ergosol/solenoid.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "ergosol/errors.hpp"
#include "ergosol/numeric.hpp"

namespace ergosol {

double IsotopyProfile::rho(double t) const {
  if (t <= 0.0) return 1.0;
  if (t >= c_cut) return 0.0;
  return 1.0 - smoothstep5(t / c_cut);
}

SolenoidSpec::SolenoidSpec(DenjoyMap map, MeasuredPartition partition,
                           std::vector<BlockSpec> blocks, double epsilon0,
                           IsotopyProfile profile, double closing_volume)
    : map_(std::move(map)),
      partition_(std::move(partition)),
      blocks_(std::move(blocks)),
      epsilon0_(epsilon0),
      profile_(profile),
      closing_volume_(closing_volume) {}

SolenoidSpec SolenoidSpec::build(DenjoyMap map, MeasuredPartition partition,
                                 std::vector<BlockSpec> blocks, double epsilon0,
                                 IsotopyProfile profile,
                                 double closing_volume) {
  if (blocks.empty()) throw ConfigError("a solenoid needs at least one block");
  if (blocks.size() != partition.size())
    throw ConfigError("got " + std::to_string(blocks.size()) + " blocks for " +
                      std::to_string(partition.size()) + " partition arcs");
  const int k = blocks.front().dimension;
  for (const BlockSpec& b : blocks) {
    if (b.dimension != k)
      throw ConfigError("blocks must share one dimension (block '" + b.label +
                        "' has k=" + std::to_string(b.dimension) + ")");
    if (b.dimension < 1)
      throw ConfigError("block dimension must be a positive integer");
    if (!(b.volume > 0.0))
      throw ConfigError("block '" + b.label + "' needs positive volume");
    if (!b.filler) {
      bool all_zero = true;
      for (std::int64_t c : b.homology_coords)
        if (c != 0) all_zero = false;
      if (all_zero)
        throw ConfigError("block '" + b.label +
                          "' has zero homology coordinates; flag it as filler "
                          "if that is intended");
    }
    if (std::abs(b.boundary_out.orientation) != 1 ||
        std::abs(b.boundary_in.orientation) != 1)
      throw ConfigError("boundary marks must carry orientation +1 or -1");
  }
  if (!(epsilon0 > 0.0 && epsilon0 < 0.5))
    throw ConfigError("trapping half-width must lie in (0, 1/2)");
  if (!(profile.c_cut > 0.0 && profile.c_cut < 1.0))
    throw ConfigError("isotopy cutoff must lie in (0, 1)");
  if (closing_volume < 0.0)
    throw ConfigError("closing volume must be non-negative");

  // Endpoint and monotonicity audit of the cutoff on a sampled grid.
  if (profile.rho(0.0) != 1.0 || profile.rho(profile.c_cut) != 0.0)
    throw ConfigError("isotopy cutoff must run from 1 at t=0 to 0 at t=c_cut");
  double prev = 1.0;
  for (int i = 1; i <= 64; ++i) {
    const double t = profile.c_cut * static_cast<double>(i) / 65.0;
    const double r = profile.rho(t);
    if (!(r < prev))
      throw ConfigError("isotopy cutoff must be strictly decreasing");
    prev = r;
  }

  return SolenoidSpec(std::move(map), std::move(partition), std::move(blocks),
                      epsilon0, profile, closing_volume);
}

LeafSegment leaf_blocks(const SolenoidSpec& spec, double theta_y,
                        std::int64_t n_begin, std::int64_t n_end) {
  if (!(n_begin < n_end))
    throw ConfigError("leaf range must be non-empty (n_begin < n_end)");
  const MeasuredPartition& part = spec.partition();
  theta_y = frac(theta_y);
  if (part.mode() == PartitionMode::gap_separated) {
    for (double cut : part.cuts())
      if (theta_y == cut)
        throw ConfigError(
            "base angle sits on a separating cut; the transversal point "
            "belongs to no single block");
  }

  LeafSegment seg;
  seg.base_angle = theta_y;
  seg.n_begin = n_begin;
  seg.n_end = n_end;
  seg.block_sequence.reserve(static_cast<std::size_t>(n_end - n_begin));
  const DD alpha = spec.map().alpha_dd();
  for (std::int64_t n = n_begin; n < n_end; ++n)
    seg.block_sequence.push_back(
        part.block_of_angle(frac_orbit(theta_y, n, alpha)));
  return seg;
}

double holonomy_return(const SolenoidSpec& spec, double x) {
  return spec.map().apply(x);
}

namespace {

// Increasing lift of the holonomy with lift_h(0) = apply(0); commutes with
// integer translation.
double lift_apply(const DenjoyMap& map, double u, double r0) {
  const double m = std::floor(u);
  const double f = u - m;
  double y = map.apply(f);
  if (y < r0) y += 1.0;
  return y + m;
}

double lift_apply_inverse(const DenjoyMap& map, double x, double r0) {
  // x in [0,1); returns the lift preimage, possibly below 0.
  const double z = map.apply_inverse(x);
  double y = map.apply(z);
  if (y < r0) y += 1.0;
  // lift_h(z) is x or x+1; shift z down a period in the latter case.
  return (y > x + 0.5) ? z - 1.0 : z;
}

}  // namespace

double isotopy_eval(const SolenoidSpec& spec, double t, double x) {
  if (!(t >= 0.0 && t <= 1.0))
    throw ConfigError("isotopy time must lie in [0, 1]");
  const DenjoyMap& map = spec.map();
  const double rho = spec.profile().rho(t);
  x = frac(x);
  if (rho == 0.0) return map.apply(x);
  const double r0 = map.apply(0.0);
  const double u = lift_apply_inverse(map, x, r0) * rho + x * (1.0 - rho);
  return frac(lift_apply(map, u, r0));
}

}  // namespace ergosol
