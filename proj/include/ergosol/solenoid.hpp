#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ergosol/denjoy.hpp"
#include "ergosol/partition.hpp"

namespace ergosol {

// Orientation mark for one of the two boundary spheres removed from a block.
struct BoundaryMark {
  std::string name;      // "D+" or "D-"
  int orientation = +1;  // +1 outgoing, -1 incoming
};

// One compact k-dimensional building block of the solenoid.  Geometry enters
// only through its k-volume and its integer homology coordinates in a fixed
// basis; the immersed shape itself is never meshed.
struct BlockSpec {
  std::string label;
  int dimension = 1;                          // k
  double volume = 1.0;                        // k-volume, > 0
  std::vector<std::int64_t> homology_coords;  // length = rank of the basis
  bool normal_bundle_trivial = true;
  bool filler = false;  // fillers may have zero homology coordinates
  BoundaryMark boundary_out{"D+", +1};
  BoundaryMark boundary_in{"D-", -1};
};

// Monotone cutoff driving the straightening isotopy: rho(t) = 1 for t <= 0,
// rho(t) = 0 for t >= c_cut, strictly decreasing in between (quintic ramp).
struct IsotopyProfile {
  double c_cut = 0.25;
  double rho(double t) const;
};

// The assembled solenoid: a block per partition arc, glued along the holonomy
// of the Denjoy map.  Leaves are handled symbolically as block itineraries.
// Immutable after build(); all operations are const and re-entrant.
class SolenoidSpec {
 public:
  static SolenoidSpec build(DenjoyMap map, MeasuredPartition partition,
                            std::vector<BlockSpec> blocks,
                            double epsilon0 = 0.25,
                            IsotopyProfile profile = IsotopyProfile{},
                            double closing_volume = 0.0);

  const DenjoyMap& map() const { return map_; }
  const MeasuredPartition& partition() const { return partition_; }
  const std::vector<BlockSpec>& blocks() const { return blocks_; }
  const BlockSpec& block(std::size_t i) const { return blocks_.at(i); }
  std::size_t size() const { return blocks_.size(); }  // r
  int dimension() const { return blocks_.front().dimension; }
  double epsilon0() const { return epsilon0_; }
  const IsotopyProfile& profile() const { return profile_; }
  double closing_volume() const { return closing_volume_; }

 private:
  SolenoidSpec(DenjoyMap map, MeasuredPartition partition,
               std::vector<BlockSpec> blocks, double epsilon0,
               IsotopyProfile profile, double closing_volume);

  DenjoyMap map_;
  MeasuredPartition partition_;
  std::vector<BlockSpec> blocks_;
  double epsilon0_;
  IsotopyProfile profile_;
  double closing_volume_;
};

// Symbolic leaf piece: the block indices visited by the holonomy orbit of a
// transversal point over n in [n_begin, n_end).
struct LeafSegment {
  double base_angle = 0.0;  // rotation coordinate of the base point
  std::int64_t n_begin = 0;
  std::int64_t n_end = 0;
  std::vector<std::size_t> block_sequence;
};

// Itinerary of the leaf through `theta_y` (a rotation coordinate).  Rejects a
// base angle that sits exactly on a separating cut in gap-separated mode,
// where block membership of the corresponding circle point is ambiguous.
LeafSegment leaf_blocks(const SolenoidSpec& spec, double theta_y,
                        std::int64_t n_begin, std::int64_t n_end);

// Poincare return to the transversal: one application of the holonomy.
double holonomy_return(const SolenoidSpec& spec, double x);

// Straightening isotopy h_t on the transversal circle, evaluated on a lift:
// h_t(x) = lift_h(inverse_lift_h(x) * rho(t) + x * (1 - rho(t))) mod 1.
// h_0 = identity, h_t = h for t >= c_cut.
double isotopy_eval(const SolenoidSpec& spec, double t, double x);

}  // namespace ergosol
