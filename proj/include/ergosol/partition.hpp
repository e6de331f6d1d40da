#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ergosol/denjoy.hpp"
#include "ergosol/rational.hpp"

namespace ergosol {

enum class PartitionMode { exact, gap_separated };

// Partition of the minimal set K into r consecutive arcs ("blocks") with
// prescribed transversal masses lambda_i.  Cuts live in collapse coordinates:
//
//   - exact mode: cuts sit at the cumulative sums of the weights, so block i
//     has measure exactly lambda_i (kept in rational arithmetic); blocks are
//     half-open arcs.
//   - gap-separated mode: each cut is moved to the nearest orbit angle within
//     |n| <= search_radius, i.e. strictly into a gap, so blocks become compact
//     and pairwise disjoint in the circle at the cost of a measure deviation
//     (certified <= separation_tol, and reported).
//
// Block i occupies the counterclockwise arc [cut_i, cut_{i+1 mod r}).
class MeasuredPartition {
 public:
  static MeasuredPartition build(const DenjoyMap& map, std::vector<Rat> weights,
                                 PartitionMode mode, double separation_tol = 1e-3,
                                 std::int64_t search_radius = 10000);

  std::size_t size() const { return weights_.size(); }
  PartitionMode mode() const { return mode_; }
  const std::vector<Rat>& weights() const { return weights_; }
  double separation_tol() const { return separation_tol_; }
  std::int64_t search_radius() const { return search_radius_; }

  // Cut positions in collapse coordinates, one per block, block order.
  const std::vector<double>& cuts() const { return cuts_; }
  const std::vector<Rat>& exact_cuts() const { return exact_cuts_; }          // exact mode
  const std::vector<std::int64_t>& cut_gap_indices() const { return gaps_; }  // gap-separated

  std::vector<double> measures() const;
  std::vector<Rat> exact_measures() const;  // exact mode only
  double max_deviation() const;             // max_i |measure_i - lambda_i|

  // Block containing a collapse coordinate (half-open arc convention).
  std::size_t block_of_angle(double theta) const;

  // Block containing a circle point.  In gap-separated mode the interior of a
  // separating gap belongs to no block (nullopt); a separating gap's left
  // endpoint counts toward the block below the cut, the right endpoint toward
  // the block above.
  std::optional<std::size_t> locate(const DenjoyMap& map, double x) const;

 private:
  MeasuredPartition() = default;

  PartitionMode mode_ = PartitionMode::exact;
  std::vector<Rat> weights_;
  std::vector<double> cuts_;
  std::vector<Rat> exact_cuts_;
  std::vector<std::int64_t> gaps_;
  double separation_tol_ = 0.0;
  std::int64_t search_radius_ = 0;
};

}  // namespace ergosol
