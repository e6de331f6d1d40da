#include "ergosol/partition.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ergosol/errors.hpp"
#include "ergosol/numeric.hpp"

namespace ergosol {
namespace {

// theta in the counterclockwise arc [a, b)?  a == b means the full circle.
bool in_arc(double a, double b, double theta) {
  if (a == b) return true;
  if (a < b) return a <= theta && theta < b;
  return theta >= a || theta < b;  // arc wraps through 0
}

}  // namespace

MeasuredPartition MeasuredPartition::build(const DenjoyMap& map,
                                           std::vector<Rat> weights,
                                           PartitionMode mode,
                                           double separation_tol,
                                           std::int64_t search_radius) {
  if (weights.empty()) throw ConfigError("partition needs at least one block");
  Rat sum(0);
  for (const Rat& w : weights) {
    if (w <= Rat(0)) throw ConfigError("partition weights must be positive");
    sum += w;
  }
  if (sum != Rat(1)) {
    if (std::abs(to_double(sum) - 1.0) > 1e-12)
      throw ConfigError("partition weights must sum to 1 (got " +
                        format_rational(sum) + ")");
    for (Rat& w : weights) w /= sum;  // exact renormalization
  }

  MeasuredPartition p;
  p.mode_ = mode;
  p.weights_ = weights;
  p.separation_tol_ = separation_tol;
  p.search_radius_ = search_radius;

  // Cumulative targets: cut_i = sum of weights below block i.
  std::vector<Rat> targets;
  targets.reserve(weights.size());
  Rat acc(0);
  for (const Rat& w : weights) {
    targets.push_back(acc);
    acc += w;
  }

  if (mode == PartitionMode::exact) {
    p.exact_cuts_ = targets;
    p.cuts_.reserve(targets.size());
    for (const Rat& t : targets) p.cuts_.push_back(to_double(t));
    return p;
  }

  if (map.gap_schedule().degenerate())
    throw ConfigError("gap-separated cuts need a map with gaps");
  if (search_radius < 0) throw ConfigError("search radius must be >= 0");

  // Move each cut to the nearest orbit angle; ties resolve to the smallest
  // |n| because the scan visits 0, -1, 1, -2, 2, ... with strict improvement.
  p.cuts_.reserve(targets.size());
  p.gaps_.reserve(targets.size());
  for (const Rat& t : targets) {
    const double target = to_double(t);
    std::int64_t best_n = 0;
    double best_angle = map.orbit_angle(0);
    double best_d = circle_dist(best_angle, target);
    for (std::int64_t m = 1; m <= search_radius; ++m) {
      for (std::int64_t n : {-m, m}) {
        const double angle = map.orbit_angle(n);
        const double d = circle_dist(angle, target);
        if (d < best_d) {
          best_d = d;
          best_n = n;
          best_angle = angle;
        }
      }
    }
    if (!p.gaps_.empty()) {
      for (std::int64_t seen : p.gaps_)
        if (seen == best_n)
          throw ConstructionError(
              "separating cuts collided in gap " + std::to_string(best_n) +
              "; blocks too thin for this search radius");
    }
    p.cuts_.push_back(best_angle);
    p.gaps_.push_back(best_n);
  }

  const double dev = p.max_deviation();
  if (!(dev <= separation_tol))
    throw ConstructionError(
        "separated cuts deviate from the prescribed masses by " +
        std::to_string(dev) + " (tolerance " + std::to_string(separation_tol) +
        "); enlarge the search radius");
  return p;
}

std::vector<double> MeasuredPartition::measures() const {
  const std::size_t r = cuts_.size();
  std::vector<double> out(r);
  if (r == 1) {
    out[0] = 1.0;
    return out;
  }
  for (std::size_t i = 0; i < r; ++i) {
    const double next = cuts_[(i + 1) % r];
    out[i] = frac(next - cuts_[i]);
  }
  return out;
}

std::vector<Rat> MeasuredPartition::exact_measures() const {
  if (mode_ != PartitionMode::exact)
    throw ConfigError("exact measures are only available in exact mode");
  return weights_;  // cuts sit exactly at the cumulative sums
}

double MeasuredPartition::max_deviation() const {
  if (mode_ == PartitionMode::exact) return 0.0;
  const std::vector<double> m = measures();
  double worst = 0.0;
  for (std::size_t i = 0; i < m.size(); ++i)
    worst = std::max(worst, std::abs(m[i] - to_double(weights_[i])));
  return worst;
}

std::size_t MeasuredPartition::block_of_angle(double theta) const {
  const std::size_t r = cuts_.size();
  if (r == 1) return 0;
  for (std::size_t i = 0; i < r; ++i)
    if (in_arc(cuts_[i], cuts_[(i + 1) % r], theta)) return i;
  // Unreachable for theta in [0,1): the arcs cover the circle.
  return r - 1;
}

std::optional<std::size_t> MeasuredPartition::locate(const DenjoyMap& map,
                                                     double x) const {
  const DenjoyMap::Probe pr = map.probe(x);
  if (mode_ == PartitionMode::gap_separated && pr.in_gap) {
    for (std::size_t i = 0; i < cuts_.size(); ++i) {
      if (pr.angle != cuts_[i]) continue;
      const std::size_t r = cuts_.size();
      if (x == pr.gap_left) return (i + r - 1) % r;  // block below the cut
      if (x == pr.gap_right) return i;               // block above the cut
      return std::nullopt;                           // strictly inside the gap
    }
  }
  return block_of_angle(pr.angle);
}

}  // namespace ergosol
