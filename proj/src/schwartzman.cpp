#include "ergosol/schwartzman.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "ergosol/errors.hpp"
#include "ergosol/numeric.hpp"

namespace ergosol {

void ExhaustionPolicy::validate() const {
  if (closing_volume < 0.0)
    throw ConfigError("closing cap volume must be non-negative");
  if (schedule.empty()) throw ConfigError("window schedule is empty");
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    if (schedule[i] < 1) throw ConfigError("window sizes must be >= 1");
    if (i > 0 && schedule[i] <= schedule[i - 1])
      throw ConfigError("window schedule must be strictly increasing");
  }
}

namespace {

// Accumulates block visits along one leaf itinerary.  Snapshots yield legal
// exhaustions because windows always consist of complete blocks.
struct LeafWalker {
  const SolenoidSpec& spec;
  double theta_y;
  DD alpha;
  std::vector<std::int64_t> counts;
  std::vector<std::int64_t> raw;
  KahanSum volume;
  std::int64_t samples = 0;

  LeafWalker(const SolenoidSpec& s, double theta)
      : spec(s),
        theta_y(frac(theta)),
        alpha(s.map().alpha_dd()),
        counts(s.size(), 0),
        raw(s.blocks().front().homology_coords.size(), 0) {}

  void visit(std::int64_t n) {
    const std::size_t b =
        spec.partition().block_of_angle(frac_orbit(theta_y, n, alpha));
    ++counts[b];
    const BlockSpec& blk = spec.block(b);
    for (std::size_t j = 0; j < raw.size(); ++j)
      raw[j] += blk.homology_coords[j];
    volume.add(blk.volume);
    ++samples;
  }

  AsymptoticEstimate snapshot(std::int64_t window, double v_close) const {
    AsymptoticEstimate e;
    e.window = window;
    e.raw = raw;
    e.volume = volume.value() + v_close;
    e.normalized.resize(raw.size());
    for (std::size_t j = 0; j < raw.size(); ++j)
      e.normalized[j] = static_cast<double>(raw[j]) / e.volume;
    e.frequencies.resize(counts.size());
    for (std::size_t b = 0; b < counts.size(); ++b)
      e.frequencies[b] = static_cast<double>(counts[b]) /
                         static_cast<double>(samples);
    e.gamma_ratio = v_close / e.volume;
    return e;
  }
};

// Runs one leaf through every window of the schedule, in one pass.
std::vector<AsymptoticEstimate> walk_schedule(const SolenoidSpec& spec,
                                              double theta_y,
                                              const ExhaustionPolicy& policy) {
  LeafWalker w(spec, theta_y);
  std::vector<AsymptoticEstimate> out;
  out.reserve(policy.schedule.size());
  std::size_t next = 0;
  if (policy.sidedness == WindowSidedness::forward) {
    const std::int64_t n_max = policy.schedule.back();
    for (std::int64_t n = 0; n < n_max; ++n) {
      w.visit(n);
      while (next < policy.schedule.size() &&
             policy.schedule[next] == n + 1) {
        out.push_back(w.snapshot(n + 1, policy.closing_volume));
        ++next;
      }
    }
  } else {
    w.visit(0);
    const std::int64_t n_max = policy.schedule.back();
    for (std::int64_t m = 1; m <= n_max; ++m) {
      w.visit(-m);
      w.visit(m);
      while (next < policy.schedule.size() && policy.schedule[next] == m) {
        out.push_back(w.snapshot(m, policy.closing_volume));
        ++next;
      }
    }
  }
  return out;
}

}  // namespace

std::vector<double> birkhoff_frequencies(const SolenoidSpec& spec,
                                         double theta_y,
                                         std::int64_t window) {
  if (window < 1) throw ConfigError("frequency window must be >= 1");
  LeafWalker w(spec, theta_y);
  for (std::int64_t n = 0; n < window; ++n) w.visit(n);
  return w.snapshot(window, 0.0).frequencies;
}

AsymptoticEstimate schwartzman_estimate(const SolenoidSpec& spec,
                                        const HomologyBasis& basis,
                                        double theta_y, std::int64_t window,
                                        const ExhaustionPolicy& policy) {
  policy.validate();
  if (std::find(policy.schedule.begin(), policy.schedule.end(), window) ==
      policy.schedule.end())
    throw ConfigError("window " + std::to_string(window) +
                      " is not in the exhaustion schedule");
  for (const BlockSpec& b : spec.blocks())
    if (b.homology_coords.size() != basis.rank)
      throw ConfigError("block '" + b.label +
                        "' does not match the basis rank");
  ExhaustionPolicy single = policy;
  single.schedule = {window};
  return walk_schedule(spec, theta_y, single).front();
}

double projective_distance(const std::vector<double>& u,
                           const std::vector<double>& v) {
  if (u.size() != v.size())
    throw ConfigError("projective distance needs equal-length vectors");
  double nu = 0.0, nv = 0.0;
  for (double x : u) nu += std::abs(x);
  for (double x : v) nv += std::abs(x);
  if (nu == 0.0 && nv == 0.0) return 0.0;
  if (nu == 0.0 || nv == 0.0) return 2.0;
  double d = 0.0;
  for (std::size_t j = 0; j < u.size(); ++j)
    d += std::abs(u[j] / nu - v[j] / nv);
  return d;
}

RepresentationReport full_representation_check(const SolenoidSpec& spec,
                                               const HomologyBasis& basis,
                                               std::size_t leaf_count,
                                               const ExhaustionPolicy& policy,
                                               double tolerance,
                                               std::uint64_t seed) {
  if (leaf_count < 1) throw ConfigError("need at least one sampled leaf");
  policy.validate();
  const RSClass cls = rs_class(spec, basis);

  RepresentationReport rep;
  rep.tolerance = tolerance;
  rep.note =
      "windows are block-aligned leaf exhaustions along the verified "
      "schedule; other exhaustion shapes are out of scope";
  rep.max_distance.assign(policy.schedule.size(), 0.0);

  std::mt19937_64 rng(seed);
  rep.leaf_angles.reserve(leaf_count);
  for (std::size_t leaf = 0; leaf < leaf_count; ++leaf) {
    // Explicit 53-bit mantissa draw, identical across platforms.
    const double theta =
        static_cast<double>(rng() >> 11) * 0x1.0p-53;
    rep.leaf_angles.push_back(theta);
    const std::vector<AsymptoticEstimate> ests =
        walk_schedule(spec, theta, policy);
    for (std::size_t s = 0; s < ests.size(); ++s) {
      RepresentationReport::Row row;
      row.window = ests[s].window;
      row.leaf = leaf;
      row.distance = projective_distance(ests[s].normalized, cls.normalized);
      row.gamma_ratio = ests[s].gamma_ratio;
      rep.rows.push_back(row);
      rep.max_distance[s] = std::max(rep.max_distance[s], row.distance);
    }
  }

  rep.monotone = true;
  for (std::size_t s = 1; s < rep.max_distance.size(); ++s)
    if (rep.max_distance[s] > rep.max_distance[s - 1] + 1e-15)
      rep.monotone = false;
  rep.below_tolerance = rep.max_distance.back() <= tolerance;
  rep.pass = rep.monotone && rep.below_tolerance;
  return rep;
}

}  // namespace ergosol
