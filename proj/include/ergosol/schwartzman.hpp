#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ergosol/homology.hpp"
#include "ergosol/solenoid.hpp"

namespace ergosol {

enum class WindowSidedness { forward, symmetric };

// How a finite piece of leaf is cut and closed into a cycle: forward windows
// [0, N) or symmetric ones [-N, N], always at trapping-region crossings so
// every truncation consists of complete blocks; the closure is modeled as a
// cap of fixed volume and zero homology (it lies inside the designated ball).
struct ExhaustionPolicy {
  WindowSidedness sidedness = WindowSidedness::forward;
  double closing_volume = 0.0;        // V_close per closure
  std::vector<std::int64_t> schedule; // strictly increasing window sizes

  void validate() const;
};

// One windowed estimate of the asymptotic cycle of a leaf.
struct AsymptoticEstimate {
  std::int64_t window = 0;                 // N
  std::vector<std::int64_t> raw;           // sum of block coordinates
  double volume = 0.0;                     // sum of block volumes + V_close
  std::vector<double> normalized;          // raw / volume, exactly
  std::vector<double> frequencies;         // per-block visit frequencies
  double gamma_ratio = 0.0;                // V_close / volume
};

// Visit frequencies of the partition blocks along the forward itinerary of
// the leaf through theta_y (a rotation coordinate), n = 0..N-1.
std::vector<double> birkhoff_frequencies(const SolenoidSpec& spec,
                                         double theta_y, std::int64_t window);

AsymptoticEstimate schwartzman_estimate(const SolenoidSpec& spec,
                                        const HomologyBasis& basis,
                                        double theta_y, std::int64_t window,
                                        const ExhaustionPolicy& policy);

// l1 distance between the rays through u and v (each scaled to unit absolute
// coordinate sum).  Two zero vectors are at distance 0; a zero vector is at
// the diameter 2 from everything else.
double projective_distance(const std::vector<double>& u,
                           const std::vector<double>& v);

struct RepresentationReport {
  struct Row {
    std::int64_t window = 0;
    std::size_t leaf = 0;
    double distance = 0.0;     // projective, against the normalized current
    double gamma_ratio = 0.0;
  };
  std::vector<Row> rows;                 // leaf-major, schedule order within
  std::vector<double> max_distance;      // per schedule entry, over leaves
  std::vector<double> leaf_angles;       // the sampled base points
  bool monotone = false;                 // max distances non-increasing
  bool below_tolerance = false;          // final max <= tolerance
  bool pass = false;
  double tolerance = 0.0;
  std::string note;  // scope restriction of the windows checked
};

// Samples m leaves (deterministically from `seed`), runs the estimate along
// the policy schedule, and compares each against the volume-normalized
// current class of the solenoid.
RepresentationReport full_representation_check(const SolenoidSpec& spec,
                                               const HomologyBasis& basis,
                                               std::size_t leaf_count,
                                               const ExhaustionPolicy& policy,
                                               double tolerance,
                                               std::uint64_t seed);

}  // namespace ergosol
