#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ergosol/rational.hpp"
#include "ergosol/solenoid.hpp"

namespace ergosol {

// Ambient homology data in a fixed basis of integral k-cycles.  The manifold
// itself is abstracted away: everything downstream consumes periods, the
// intersection form, and cycle volumes.
struct HomologyBasis {
  std::size_t rank = 0;       // number of basis cycles
  int ambient_dimension = 0;  // n
  int degree = 0;             // k
  std::vector<std::string> labels;             // size rank (filled if empty)
  std::vector<std::vector<double>> periods;    // rank x m: <C_i, omega_j>
  std::optional<std::vector<std::vector<std::int64_t>>> intersection_form;
  std::vector<double> volumes;                 // k-volumes of the cycles

  // Throws ConfigError on structural problems; returns soft warnings (e.g. an
  // intersection form without the expected (-1)^{k(n-k)} symmetry).
  std::vector<std::string> validate();
};

// A real homology class in basis coordinates, kept rational so normalization
// and reconstruction stay exact.
struct TargetClass {
  std::vector<Rat> coordinates;
};

// Decomposition a = s * sum_i lambda_i * sign_i * C_{cycle_i} with positive
// weights summing to one and zero coefficients dropped.
struct NormalizedTarget {
  std::vector<std::size_t> cycles;  // active basis indices, ascending
  std::vector<int> signs;           // +1 / -1 per active cycle
  std::vector<Rat> lambda;          // positive, sums to 1 exactly
  Rat scale{1};                     // s > 0
  std::size_t active_count() const { return cycles.size(); }
};

NormalizedTarget normalize_target(const TargetClass& a,
                                  const HomologyBasis& basis);

enum class ObstructionVerdict { inapplicable, unobstructed, obstructed };
std::string to_string(ObstructionVerdict v);

// a^T Q a in exact arithmetic.  Requires the intersection form regardless of
// codimension parity; embedding_obstruction decides when it matters.
Rat self_intersection(const TargetClass& a, const HomologyBasis& basis);

// Self-intersection obstruction to embedded realizations: defined only when
// the codimension n-k is even, in which case a nonzero a^T Q a rules out an
// atomless embedded realization and forces an immersion.
ObstructionVerdict embedding_obstruction(const TargetClass& a,
                                         const HomologyBasis& basis);

// Current class of the solenoid: raw = sum_i mu_i * C_i over the blocks, and
// the volume-normalized variant raw / sum_i mu_i Vol_i.  Exact rational
// coordinates accompany the doubles whenever the partition is exact.
struct RSClass {
  std::vector<double> raw;
  std::vector<double> normalized;
  double volume_scale = 0.0;  // sum_i mu_i Vol_i (before measure scaling)
  bool exact = false;
  std::vector<Rat> raw_exact;  // filled when exact
};

// measure_scale rescales the transversal measure (the class is covariant in
// it); the normalized variant is scale-invariant by construction.
RSClass rs_class(const SolenoidSpec& spec, const HomologyBasis& basis,
                 const Rat& measure_scale = Rat(1));

}  // namespace ergosol
