#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "ergosol/homology.hpp"
#include "ergosol/rotation.hpp"
#include "ergosol/schwartzman.hpp"

namespace ergosol {

// Everything the end-to-end realization needs.  The CLI populates this from
// flags and files; tests populate it directly.
struct RealizeConfig {
  HomologyBasis basis;
  TargetClass target;
  RotationNumber alpha = RotationNumber::golden();
  double gap_amplitude = 0.1;   // c
  double gap_exponent = 2.0;    // s
  double map_tol = 1e-12;
  double seed_angle = 0.0;
  PartitionMode partition_mode = PartitionMode::exact;
  double separation_tol = 1e-3;
  std::int64_t search_radius = 10000;
  std::vector<double> volumes;  // per basis cycle; empty = take from basis
  double epsilon0 = 0.25;
  double isotopy_cut = 0.25;
  double closing_volume = 1.0;
  std::vector<std::int64_t> schedule = {1000, 10000, 100000};
  std::size_t leaf_count = 50;
  double distance_tol = 1e-3;
  std::uint64_t seed = 0;
  std::string out_dir;  // empty = no artifacts written
};

struct RealizeResult {
  int exit_code = 0;  // 0 pass, 3 verification failure
  std::string mode;   // "embedding" or "transversal immersion"
  ObstructionVerdict obstruction = ObstructionVerdict::inapplicable;
  NormalizedTarget normalized;
  RSClass cls;
  RepresentationReport report;
  bool trapping_pass = false;
  nlohmann::json construction;  // written as construction.json
  nlohmann::json summary;       // written as summary.json
};

// Normalize the target, decide embedding vs immersion, build the circle map,
// the measured partition and the solenoid, audit the trapping region, compute
// the current class, and verify leafwise convergence of the windowed
// estimates.  Writes construction.json, convergence.csv and summary.json to
// `out_dir` (if set) on every verification outcome; throws ConfigError /
// ConstructionError before artifacts exist.
RealizeResult run_realize(const RealizeConfig& config);

}  // namespace ergosol
