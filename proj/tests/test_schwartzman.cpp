#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "ergosol/errors.hpp"
#include "ergosol/schwartzman.hpp"
#include "oracles.hpp"

using namespace ergosol;

namespace {

HomologyBasis rank2_basis() {
  HomologyBasis b;
  b.rank = 2;
  b.ambient_dimension = 3;
  b.degree = 1;
  b.periods = {{1.0, 0.0}, {0.0, 1.0}};
  b.volumes = {1.0, 2.0};
  b.validate();
  return b;
}

std::vector<BlockSpec> two_blocks() {
  BlockSpec b1, b2;
  b1.label = "C1";
  b1.homology_coords = {1, 0};
  b1.volume = 1.0;
  b2.label = "C2";
  b2.homology_coords = {0, 1};
  b2.volume = 2.0;
  return {b1, b2};
}

SolenoidSpec reference_spec() {
  DenjoyMap map = DenjoyMap::build(RotationNumber::golden(),
                                   GapSchedule(0.1, 2.0), 0.0, 1e-9);
  MeasuredPartition part = MeasuredPartition::build(
      map, {Rat(3, 10), Rat(7, 10)}, PartitionMode::exact);
  return SolenoidSpec::build(std::move(map), std::move(part), two_blocks(),
                             0.25, IsotopyProfile{}, 1.0);
}

// The same solenoid shape over a rational "rotation number"; minimality and
// unique ergodicity fail, so windowed estimates depend on the leaf.
SolenoidSpec rational_spec() {
  DenjoyMap map = DenjoyMap::unchecked_rotation(0.5);
  MeasuredPartition part = MeasuredPartition::build(
      map, {Rat(3, 10), Rat(7, 10)}, PartitionMode::exact);
  return SolenoidSpec::build(std::move(map), std::move(part), two_blocks(),
                             0.25, IsotopyProfile{}, 1.0);
}

ExhaustionPolicy forward_policy(std::vector<std::int64_t> schedule,
                                double v_close = 1.0) {
  ExhaustionPolicy p;
  p.sidedness = WindowSidedness::forward;
  p.closing_volume = v_close;
  p.schedule = std::move(schedule);
  return p;
}

}  // namespace

TEST_CASE("birkhoff frequencies match direct orbit counting") {
  const SolenoidSpec spec = reference_spec();
  const double alpha_ld =
      static_cast<long double>(spec.map().alpha_dd().hi) +
      spec.map().alpha_dd().lo;
  const auto& cuts = spec.partition().cuts();
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 4; ++trial) {
    const double theta = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    const std::int64_t n = 10000;
    const auto freq = birkhoff_frequencies(spec, theta, n);
    REQUIRE(freq.size() == 2);
    const double oracle0 =
        static_cast<double>(oracles::arc_hits(theta, alpha_ld, n, cuts[0],
                                              cuts[1])) /
        static_cast<double>(n);
    CHECK(std::abs(freq[0] - oracle0) <= 2.0 / static_cast<double>(n));
    CHECK(freq[0] + freq[1] == doctest::Approx(1.0).epsilon(1e-15));
  }
  CHECK_THROWS_AS(birkhoff_frequencies(spec, 0.1, 0), ConfigError);
}

TEST_CASE("windowed estimate recomputed from the itinerary") {
  const SolenoidSpec spec = reference_spec();
  const HomologyBasis basis = rank2_basis();
  const double theta = 0.137;
  const std::int64_t n = 5000;
  const auto policy = forward_policy({100, n});
  const AsymptoticEstimate est =
      schwartzman_estimate(spec, basis, theta, n, policy);

  const LeafSegment seg = leaf_blocks(spec, theta, 0, n);
  std::vector<std::int64_t> counts(spec.size(), 0);
  for (std::size_t b : seg.block_sequence) ++counts[b];

  std::vector<std::int64_t> raw(basis.rank, 0);
  double volume = policy.closing_volume;
  for (std::size_t i = 0; i < spec.size(); ++i) {
    volume += static_cast<double>(counts[i]) * spec.block(i).volume;
    for (std::size_t j = 0; j < basis.rank; ++j)
      raw[j] += counts[i] * spec.block(i).homology_coords[j];
  }

  CHECK(est.window == n);
  CHECK(est.raw == raw);
  CHECK(est.volume == doctest::Approx(volume).epsilon(1e-12));
  for (std::size_t j = 0; j < basis.rank; ++j)
    CHECK(est.normalized[j] ==
          static_cast<double>(est.raw[j]) / est.volume);
  for (std::size_t i = 0; i < spec.size(); ++i)
    CHECK(est.frequencies[i] ==
          doctest::Approx(static_cast<double>(counts[i]) / n)
              .epsilon(1e-15));
  CHECK(est.gamma_ratio ==
        doctest::Approx(policy.closing_volume / volume).epsilon(1e-12));
  CHECK(est.gamma_ratio <= 1.0 / (static_cast<double>(n) * 1.0));
}

TEST_CASE("symmetric windows cover [-N, N]") {
  const SolenoidSpec spec = reference_spec();
  const HomologyBasis basis = rank2_basis();
  ExhaustionPolicy policy;
  policy.sidedness = WindowSidedness::symmetric;
  policy.closing_volume = 0.5;
  policy.schedule = {50, 400};
  const double theta = 0.41;
  const AsymptoticEstimate est =
      schwartzman_estimate(spec, basis, theta, 400, policy);

  const LeafSegment seg = leaf_blocks(spec, theta, -400, 401);
  std::vector<std::int64_t> counts(spec.size(), 0);
  for (std::size_t b : seg.block_sequence) ++counts[b];
  std::vector<std::int64_t> raw(basis.rank, 0);
  for (std::size_t i = 0; i < spec.size(); ++i)
    for (std::size_t j = 0; j < basis.rank; ++j)
      raw[j] += counts[i] * spec.block(i).homology_coords[j];
  CHECK(est.raw == raw);
}

TEST_CASE("estimate validation") {
  const SolenoidSpec spec = reference_spec();
  const HomologyBasis basis = rank2_basis();
  CHECK_THROWS_AS(
      schwartzman_estimate(spec, basis, 0.1, 77, forward_policy({100})),
      ConfigError);

  ExhaustionPolicy bad;
  bad.schedule = {100, 100};
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad.schedule = {};
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad.schedule = {0, 10};
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad.schedule = {100};
  bad.closing_volume = -0.5;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
}

TEST_CASE("projective distance edge cases") {
  const std::vector<double> u = {1.0, 2.0};
  const std::vector<double> v = {2.0, 4.0};
  const std::vector<double> w = {-1.0, 1.0};
  const std::vector<double> zero = {0.0, 0.0};
  CHECK(projective_distance(u, u) == 0.0);
  CHECK(projective_distance(u, v) == 0.0);  // same ray, exact in IEEE
  CHECK(projective_distance(zero, zero) == 0.0);
  CHECK(projective_distance(u, zero) == 2.0);
  CHECK(projective_distance(zero, u) == 2.0);
  CHECK(projective_distance(u, w) ==
        doctest::Approx(projective_distance(w, u)).epsilon(1e-15));
  CHECK(projective_distance(u, w) > 0.0);
  CHECK_THROWS_AS(projective_distance(u, {1.0, 2.0, 3.0}), ConfigError);
}

TEST_CASE("representation check passes on the reference solenoid") {
  const SolenoidSpec spec = reference_spec();
  const HomologyBasis basis = rank2_basis();
  const auto policy = forward_policy({500, 5000});
  const RepresentationReport report =
      full_representation_check(spec, basis, 8, policy, 0.05, 99);

  CHECK(report.pass);
  CHECK(report.monotone);
  CHECK(report.below_tolerance);
  CHECK(report.tolerance == 0.05);
  CHECK(report.rows.size() == 16);
  CHECK(report.leaf_angles.size() == 8);
  CHECK(report.max_distance.size() == 2);
  CHECK(report.max_distance[1] <= 0.05);
  CHECK(report.max_distance[0] >= report.max_distance[1]);
  CHECK(!report.note.empty());

  // Rows are leaf-major in schedule order, distances below the leaf max.
  for (std::size_t leaf = 0; leaf < 8; ++leaf) {
    CHECK(report.rows[2 * leaf].window == 500);
    CHECK(report.rows[2 * leaf + 1].window == 5000);
    CHECK(report.rows[2 * leaf].leaf == leaf);
    CHECK(report.rows[2 * leaf].distance <= report.max_distance[0]);
    CHECK(report.rows[2 * leaf + 1].distance <= report.max_distance[1]);
  }

  // Deterministic in the seed.
  const RepresentationReport again =
      full_representation_check(spec, basis, 8, policy, 0.05, 99);
  CHECK(again.leaf_angles == report.leaf_angles);
  for (std::size_t i = 0; i < report.rows.size(); ++i)
    CHECK(again.rows[i].distance == report.rows[i].distance);
}

TEST_CASE("rational holonomy defeats the representation check") {
  const SolenoidSpec spec = rational_spec();
  const HomologyBasis basis = rank2_basis();
  const auto policy = forward_policy({1000, 10000});
  const RepresentationReport report =
      full_representation_check(spec, basis, 10, policy, 1e-3, 7);
  CHECK_FALSE(report.pass);
  CHECK_FALSE(report.below_tolerance);
  CHECK(report.max_distance.back() > 1e-3);
}

TEST_CASE("single-block solenoid estimates sit on the ray exactly") {
  DenjoyMap map = DenjoyMap::build(RotationNumber::golden(),
                                   GapSchedule(0.1, 2.0), 0.0, 1e-9);
  MeasuredPartition part =
      MeasuredPartition::build(map, {Rat(1)}, PartitionMode::exact);
  BlockSpec b;
  b.label = "C1";
  b.homology_coords = {1, 0};
  b.volume = 1.0;
  SolenoidSpec spec = SolenoidSpec::build(std::move(map), std::move(part),
                                          {b}, 0.25, IsotopyProfile{}, 1.0);
  const RepresentationReport report = full_representation_check(
      spec, rank2_basis(), 3, forward_policy({10, 100}), 1e-12, 5);
  CHECK(report.pass);
  CHECK(report.max_distance.back() == 0.0);
}
