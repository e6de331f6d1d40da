#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "ergosol/denjoy.hpp"
#include "ergosol/errors.hpp"
#include "ergosol/gaps.hpp"
#include "ergosol/numeric.hpp"
#include "ergosol/rotation.hpp"
#include "oracles.hpp"

using namespace ergosol;

namespace {

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

DenjoyMap reference_map(double tol = 1e-9) {
  return DenjoyMap::build(RotationNumber::golden(), GapSchedule(0.1, 2.0),
                          0.0, tol);
}

}  // namespace

TEST_CASE("rotation number closed forms") {
  const RotationNumber golden = RotationNumber::golden();
  CHECK(golden.kind() == RotationNumber::Kind::periodic);
  CHECK(golden.value() == doctest::Approx((std::sqrt(5.0) - 1.0) / 2.0)
                              .epsilon(1e-15));
  // Exact quadratic irrationals carry only representation slack, no
  // truncation error.
  CHECK(golden.value_error() <= 1e-30);

  const RotationNumber root2 = RotationNumber::periodic({}, {2});
  CHECK(root2.value() ==
        doctest::Approx(std::sqrt(2.0) - 1.0).epsilon(1e-15));

  CHECK(RotationNumber::terminating({2}).value() == doctest::Approx(0.5));
  CHECK(RotationNumber::terminating({3}).value() ==
        doctest::Approx(1.0 / 3.0));
  CHECK(RotationNumber::terminating({2, 2}).value() ==
        doctest::Approx(0.4));
  CHECK(RotationNumber::terminating({2}).is_rational());

  const RotationNumber trunc = RotationNumber::truncated({1, 1, 1, 1, 1, 1});
  CHECK(trunc.value_error() > 0.0);
  CHECK(trunc.value() ==
        doctest::Approx((std::sqrt(5.0) - 1.0) / 2.0)
            .epsilon(10.0 * trunc.value_error()));
}

TEST_CASE("denominator ladder satisfies the convergent recurrence") {
  const auto ladder = RotationNumber::golden().denominator_ladder(100);
  REQUIRE(ladder.size() >= 5);
  CHECK(ladder[0].q == 1);
  CHECK(ladder[1].q == 1);
  for (const auto& row : ladder) {
    CHECK(row.q <= 100);
    CHECK(row.next_coeff == 1);
  }
  for (std::size_t j = 1; j + 1 < ladder.size(); ++j)
    CHECK(ladder[j + 1].q ==
          ladder[j].next_coeff * ladder[j].q + ladder[j - 1].q);

  // sqrt(2) - 1: q = 1, 2, 5, 12, 29, 70, ...
  const auto l2 = RotationNumber::periodic({}, {2}).denominator_ladder(100);
  REQUIRE(l2.size() >= 4);
  for (std::size_t j = 1; j + 1 < l2.size(); ++j)
    CHECK(l2[j + 1].q == l2[j].next_coeff * l2[j].q + l2[j - 1].q);
}

TEST_CASE("gap schedule lengths and tail bounds") {
  const GapSchedule g(0.1, 2.0);
  CHECK(g.length(0) == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(g.length(3) == g.length(-3));
  CHECK(g.length(1) == doctest::Approx(0.1 / 4.0).epsilon(1e-15));
  CHECK_FALSE(g.degenerate());
  CHECK(GapSchedule(0.0, 2.0).degenerate());

  const oracles::BlowUpOracle oracle(0.0L, 0.0L, 0.1L, 2.0L, 2000000);
  CHECK(std::abs(g.total_mass() - oracle.total_mass()) <=
        oracle.mass_bound() + 1e-12);

  CHECK(g.tail_mass(100) < g.tail_mass(10));
  CHECK(g.tail_mass(1000000) < 1e-6);
}

TEST_CASE("rigid rotation closed forms") {
  const RotationNumber golden = RotationNumber::golden();
  for (const DenjoyMap& map :
       {DenjoyMap::rigid_rotation(golden),
        DenjoyMap::build(golden, GapSchedule(0.0, 2.0))}) {
    CHECK(map.rigid());
    const DD alpha = map.alpha_dd();
    std::mt19937_64 rng(2024);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const double x = uniform01(rng);
      const double y = uniform01(rng);
      worst = std::max(worst, std::abs(map.blow_up(x) - x));
      worst = std::max(worst, std::abs(map.collapse(x) - x));
      worst = std::max(worst,
                       circle_dist(map.apply(x), frac_orbit(x, 1, alpha)));
      worst = std::max(
          worst, std::abs(map.arc_measure(x, y) -
                          (x == y ? 1.0 : frac(y - x))));
    }
    CHECK(worst <= 1e-12);
    CHECK(std::abs(map.estimate_rotation_number(0.1, 2000) -
                   map.alpha_value()) <= 2.0 / 2000);
  }
}

TEST_CASE("blow-up matches the direct series oracle") {
  const DenjoyMap map = reference_map();
  const oracles::BlowUpOracle oracle(
      static_cast<long double>(map.alpha_dd().hi) + map.alpha_dd().lo, 0.0L,
      0.1L, 2.0L, 400000);
  CHECK(std::abs(map.total_mass() - oracle.total_mass()) <=
        oracle.mass_bound() + map.certified_error() + 1e-12);

  std::mt19937_64 rng(7);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const double theta = uniform01(rng);
    worst = std::max(worst,
                     std::abs(map.blow_up(theta) - oracle.value(theta)));
  }
  CHECK(worst <= oracle.bound() + map.certified_error() + 1e-12);
}

TEST_CASE("semiconjugacy on Cantor points") {
  const DenjoyMap map = reference_map();
  const double alpha = map.alpha_value();
  std::mt19937_64 rng(11);
  double worst = 0.0;
  for (int i = 0; i < 300; ++i) {
    const double x = map.blow_up(uniform01(rng));
    const double lhs = map.collapse(map.apply(x));
    const double rhs = frac(map.collapse(x) + alpha);
    worst = std::max(worst, circle_dist(lhs, rhs));
  }
  CHECK(worst <= 1e-9);
}

TEST_CASE("apply and its inverse round trip") {
  const DenjoyMap map = reference_map();
  std::mt19937_64 rng(13);
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const double x = uniform01(rng);
    worst = std::max(worst, circle_dist(map.apply_inverse(map.apply(x)), x));
    worst = std::max(worst, circle_dist(map.apply(map.apply_inverse(x)), x));
  }
  CHECK(worst <= 1e-9);
}

TEST_CASE("blow-up is monotone") {
  const DenjoyMap map = reference_map();
  std::mt19937_64 rng(17);
  std::vector<double> thetas(200);
  for (double& t : thetas) t = uniform01(rng);
  std::sort(thetas.begin(), thetas.end());
  for (std::size_t i = 0; i + 1 < thetas.size(); ++i)
    CHECK(map.blow_up(thetas[i]) <= map.blow_up(thetas[i + 1]));
}

TEST_CASE("gaps map affinely onto their successors") {
  const DenjoyMap map = reference_map();
  for (std::int64_t n : {-3, -1, 0, 1, 5}) {
    const auto [l0, r0] = map.gap_interval(n);
    const auto [l1, r1] = map.gap_interval(n + 1);
    CHECK(circle_dist(map.apply(l0), l1) <= 1e-9);
    CHECK(circle_dist(map.apply(r0 - 1e-12), r1) <= 1e-6);
    // Affine on the gap: the midpoint goes to the midpoint.
    const double mid0 = (l0 + r0) / 2.0;
    const double mid1 = (l1 + r1) / 2.0;
    CHECK(circle_dist(map.apply(mid0), mid1) <= 1e-9);

    // Gap closures carry no transversal measure.
    CHECK(map.arc_measure(l0, r0 - 1e-13) <= 1e-9);

    const auto pr = map.probe(mid0);
    CHECK(pr.in_gap);
    CHECK(pr.gap_left == doctest::Approx(l0).epsilon(1e-12));
    CHECK(pr.gap_right == doctest::Approx(r0).epsilon(1e-12));
    CHECK(pr.angle == doctest::Approx(map.orbit_angle(n)).epsilon(1e-12));
  }
}

TEST_CASE("arc measure is invariant and additive") {
  const DenjoyMap map = reference_map();
  std::mt19937_64 rng(19);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double x = uniform01(rng);
    const double y = uniform01(rng);
    worst = std::max(worst, std::abs(map.arc_measure(map.apply(x),
                                                     map.apply(y)) -
                                     map.arc_measure(x, y)));
  }
  CHECK(worst <= 1e-8);

  CHECK(map.arc_measure(0.3, 0.3) == 1.0);
  const double a = 0.2, b = 0.55, c = 0.9;
  CHECK(map.arc_measure(a, b) + map.arc_measure(b, c) ==
        doctest::Approx(map.arc_measure(a, c)).epsilon(1e-12));
  CHECK(map.arc_measure(a, b) + map.arc_measure(b, a) ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("rotation number estimate converges at the Denjoy rate") {
  const DenjoyMap map = reference_map();
  for (std::int64_t n : {200, 2000}) {
    const double est = map.estimate_rotation_number(0.37, n);
    CHECK(std::abs(est - map.alpha_value()) <=
          2.0 / static_cast<double>(n));
  }
}

TEST_CASE("orbit angles follow the double-double kernel") {
  const DenjoyMap map = reference_map();
  const DD alpha = map.alpha_dd();
  for (std::int64_t n : {-100000, -17, 0, 1, 123456}) {
    CHECK(map.orbit_angle(n) == frac_orbit(0.0, n, alpha));
    CHECK(map.rotate_angle(0.3, n) == frac_orbit(0.3, n, alpha));
  }
}

TEST_CASE("construction rejects bad inputs") {
  CHECK_THROWS_AS(
      DenjoyMap::build(RotationNumber::terminating({2}), GapSchedule(0.1, 2.0)),
      ConstructionError);
  CHECK_THROWS_AS(GapSchedule(-0.1, 2.0), ConfigError);
  CHECK_THROWS_AS(GapSchedule(0.1, 1.0), ConfigError);
  CHECK_THROWS_AS(DenjoyMap::build(RotationNumber::golden(),
                                   GapSchedule(0.1, 2.0), 0.0, 0.0),
                  ConfigError);
  const DenjoyMap map = reference_map();
  CHECK_THROWS_AS(map.blow_up(0.5, 1e-18), ConfigError);
}

TEST_CASE("unchecked rotation accepts rational values") {
  const DenjoyMap map = DenjoyMap::unchecked_rotation(0.5);
  CHECK(map.rigid());
  CHECK_FALSE(map.rotation().has_value());
  CHECK(map.apply(0.25) == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(map.apply(0.75) == doctest::Approx(0.25).epsilon(1e-15));
}
