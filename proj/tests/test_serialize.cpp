#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include "ergosol/errors.hpp"
#include "ergosol/rational.hpp"
#include "ergosol/serialize.hpp"

using namespace ergosol;
using nlohmann::json;

namespace {

SolenoidSpec reference_spec(PartitionMode mode = PartitionMode::exact) {
  DenjoyMap map = DenjoyMap::build(RotationNumber::golden(),
                                   GapSchedule(0.1, 2.0), 0.0, 1e-9);
  MeasuredPartition part =
      MeasuredPartition::build(map, {Rat(3, 10), Rat(7, 10)}, mode);
  BlockSpec b1, b2;
  b1.label = "C1";
  b1.homology_coords = {1, 0};
  b1.volume = 1.0;
  b2.label = "C2";
  b2.homology_coords = {0, 1};
  b2.volume = 2.0;
  return SolenoidSpec::build(std::move(map), std::move(part), {b1, b2},
                             0.25, IsotopyProfile{}, 1.0);
}

}  // namespace

TEST_CASE("rational parsing and formatting") {
  CHECK(parse_rational("3/10") == Rat(3, 10));
  CHECK(parse_rational("-2") == Rat(-2));
  CHECK(parse_rational("0.3") == Rat(3, 10));
  CHECK(parse_rational("-0.25") == Rat(-1, 4));
  CHECK(parse_rational(format_rational(Rat(22, 7))) == Rat(22, 7));
  CHECK(parse_rational_list("0.3,0.7") ==
        std::vector<Rat>{Rat(3, 10), Rat(7, 10)});
  CHECK(parse_rational_list("1, -2/3") ==
        std::vector<Rat>{Rat(1), Rat(-2, 3)});
  CHECK_THROWS_AS(parse_rational("abc"), ConfigError);
  CHECK_THROWS_AS(parse_rational("1/0"), ConfigError);
  CHECK_THROWS_AS(parse_rational(""), ConfigError);
  CHECK_THROWS_AS(parse_rational_list(""), ConfigError);
}

TEST_CASE("rotation numbers round trip") {
  for (const RotationNumber& r :
       {RotationNumber::golden(), RotationNumber::periodic({2, 1}, {3, 4}),
        RotationNumber::truncated({1, 2, 3, 4, 5}),
        RotationNumber::terminating({2, 2})}) {
    const RotationNumber back = rotation_from_json(to_json(r));
    CHECK(back.kind() == r.kind());
    CHECK(back.value() == r.value());
    CHECK(back.value_error() == r.value_error());
  }
  json j = to_json(RotationNumber::golden());
  j["kind"] = "sideways";
  CHECK_THROWS_AS(rotation_from_json(j), ConfigError);
}

TEST_CASE("schema version is enforced everywhere") {
  json j = to_json(GapSchedule(0.1, 2.0));
  j["schema_version"] = kSchemaVersion + 1;
  CHECK_THROWS_AS(gaps_from_json(j), ConfigError);
  j.erase("schema_version");
  CHECK_THROWS_AS(gaps_from_json(j), ConfigError);
  CHECK_THROWS_AS(gaps_from_json(json::array()), ConfigError);
  CHECK_THROWS_AS(basis_from_json(json{{"rank", 1}}), ConfigError);
}

TEST_CASE("circle maps rebuild from construction parameters") {
  const DenjoyMap map = DenjoyMap::build(RotationNumber::golden(),
                                         GapSchedule(0.1, 2.0), 0.25, 1e-9);
  const DenjoyMap back = denjoy_from_json(to_json(map));
  CHECK(back.alpha_value() == map.alpha_value());
  CHECK(back.seed_angle() == map.seed_angle());
  CHECK(back.default_tol() == map.default_tol());
  CHECK(back.table_size() == map.table_size());
  CHECK(back.certified_error() == map.certified_error());
  for (double x : {0.1, 0.5, 0.95}) {
    CHECK(back.blow_up(x) == map.blow_up(x));
    CHECK(back.apply(x) == map.apply(x));
  }

  // Test-mode maps keep their exact value, rational or not.
  const DenjoyMap rat = DenjoyMap::unchecked_rotation(0.5);
  const json j = to_json(rat);
  CHECK(j.contains("unchecked_alpha"));
  const DenjoyMap rat_back = denjoy_from_json(j);
  CHECK(rat_back.alpha_value() == 0.5);
  CHECK(rat_back.apply(0.25) == rat.apply(0.25));
}

TEST_CASE("partitions rebuild against their map") {
  DenjoyMap map = DenjoyMap::build(RotationNumber::golden(),
                                   GapSchedule(0.1, 2.0), 0.0, 1e-9);
  for (PartitionMode mode :
       {PartitionMode::exact, PartitionMode::gap_separated}) {
    const MeasuredPartition part = MeasuredPartition::build(
        map, {Rat(3, 10), Rat(7, 10)}, mode);
    const MeasuredPartition back = partition_from_json(to_json(part), map);
    CHECK(back.mode() == part.mode());
    CHECK(back.weights() == part.weights());
    CHECK(back.cuts() == part.cuts());
    CHECK(back.max_deviation() == part.max_deviation());
  }
}

TEST_CASE("solenoids round trip through builders") {
  const SolenoidSpec spec = reference_spec(PartitionMode::gap_separated);
  const SolenoidSpec back = solenoid_from_json(to_json(spec));
  CHECK(back.size() == spec.size());
  CHECK(back.epsilon0() == spec.epsilon0());
  CHECK(back.closing_volume() == spec.closing_volume());
  CHECK(back.profile().c_cut == spec.profile().c_cut);
  CHECK(back.block(0).label == "C1");
  CHECK(back.block(1).homology_coords == std::vector<std::int64_t>{0, 1});
  CHECK(back.partition().cuts() == spec.partition().cuts());
  const LeafSegment a = leaf_blocks(spec, 0.1234, 0, 64);
  const LeafSegment b = leaf_blocks(back, 0.1234, 0, 64);
  CHECK(a.block_sequence == b.block_sequence);

  // Deserialization still runs full validation.
  json bad = to_json(spec);
  bad["epsilon0"] = 0.75;
  CHECK_THROWS_AS(solenoid_from_json(bad), ConfigError);
  bad = to_json(spec);
  bad["blocks"][0]["volume"] = -1.0;
  CHECK_THROWS_AS(solenoid_from_json(bad), ConfigError);
}

TEST_CASE("bases round trip with optional intersection form") {
  HomologyBasis b;
  b.rank = 2;
  b.ambient_dimension = 3;
  b.degree = 1;
  b.periods = {{1.0, 0.0}, {0.0, 1.0}};
  b.volumes = {1.0, 2.0};
  b.intersection_form = std::vector<std::vector<std::int64_t>>{{0, 1}, {1, 0}};
  b.validate();
  const HomologyBasis back = basis_from_json(to_json(b));
  CHECK(back.rank == 2);
  CHECK(back.labels == b.labels);
  CHECK(back.periods == b.periods);
  CHECK(back.intersection_form == b.intersection_form);

  HomologyBasis no_form = b;
  no_form.intersection_form.reset();
  const HomologyBasis back2 = basis_from_json(to_json(no_form));
  CHECK_FALSE(back2.intersection_form.has_value());
}

TEST_CASE("forms and models round trip") {
  AbstractForm a;
  a.periods = {0.25, -1.5};
  const AbstractForm a_back = abstract_form_from_json(to_json(a));
  CHECK(a_back.periods == a.periods);
  CHECK(a_back.is_exact == a.is_exact);

  TorusForm f;
  f.coefficients = {0.7, -0.3, 0.2};
  f.probe_amplitude = 0.5;
  const TorusForm f_back = torus_form_from_json(to_json(f));
  CHECK(f_back.coefficients == f.coefficients);
  CHECK(f_back.probe_amplitude == 0.5);
  CHECK(f_back.ball_inner == f.ball_inner);

  TorusModel m;
  m.dimension = 5;
  m.ball_center = {0.5, 0.5, 0.5, 0.5, 0.5};
  const TorusModel m_back = torus_model_from_json(to_json(m));
  CHECK(m_back.dimension == 5);
  CHECK(m_back.ball_center == m.ball_center);

  // Kind tags are not interchangeable.
  CHECK_THROWS_AS(abstract_form_from_json(to_json(f)), ConfigError);
  CHECK_THROWS_AS(torus_form_from_json(to_json(a)), ConfigError);
}

TEST_CASE("csv writers emit plottable tables") {
  const SolenoidSpec spec = reference_spec();
  LeafSegment seg = leaf_blocks(spec, 0.1, -2, 3);
  std::ostringstream leaf;
  write_leaf_csv(leaf, seg);
  const std::string text = leaf.str();
  CHECK(text.rfind("n,block\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 6);
  CHECK(text.find("-2,") != std::string::npos);

  RepresentationReport rep;
  rep.rows = {{100, 0, 0.25, 0.01}, {1000, 0, 0.125, 0.001}};
  std::ostringstream conv;
  write_convergence_csv(conv, rep);
  const std::string ctext = conv.str();
  CHECK(ctext.rfind("window,leaf,distance,gamma_ratio\n", 0) == 0);
  CHECK(std::count(ctext.begin(), ctext.end(), '\n') == 3);
  CHECK(ctext.find("0.25") != std::string::npos);
}
