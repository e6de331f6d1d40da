#include "ergosol/serialize.hpp"

#include <ostream>
#include <string>
#include <vector>

#include "ergosol/errors.hpp"

namespace ergosol {
namespace {

using nlohmann::json;

void require_version(const json& j, const char* what) {
  if (!j.is_object())
    throw ConfigError(std::string(what) + ": expected a JSON object");
  if (j.value("schema_version", -1) != kSchemaVersion)
    throw ConfigError(std::string(what) + ": unsupported schema version");
}

json rational_to_json(const Rat& r) { return format_rational(r); }

Rat rational_from_json(const json& j) {
  if (j.is_number_integer())
    return Rat(j.get<std::int64_t>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw ConfigError("expected a rational as integer or string");
}

}  // namespace

json to_json(const RotationNumber& r) {
  json j{{"schema_version", kSchemaVersion}};
  switch (r.kind()) {
    case RotationNumber::Kind::periodic:
      j["kind"] = "periodic";
      j["preperiod"] = r.preperiod();
      j["period"] = r.period();
      break;
    case RotationNumber::Kind::truncated:
      j["kind"] = "truncated";
      j["coefficients"] = r.preperiod();
      break;
    case RotationNumber::Kind::terminating:
      j["kind"] = "terminating";
      j["coefficients"] = r.preperiod();
      break;
  }
  return j;
}

RotationNumber rotation_from_json(const json& j) {
  require_version(j, "rotation number");
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "periodic")
    return RotationNumber::periodic(
        j.value("preperiod", std::vector<int>{}),
        j.at("period").get<std::vector<int>>());
  if (kind == "truncated")
    return RotationNumber::truncated(
        j.at("coefficients").get<std::vector<int>>());
  if (kind == "terminating")
    return RotationNumber::terminating(
        j.at("coefficients").get<std::vector<int>>());
  throw ConfigError("unknown rotation kind '" + kind + "'");
}

json to_json(const GapSchedule& g) {
  return json{{"schema_version", kSchemaVersion},
              {"amplitude", g.c()},
              {"exponent", g.s()}};
}

GapSchedule gaps_from_json(const json& j) {
  require_version(j, "gap schedule");
  return GapSchedule(j.at("amplitude").get<double>(),
                     j.at("exponent").get<double>());
}

json to_json(const DenjoyMap& m) {
  json j{{"schema_version", kSchemaVersion},
         {"gaps", to_json(m.gap_schedule())},
         {"seed_angle", m.seed_angle()},
         {"tol", m.default_tol()}};
  if (m.rotation())
    j["rotation"] = to_json(*m.rotation());
  else  // test-mode map: rebuilt verbatim, including rational values
    j["unchecked_alpha"] = m.alpha_value();
  return j;
}

DenjoyMap denjoy_from_json(const json& j) {
  require_version(j, "circle map");
  if (j.contains("unchecked_alpha"))
    return DenjoyMap::unchecked_rotation(j["unchecked_alpha"].get<double>());
  return DenjoyMap::build(rotation_from_json(j.at("rotation")),
                          gaps_from_json(j.at("gaps")),
                          j.value("seed_angle", 0.0),
                          j.value("tol", 1e-12));
}

json to_json(const MeasuredPartition& p) {
  json weights = json::array();
  for (const Rat& w : p.weights()) weights.push_back(rational_to_json(w));
  json j{{"schema_version", kSchemaVersion},
         {"mode", p.mode() == PartitionMode::exact ? "exact" : "gap_separated"},
         {"weights", weights}};
  if (p.mode() == PartitionMode::gap_separated) {
    j["separation_tol"] = p.separation_tol();
    j["search_radius"] = p.search_radius();
  }
  return j;
}

MeasuredPartition partition_from_json(const json& j, const DenjoyMap& map) {
  require_version(j, "partition");
  std::vector<Rat> weights;
  for (const json& w : j.at("weights")) weights.push_back(rational_from_json(w));
  const std::string mode = j.at("mode").get<std::string>();
  if (mode == "exact")
    return MeasuredPartition::build(map, weights, PartitionMode::exact);
  if (mode == "gap_separated")
    return MeasuredPartition::build(map, weights, PartitionMode::gap_separated,
                                    j.value("separation_tol", 1e-3),
                                    j.value("search_radius", std::int64_t{10000}));
  throw ConfigError("unknown partition mode '" + mode + "'");
}

json to_json(const BlockSpec& b) {
  return json{{"schema_version", kSchemaVersion},
              {"label", b.label},
              {"dimension", b.dimension},
              {"volume", b.volume},
              {"homology_coords", b.homology_coords},
              {"normal_bundle_trivial", b.normal_bundle_trivial},
              {"filler", b.filler},
              {"boundary_out", {{"name", b.boundary_out.name},
                                {"orientation", b.boundary_out.orientation}}},
              {"boundary_in", {{"name", b.boundary_in.name},
                               {"orientation", b.boundary_in.orientation}}}};
}

BlockSpec block_from_json(const json& j) {
  require_version(j, "block");
  BlockSpec b;
  b.label = j.at("label").get<std::string>();
  b.dimension = j.at("dimension").get<int>();
  b.volume = j.at("volume").get<double>();
  b.homology_coords = j.at("homology_coords").get<std::vector<std::int64_t>>();
  b.normal_bundle_trivial = j.value("normal_bundle_trivial", true);
  b.filler = j.value("filler", false);
  if (j.contains("boundary_out")) {
    b.boundary_out.name = j["boundary_out"].value("name", "D+");
    b.boundary_out.orientation = j["boundary_out"].value("orientation", +1);
  }
  if (j.contains("boundary_in")) {
    b.boundary_in.name = j["boundary_in"].value("name", "D-");
    b.boundary_in.orientation = j["boundary_in"].value("orientation", -1);
  }
  return b;
}

json to_json(const SolenoidSpec& s) {
  json blocks = json::array();
  for (const BlockSpec& b : s.blocks()) blocks.push_back(to_json(b));
  return json{{"schema_version", kSchemaVersion},
              {"map", to_json(s.map())},
              {"partition", to_json(s.partition())},
              {"blocks", blocks},
              {"epsilon0", s.epsilon0()},
              {"isotopy", {{"c_cut", s.profile().c_cut}}},
              {"closing_volume", s.closing_volume()}};
}

SolenoidSpec solenoid_from_json(const json& j) {
  require_version(j, "solenoid");
  DenjoyMap map = denjoy_from_json(j.at("map"));
  MeasuredPartition part = partition_from_json(j.at("partition"), map);
  std::vector<BlockSpec> blocks;
  for (const json& b : j.at("blocks")) blocks.push_back(block_from_json(b));
  IsotopyProfile profile;
  if (j.contains("isotopy")) profile.c_cut = j["isotopy"].value("c_cut", 0.25);
  return SolenoidSpec::build(std::move(map), std::move(part),
                             std::move(blocks), j.value("epsilon0", 0.25),
                             profile, j.value("closing_volume", 0.0));
}

json to_json(const HomologyBasis& b) {
  json j{{"schema_version", kSchemaVersion},
         {"rank", b.rank},
         {"ambient_dimension", b.ambient_dimension},
         {"degree", b.degree},
         {"labels", b.labels},
         {"periods", b.periods},
         {"volumes", b.volumes}};
  if (b.intersection_form)
    j["intersection_form"] = *b.intersection_form;
  else
    j["intersection_form"] = nullptr;
  return j;
}

HomologyBasis basis_from_json(const json& j) {
  require_version(j, "homology basis");
  HomologyBasis b;
  b.rank = j.at("rank").get<std::size_t>();
  b.ambient_dimension = j.at("ambient_dimension").get<int>();
  b.degree = j.at("degree").get<int>();
  b.labels = j.value("labels", std::vector<std::string>{});
  b.periods = j.value("periods", std::vector<std::vector<double>>{});
  b.volumes = j.value("volumes", std::vector<double>{});
  if (j.contains("intersection_form") && !j["intersection_form"].is_null())
    b.intersection_form =
        j["intersection_form"].get<std::vector<std::vector<std::int64_t>>>();
  b.validate();
  return b;
}

json to_json(const AbstractForm& f) {
  return json{{"schema_version", kSchemaVersion},
              {"kind", "abstract-periods"},
              {"periods", f.periods},
              {"is_exact", f.is_exact}};
}

AbstractForm abstract_form_from_json(const json& j) {
  require_version(j, "form");
  if (j.value("kind", "") != "abstract-periods")
    throw ConfigError("expected an abstract-periods form");
  AbstractForm f;
  f.periods = j.at("periods").get<std::vector<double>>();
  f.is_exact = j.value("is_exact", false);
  return f;
}

json to_json(const TorusModel& m) {
  return json{{"schema_version", kSchemaVersion},
              {"dimension", m.dimension},
              {"ball_center", m.ball_center},
              {"transversal_radius", m.transversal_radius}};
}

TorusModel torus_model_from_json(const json& j) {
  require_version(j, "torus model");
  TorusModel m;
  m.dimension = j.at("dimension").get<int>();
  m.ball_center = j.value("ball_center", std::vector<double>{});
  m.transversal_radius = j.value("transversal_radius", 0.02);
  return m;
}

json to_json(const TorusForm& f) {
  return json{{"schema_version", kSchemaVersion},
              {"kind", "torus-concrete"},
              {"coefficients", f.coefficients},
              {"ball_inner", f.ball_inner},
              {"ball_outer", f.ball_outer},
              {"probe_amplitude", f.probe_amplitude},
              {"probe_inner", f.probe_inner},
              {"probe_outer", f.probe_outer}};
}

TorusForm torus_form_from_json(const json& j) {
  require_version(j, "form");
  if (j.value("kind", "") != "torus-concrete")
    throw ConfigError("expected a torus-concrete form");
  TorusForm f;
  f.coefficients = j.at("coefficients").get<std::vector<double>>();
  f.ball_inner = j.value("ball_inner", f.ball_inner);
  f.ball_outer = j.value("ball_outer", f.ball_outer);
  f.probe_amplitude = j.value("probe_amplitude", 0.0);
  f.probe_inner = j.value("probe_inner", f.probe_inner);
  f.probe_outer = j.value("probe_outer", f.probe_outer);
  return f;
}

json to_json(const PairingResult& p) {
  return json{{"schema_version", kSchemaVersion},
              {"value", p.value},
              {"error_bound", p.error_bound},
              {"backend", p.backend}};
}

json to_json(const TrappingReport& r) {
  json conditions = json::array();
  for (const auto& c : r.conditions)
    conditions.push_back(json{{"index", c.index},
                              {"pass", c.pass},
                              {"detail", c.detail}});
  return json{{"schema_version", kSchemaVersion},
              {"conditions", conditions},
              {"all_pass", r.all_pass}};
}

json to_json(const AsymptoticEstimate& e) {
  return json{{"schema_version", kSchemaVersion},
              {"window", e.window},
              {"raw", e.raw},
              {"volume", e.volume},
              {"normalized", e.normalized},
              {"frequencies", e.frequencies},
              {"gamma_ratio", e.gamma_ratio}};
}

json to_json(const RepresentationReport& r) {
  json rows = json::array();
  for (const auto& row : r.rows)
    rows.push_back(json{{"window", row.window},
                        {"leaf", row.leaf},
                        {"distance", row.distance},
                        {"gamma_ratio", row.gamma_ratio}});
  return json{{"schema_version", kSchemaVersion},
              {"rows", rows},
              {"max_distance", r.max_distance},
              {"leaf_angles", r.leaf_angles},
              {"monotone", r.monotone},
              {"below_tolerance", r.below_tolerance},
              {"pass", r.pass},
              {"tolerance", r.tolerance},
              {"note", r.note}};
}

void write_leaf_csv(std::ostream& out, const LeafSegment& seg) {
  out << "n,block\n";
  for (std::size_t m = 0; m < seg.block_sequence.size(); ++m)
    out << (seg.n_begin + static_cast<std::int64_t>(m)) << ','
        << seg.block_sequence[m] << '\n';
}

void write_convergence_csv(std::ostream& out,
                           const RepresentationReport& rep) {
  out << "window,leaf,distance,gamma_ratio\n";
  out.precision(17);
  for (const auto& row : rep.rows)
    out << row.window << ',' << row.leaf << ',' << row.distance << ','
        << row.gamma_ratio << '\n';
}

}  // namespace ergosol
