#include "ergosol/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <utility>

#include "ergosol/denjoy.hpp"
#include "ergosol/errors.hpp"
#include "ergosol/serialize.hpp"
#include "ergosol/trapping.hpp"

namespace ergosol {
namespace {

using nlohmann::json;

std::string timestamp_utc() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::tm tm_utc{};
  gmtime_r(&t, &tm_utc);
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buf;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw ConstructionError("cannot write " + path.string());
  out << text;
}

}  // namespace

RealizeResult run_realize(const RealizeConfig& config) {
  HomologyBasis basis = config.basis;
  const std::vector<std::string> warnings = basis.validate();

  RealizeResult res;
  res.normalized = normalize_target(config.target, basis);
  res.obstruction = embedding_obstruction(config.target, basis);

  const bool dims_allow_embedding =
      basis.ambient_dimension >= 2 * basis.degree + 1;
  const bool obstructed = res.obstruction == ObstructionVerdict::obstructed;
  res.mode = (dims_allow_embedding && !obstructed) ? "embedding"
                                                   : "transversal immersion";

  if (!config.volumes.empty() && config.volumes.size() != basis.rank)
    throw ConfigError("expected one volume per basis cycle");
  for (double v : config.volumes)
    if (!(v > 0.0)) throw ConfigError("cycle volumes must be positive");

  DenjoyMap map =
      DenjoyMap::build(config.alpha,
                       GapSchedule(config.gap_amplitude, config.gap_exponent),
                       config.seed_angle, config.map_tol);
  MeasuredPartition partition = MeasuredPartition::build(
      map, res.normalized.lambda, config.partition_mode, config.separation_tol,
      config.search_radius);

  std::vector<BlockSpec> blocks;
  blocks.reserve(res.normalized.active_count());
  for (std::size_t i = 0; i < res.normalized.active_count(); ++i) {
    const std::size_t cycle = res.normalized.cycles[i];
    BlockSpec b;
    b.label = basis.labels[cycle];
    b.dimension = basis.degree;
    b.volume = config.volumes.empty() ? basis.volumes[cycle]
                                      : config.volumes[cycle];
    b.homology_coords.assign(basis.rank, 0);
    b.homology_coords[cycle] = res.normalized.signs[i];
    blocks.push_back(std::move(b));
  }

  IsotopyProfile profile;
  profile.c_cut = config.isotopy_cut;
  SolenoidSpec spec =
      SolenoidSpec::build(std::move(map), std::move(partition),
                          std::move(blocks), config.epsilon0, profile,
                          config.closing_volume);

  const TrappingReport trapping = check_trapping(spec);
  res.trapping_pass = trapping.all_pass;

  res.cls = rs_class(spec, basis);

  ExhaustionPolicy policy;
  policy.closing_volume = config.closing_volume;
  policy.schedule = config.schedule;
  res.report = full_representation_check(spec, basis, config.leaf_count,
                                         policy, config.distance_tol,
                                         config.seed);

  const bool verified = res.report.pass && res.trapping_pass;
  res.exit_code = verified ? 0 : 3;

  // ---------------------------------------------------------------- artifacts
  json lambda = json::array();
  for (const Rat& l : res.normalized.lambda)
    lambda.push_back(format_rational(l));
  json target = json::array();
  for (const Rat& c : config.target.coordinates)
    target.push_back(format_rational(c));

  res.construction = json{
      {"schema_version", kSchemaVersion},
      {"target", target},
      {"scale", format_rational(res.normalized.scale)},
      {"lambda", lambda},
      {"active_cycles", res.normalized.cycles},
      {"signs", res.normalized.signs},
      {"obstruction", to_string(res.obstruction)},
      {"mode", res.mode},
      {"basis_warnings", warnings},
      {"map",
       {{"alpha", spec.map().alpha_value()},
        {"certified_error", spec.map().certified_error()},
        {"total_gap_mass", spec.map().total_mass()},
        {"table_size", spec.map().table_size()}}},
      {"partition",
       {{"mode", spec.partition().mode() == PartitionMode::exact
                     ? "exact"
                     : "gap_separated"},
        {"cuts", spec.partition().cuts()},
        {"max_deviation", spec.partition().max_deviation()}}},
      {"solenoid", to_json(spec)},
      {"trapping", to_json(trapping)},
  };

  json rs = json{{"raw", res.cls.raw},
                 {"normalized", res.cls.normalized},
                 {"volume_scale", res.cls.volume_scale},
                 {"exact", res.cls.exact}};
  if (res.cls.exact) {
    json raw_exact = json::array();
    for (const Rat& c : res.cls.raw_exact)
      raw_exact.push_back(format_rational(c));
    rs["raw_exact"] = raw_exact;
  }

  res.summary = json{
      {"schema_version", kSchemaVersion},
      {"generated_at", timestamp_utc()},
      {"seed", config.seed},
      {"target", target},
      {"scale", format_rational(res.normalized.scale)},
      {"lambda", lambda},
      {"obstruction", to_string(res.obstruction)},
      {"mode", res.mode},
      {"rs_class", rs},
      {"trapping_pass", res.trapping_pass},
      {"representation",
       {{"max_distance", res.report.max_distance},
        {"windows", policy.schedule},
        {"monotone", res.report.monotone},
        {"below_tolerance", res.report.below_tolerance},
        {"pass", res.report.pass},
        {"tolerance", res.report.tolerance},
        {"note", res.report.note}}},
      {"exit_code", res.exit_code},
  };

  if (!config.out_dir.empty()) {
    const std::filesystem::path dir(config.out_dir);
    std::filesystem::create_directories(dir);
    write_text(dir / "construction.json", res.construction.dump(2) + "\n");
    std::ofstream csv(dir / "convergence.csv");
    if (!csv)
      throw ConstructionError("cannot write " +
                              (dir / "convergence.csv").string());
    write_convergence_csv(csv, res.report);
    write_text(dir / "summary.json", res.summary.dump(2) + "\n");
  }
  return res;
}

}  // namespace ergosol
