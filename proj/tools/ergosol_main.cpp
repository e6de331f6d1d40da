// ergosol: realize a target homology class as a uniquely ergodic solenoid,
// run the module verification suites, pair the solenoid current with forms,
// and check the self-intersection obstruction.  Structured output is JSON on
// stdout; diagnostics go to stderr.
//
// Exit codes: 0 success, 1 bad config or usage, 2 construction failure,
// 3 verification failure (realize still writes its artifacts on 3).

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "ergosol/errors.hpp"
#include "ergosol/homology.hpp"
#include "ergosol/pairing.hpp"
#include "ergosol/pipeline.hpp"
#include "ergosol/rational.hpp"
#include "ergosol/rotation.hpp"
#include "ergosol/serialize.hpp"
#include "ergosol/verify.hpp"

namespace {

nlohmann::json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ergosol::ConfigError("cannot open '" + path + "'");
  try {
    nlohmann::json j;
    in >> j;
    return j;
  } catch (const nlohmann::json::exception& e) {
    throw ergosol::ConfigError("malformed JSON in '" + path + "': " + e.what());
  }
}

// Precedence: explicit flag, then ERGOSOL_OUT, then a local default.
std::string resolve_out_dir(const std::string& flag_value) {
  if (!flag_value.empty()) return flag_value;
  if (const char* env = std::getenv("ERGOSOL_OUT"); env != nullptr && *env != '\0')
    return env;
  return "ergosol-out";
}

ergosol::RotationNumber make_alpha(const std::string& kind,
                                   const std::vector<int>& preperiod,
                                   const std::vector<int>& cf) {
  using ergosol::RotationNumber;
  if (kind == "golden") return RotationNumber::golden();
  if (cf.empty())
    throw ergosol::ConfigError("--alpha-kind " + kind +
                               " needs --alpha-cf coefficients");
  if (kind == "periodic") return RotationNumber::periodic(preperiod, cf);
  if (kind == "truncated") return RotationNumber::truncated(cf);
  return RotationNumber::terminating(cf);  // rejected later by the builder
}

struct RealizeFlags {
  std::string basis_path;
  std::string target;
  std::string alpha_kind = "golden";
  std::vector<int> alpha_preperiod;
  std::vector<int> alpha_cf;
  double gap_c = 0.1;
  double gap_s = 2.0;
  double map_tol = 1e-12;
  double seed_angle = 0.0;
  std::string partition = "exact";
  double separation_tol = 1e-3;
  std::int64_t search_radius = 10000;
  std::vector<double> volumes;
  double epsilon0 = 0.25;
  double isotopy_cut = 0.25;
  double closing_volume = 1.0;
  std::vector<std::int64_t> schedule = {1000, 10000, 100000};
  std::size_t leaves = 50;
  double distance_tol = 1e-3;
  std::uint64_t seed = 0;
  std::string out_dir;
};

int cmd_realize(const RealizeFlags& f) {
  ergosol::RealizeConfig config;
  config.basis = ergosol::basis_from_json(load_json(f.basis_path));
  config.target.coordinates = ergosol::parse_rational_list(f.target);
  config.alpha = make_alpha(f.alpha_kind, f.alpha_preperiod, f.alpha_cf);
  config.gap_amplitude = f.gap_c;
  config.gap_exponent = f.gap_s;
  config.map_tol = f.map_tol;
  config.seed_angle = f.seed_angle;
  config.partition_mode = f.partition == "exact"
                              ? ergosol::PartitionMode::exact
                              : ergosol::PartitionMode::gap_separated;
  config.separation_tol = f.separation_tol;
  config.search_radius = f.search_radius;
  config.volumes = f.volumes;
  config.epsilon0 = f.epsilon0;
  config.isotopy_cut = f.isotopy_cut;
  config.closing_volume = f.closing_volume;
  config.schedule = f.schedule;
  config.leaf_count = f.leaves;
  config.distance_tol = f.distance_tol;
  config.seed = f.seed;
  config.out_dir = resolve_out_dir(f.out_dir);

  const ergosol::RealizeResult result = ergosol::run_realize(config);
  std::cout << result.summary.dump(2) << "\n";
  return result.exit_code;
}

int cmd_verify(const std::string& suite, std::uint64_t seed) {
  const std::vector<ergosol::SuiteReport> reports =
      ergosol::run_suites(suite, seed);
  nlohmann::json out = nlohmann::json::array();
  bool all_pass = true;
  for (const ergosol::SuiteReport& r : reports) {
    out.push_back(ergosol::to_json(r));
    all_pass = all_pass && r.all_pass;
  }
  std::cout << out.dump(2) << "\n";
  return all_pass ? 0 : 3;
}

struct PairFlags {
  std::string spec_path;
  std::string form_path;
  std::string backend = "periods";
  std::string basis_path;
  std::string model_path;
  double tol = 1e-6;
  double measure_scale = 1.0;
};

int cmd_pair(const PairFlags& f) {
  const ergosol::SolenoidSpec spec =
      ergosol::solenoid_from_json(load_json(f.spec_path));
  const nlohmann::json form_json = load_json(f.form_path);
  const std::string form_kind = form_json.value("kind", "");

  ergosol::PairingResult result;
  if (f.backend == "periods") {
    if (f.basis_path.empty())
      throw ergosol::ConfigError("the periods backend needs --basis");
    ergosol::HomologyBasis basis =
        ergosol::basis_from_json(load_json(f.basis_path));
    // A concrete torus form pairs through its coordinate-circle periods.
    const ergosol::AbstractForm form =
        form_kind == "torus-concrete"
            ? ergosol::torus_form_from_json(form_json)
                  .abstract_periods(basis.rank)
            : ergosol::abstract_form_from_json(form_json);
    result = ergosol::rs_pairing_periods(spec, basis, form, f.measure_scale);
  } else {
    if (f.model_path.empty())
      throw ergosol::ConfigError("the quadrature backend needs --model");
    const ergosol::TorusModel model =
        ergosol::torus_model_from_json(load_json(f.model_path));
    const ergosol::TorusForm form = ergosol::torus_form_from_json(form_json);
    try {
      result =
          ergosol::rs_pairing_quadrature(spec, model, form, f.tol,
                                         f.measure_scale);
    } catch (const ergosol::VerificationError& e) {
      // Budget exhausted: report the partial result and fail with 3.
      nlohmann::json partial = {{"error", e.what()},
                                {"achieved_residual", e.achieved},
                                {"backend", "quadrature"}};
      std::cout << partial.dump(2) << "\n";
      return 3;
    }
  }
  std::cout << ergosol::to_json(result).dump(2) << "\n";
  return 0;
}

int cmd_obstruct(const std::string& basis_path, const std::string& target) {
  ergosol::HomologyBasis basis =
      ergosol::basis_from_json(load_json(basis_path));
  const ergosol::TargetClass a{ergosol::parse_rational_list(target)};
  const ergosol::ObstructionVerdict verdict =
      ergosol::embedding_obstruction(a, basis);
  nlohmann::json out = {{"verdict", ergosol::to_string(verdict)},
                        {"codimension",
                         basis.ambient_dimension - basis.degree}};
  if (verdict != ergosol::ObstructionVerdict::inapplicable)
    out["self_intersection"] =
        ergosol::format_rational(ergosol::self_intersection(a, basis));
  std::cout << out.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "realize homology classes as uniquely ergodic solenoids and verify "
      "them"};
  app.require_subcommand(1);

  RealizeFlags rf;
  CLI::App* realize =
      app.add_subcommand("realize", "end-to-end realization of a target class");
  realize->add_option("--basis", rf.basis_path, "homology basis JSON file")
      ->required();
  realize
      ->add_option("--target", rf.target,
                   "target coordinates, e.g. \"0.3,0.7\" or \"3/10,7/10\"")
      ->required();
  realize
      ->add_option("--alpha-kind", rf.alpha_kind,
                   "rotation number flavour (golden [0;1,1,...] by default)")
      ->check(CLI::IsMember({"golden", "periodic", "truncated", "terminating"}));
  realize
      ->add_option("--alpha-cf", rf.alpha_cf,
                   "continued-fraction coefficients (periodic part for "
                   "--alpha-kind periodic)")
      ->delimiter(',');
  realize
      ->add_option("--alpha-preperiod", rf.alpha_preperiod,
                   "preperiodic coefficients for --alpha-kind periodic")
      ->delimiter(',');
  realize->add_option("--gap-c", rf.gap_c, "gap amplitude c");
  realize->add_option("--gap-s", rf.gap_s, "gap decay exponent s");
  realize->add_option("--map-tol", rf.map_tol,
                      "certified truncation tolerance of the circle map");
  realize->add_option("--seed-angle", rf.seed_angle,
                      "base angle of the blown-up orbit");
  realize
      ->add_option("--partition", rf.partition,
                   "partition cut placement mode")
      ->check(CLI::IsMember({"exact", "gap-separated"}));
  realize->add_option("--separation-tol", rf.separation_tol,
                      "allowed cut deviation in gap-separated mode");
  realize->add_option("--search-radius", rf.search_radius,
                      "orbit index window for gap-separated cuts");
  realize
      ->add_option("--volumes", rf.volumes,
                   "per-cycle block volumes (defaults to the basis volumes)")
      ->delimiter(',');
  realize->add_option("--epsilon0", rf.epsilon0,
                      "trapping collar half-width in (0, 1/2)");
  realize->add_option("--isotopy-cut", rf.isotopy_cut,
                      "time after which the connecting isotopy freezes");
  realize->add_option("--closing-volume", rf.closing_volume,
                      "volume cap of the window-closing correction");
  realize
      ->add_option("--schedule", rf.schedule,
                   "window sizes for the convergence check")
      ->delimiter(',');
  realize->add_option("--leaves", rf.leaves, "number of sampled leaves");
  realize->add_option("--distance-tol", rf.distance_tol,
                      "final projective distance tolerance");
  realize->add_option("--seed", rf.seed, "RNG seed for leaf sampling")
      ->required();
  realize->add_option("--out", rf.out_dir,
                      "artifact directory (overrides ERGOSOL_OUT; default "
                      "ergosol-out)");

  std::string suite = "all";
  std::uint64_t verify_seed = 0;
  CLI::App* verify =
      app.add_subcommand("verify", "run module invariant suites");
  verify->add_option("--suite", suite,
                     "circle | solenoid | currents | schwartzman | all");
  verify->add_option("--seed", verify_seed, "RNG seed for sampled checks")
      ->required();

  PairFlags pf;
  CLI::App* pair =
      app.add_subcommand("pair", "pair a solenoid current with a form");
  pair->add_option("--spec", pf.spec_path, "solenoid spec JSON file")
      ->required();
  pair->add_option("--form", pf.form_path, "form JSON file")->required();
  pair->add_option("--backend", pf.backend, "periods | quadrature")
      ->check(CLI::IsMember({"periods", "quadrature"}));
  pair->add_option("--basis", pf.basis_path,
                   "homology basis JSON file (periods backend)");
  pair->add_option("--model", pf.model_path,
                   "torus model JSON file (quadrature backend)");
  pair->add_option("--tol", pf.tol, "quadrature residual tolerance");
  pair->add_option("--measure-scale", pf.measure_scale,
                   "transversal measure scale factor");

  std::string obstruct_basis;
  std::string obstruct_target;
  CLI::App* obstruct = app.add_subcommand(
      "obstruct", "self-intersection obstruction of a target class");
  obstruct->add_option("--basis", obstruct_basis, "homology basis JSON file")
      ->required();
  obstruct->add_option("--target", obstruct_target, "target coordinates")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;  // usage problems are config errors
  }

  try {
    if (realize->parsed()) return cmd_realize(rf);
    if (verify->parsed()) return cmd_verify(suite, verify_seed);
    if (pair->parsed()) return cmd_pair(pf);
    return cmd_obstruct(obstruct_basis, obstruct_target);
  } catch (const ergosol::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const ergosol::ConstructionError& e) {
    std::cerr << "construction error: " << e.what() << "\n";
    return 2;
  } catch (const ergosol::VerificationError& e) {
    std::cerr << "verification error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
