#include "ergosol/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <utility>

#include "ergosol/errors.hpp"
#include "ergosol/numeric.hpp"
#include "ergosol/pairing.hpp"
#include "ergosol/schwartzman.hpp"
#include "ergosol/trapping.hpp"

namespace ergosol {
namespace {

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Reference configuration shared by the suites: golden rotation blown up
// along quadratically decaying gaps, split 3/10 : 7/10 over two blocks of
// volumes 1 and 2 inside the 3-torus.
constexpr double kRefTol = 1e-9;

DenjoyMap ref_map() {
  return DenjoyMap::build(RotationNumber::golden(), GapSchedule(0.1, 2.0), 0.0,
                          kRefTol);
}

HomologyBasis ref_basis() {
  HomologyBasis b;
  b.rank = 2;
  b.ambient_dimension = 3;
  b.degree = 1;
  b.periods = {{1.0, 0.0}, {0.0, 1.0}};
  b.intersection_form = std::vector<std::vector<std::int64_t>>{{0, 0}, {0, 0}};
  b.volumes = {1.0, 2.0};
  b.validate();
  return b;
}

std::vector<BlockSpec> ref_blocks() {
  BlockSpec b1{"C1", 1, 1.0, {1, 0}, true, false, {"D+", +1}, {"D-", -1}};
  BlockSpec b2{"C2", 1, 2.0, {0, 1}, true, false, {"D+", +1}, {"D-", -1}};
  return {b1, b2};
}

SolenoidSpec ref_spec(DenjoyMap map, PartitionMode mode) {
  MeasuredPartition part = MeasuredPartition::build(
      map, {Rat(3, 10), Rat(7, 10)}, mode);
  return SolenoidSpec::build(std::move(map), std::move(part), ref_blocks(),
                             0.25, IsotopyProfile{}, 1.0);
}

TorusModel ref_model() {
  TorusModel m;
  m.dimension = 3;
  return m;
}

CheckResult check(std::string name, double measured, double bound,
                  std::string detail = "") {
  CheckResult c;
  c.name = std::move(name);
  c.measured = measured;
  c.bound = bound;
  c.pass = measured <= bound;
  c.detail = std::move(detail);
  return c;
}

SuiteReport finish(SuiteReport rep) {
  rep.all_pass = true;
  for (const CheckResult& c : rep.checks) rep.all_pass = rep.all_pass && c.pass;
  return rep;
}

SuiteReport suite_circle(std::uint64_t seed) {
  SuiteReport rep;
  rep.suite = "circle";
  std::mt19937_64 rng(seed);

  {  // Degenerate gaps: the map must match the rigid rotation formulas.
    DenjoyMap rigid = DenjoyMap::rigid_rotation(RotationNumber::golden());
    const DD alpha = rigid.alpha_dd();
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
      const double x = uniform01(rng);
      worst = std::max(worst, circle_dist(rigid.apply(x),
                                          frac_orbit(x, 1, alpha)));
      worst = std::max(worst, std::abs(rigid.blow_up(x) - x));
      worst = std::max(worst, std::abs(rigid.collapse(x) - x));
      const double y = uniform01(rng);
      worst = std::max(worst,
                       std::abs(rigid.arc_measure(x, y) - frac(y - x)));
    }
    rep.checks.push_back(
        check("rigid rotation matches closed forms", worst, 1e-12));
  }

  DenjoyMap map = ref_map();
  const DD alpha = map.alpha_dd();

  {  // Semiconjugacy: collapse intertwines the map with the rotation.
    double worst = 0.0;
    for (int i = 0; i < 300; ++i) {
      const double x = map.blow_up(uniform01(rng));
      const double lhs = map.collapse(map.apply(x));
      const double rhs = frac_orbit(map.collapse(x), 1, alpha);
      worst = std::max(worst, circle_dist(lhs, rhs));
    }
    rep.checks.push_back(check("semiconjugacy residual", worst, 1e-6));
  }

  {  // Inverse round trip.
    double worst = 0.0;
    for (int i = 0; i < 300; ++i) {
      const double x = map.blow_up(uniform01(rng));
      worst = std::max(worst,
                       circle_dist(map.apply_inverse(map.apply(x)), x));
    }
    rep.checks.push_back(check("inverse round trip", worst, 1e-9));
  }

  {  // The transversal measure is invariant under the map.
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const double x1 = map.blow_up(uniform01(rng));
      const double x2 = map.blow_up(uniform01(rng));
      const double before = map.arc_measure(x1, x2);
      const double after = map.arc_measure(map.apply(x1), map.apply(x2));
      worst = std::max(worst, std::abs(after - before));
    }
    rep.checks.push_back(check("arc measure invariance", worst, 1e-8));
  }

  {  // Lift-displacement estimate of the rotation number.
    const std::int64_t n = 2000;
    const double est = map.estimate_rotation_number(0.1, n);
    rep.checks.push_back(check("rotation number estimate",
                               std::abs(est - map.alpha_value()),
                               2.0 / static_cast<double>(n)));
  }

  return finish(rep);
}

SuiteReport suite_solenoid(std::uint64_t seed) {
  SuiteReport rep;
  rep.suite = "solenoid";
  std::mt19937_64 rng(seed);
  SolenoidSpec spec = ref_spec(ref_map(), PartitionMode::exact);
  const double alpha = spec.map().alpha_value();

  {  // Itinerary shift: dropping the first entry advances the base point.
    int mismatches = 0;
    for (int i = 0; i < 100; ++i) {
      const double theta = uniform01(rng);
      const std::int64_t n0 = static_cast<std::int64_t>(rng() % 20);
      const std::int64_t len = 5 + static_cast<std::int64_t>(rng() % 11);
      const LeafSegment a = leaf_blocks(spec, theta, n0 + 1, n0 + 1 + len);
      const LeafSegment b =
          leaf_blocks(spec, frac(theta + alpha), n0, n0 + len);
      if (a.block_sequence != b.block_sequence) ++mismatches;
    }
    rep.checks.push_back(check("itinerary shift equivariance",
                               static_cast<double>(mismatches), 0.0));
  }

  {  // Counting blocks along a leaf both ways gives identical frequencies.
    const double theta = 0.05;
    const std::int64_t n = 20000;
    const LeafSegment seg = leaf_blocks(spec, theta, 0, n);
    std::vector<double> freq(spec.size(), 0.0);
    for (std::size_t b : seg.block_sequence) freq[b] += 1.0;
    for (double& f : freq) f /= static_cast<double>(n);
    const std::vector<double> birkhoff =
        birkhoff_frequencies(spec, theta, n);
    double worst = 0.0;
    for (std::size_t b = 0; b < freq.size(); ++b)
      worst = std::max(worst, std::abs(freq[b] - birkhoff[b]));
    rep.checks.push_back(
        check("itinerary vs Birkhoff frequencies", worst, 1e-12));
  }

  {  // The constructed spec passes the trapping audit.
    const TrappingReport tr = check_trapping(spec);
    rep.checks.push_back(check("trapping audit on built spec",
                               tr.all_pass ? 0.0 : 1.0, 0.0));
  }

  {  // Every seeded defect must fail exactly its own condition.
    const TrappingDefect defects[] = {
        TrappingDefect::window_mismatch, TrappingDefect::off_slice_mark,
        TrappingDefect::missing_mark, TrappingDefect::degenerate_slope,
        TrappingDefect::broken_crossing};
    int correct = 0;
    std::string detail;
    for (int d = 0; d < 5; ++d) {
      const TrappingReport tr =
          audit_trapping(seeded_defect(spec, defects[d]));
      bool ok = !tr.all_pass;
      for (const auto& c : tr.conditions) {
        const bool should_fail = (c.index == d + 1);
        if (c.pass == should_fail) ok = false;
      }
      if (ok)
        ++correct;
      else
        detail += "defect " + std::to_string(d + 1) + " misbehaved; ";
    }
    rep.checks.push_back(check("seeded trapping defects localized",
                               5.0 - correct, 0.0, detail));
  }

  return finish(rep);
}

SuiteReport suite_currents(std::uint64_t seed) {
  SuiteReport rep;
  rep.suite = "currents";
  std::mt19937_64 rng(seed);
  const HomologyBasis basis = ref_basis();
  SolenoidSpec spec = ref_spec(ref_map(), PartitionMode::exact);
  const TorusModel model = ref_model();

  {  // Exact forms pair to zero in the period backend, identically.
    AbstractForm exact;
    exact.periods = {0.0, 0.0};
    exact.is_exact = true;
    const PairingResult p = rs_pairing_periods(spec, basis, exact);
    rep.checks.push_back(
        check("period pairing on exact form", std::abs(p.value), 0.0));
  }

  {  // Exact forms pair to (numerical) zero in the quadrature backend.
    TorusForm probe;
    probe.coefficients = {0.0, 0.0, 0.0};
    probe.probe_amplitude = 1.5;
    const PairingResult p = rs_pairing_quadrature(spec, model, probe, 1e-7);
    rep.checks.push_back(
        check("quadrature pairing on exact form", std::abs(p.value), 1e-8));
  }

  {  // Linearity in the form, both backends.
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
      AbstractForm f, g;
      f.periods = {uniform01(rng) - 0.5, uniform01(rng) - 0.5};
      g.periods = {uniform01(rng) - 0.5, uniform01(rng) - 0.5};
      const double a = 2.0 * uniform01(rng) - 1.0;
      const double b = 2.0 * uniform01(rng) - 1.0;
      AbstractForm combo;
      combo.periods = {a * f.periods[0] + b * g.periods[0],
                       a * f.periods[1] + b * g.periods[1]};
      const double lhs = rs_pairing_periods(spec, basis, combo).value;
      const double rhs = a * rs_pairing_periods(spec, basis, f).value +
                         b * rs_pairing_periods(spec, basis, g).value;
      worst = std::max(worst, std::abs(lhs - rhs));
    }
    rep.checks.push_back(check("period pairing linearity", worst, 1e-12));

    TorusForm f, g;
    f.coefficients = {0.8, -0.4, 0.0};
    f.probe_amplitude = 0.3;
    g.coefficients = {-0.2, 1.1, 0.5};
    g.probe_amplitude = -0.7;
    double worst_q = 0.0;
    for (int i = 0; i < 3; ++i) {
      const double a = 2.0 * uniform01(rng) - 1.0;
      const double b = 2.0 * uniform01(rng) - 1.0;
      const double lhs =
          rs_pairing_quadrature(spec, model, combine(a, f, b, g), 1e-7).value;
      const double rhs =
          a * rs_pairing_quadrature(spec, model, f, 1e-7).value +
          b * rs_pairing_quadrature(spec, model, g, 1e-7).value;
      worst_q = std::max(worst_q, std::abs(lhs - rhs));
    }
    rep.checks.push_back(
        check("quadrature pairing linearity", worst_q, 1e-12));
  }

  {  // Backends agree on the leading regression cases.
    std::vector<RegressionCase> cases = make_regression_cases();
    double worst = 0.0;
    for (std::size_t i = 0; i < 4 && i < cases.size(); ++i) {
      const RegressionCase& rc = cases[i];
      const AbstractForm abs_form =
          rc.form.abstract_periods(rc.basis.rank);
      const double via_periods =
          rs_pairing_periods(rc.spec, rc.basis, abs_form).value;
      const double via_quad =
          rs_pairing_quadrature(rc.spec, rc.model, rc.form, 1e-7).value;
      worst = std::max(worst, std::abs(via_periods - via_quad));
    }
    rep.checks.push_back(check("backend agreement (sample)", worst, 1e-6));
  }

  {  // Scaling the transversal measure scales class and pairing exactly.
    const RSClass one = rs_class(spec, basis, Rat(1));
    const RSClass three = rs_class(spec, basis, Rat(3));
    double worst = 0.0;
    for (std::size_t j = 0; j < basis.rank; ++j)
      if (three.raw_exact[j] != Rat(3) * one.raw_exact[j]) worst = 1.0;
    AbstractForm f;
    f.periods = {0.6, -0.1};
    const double p1 = rs_pairing_periods(spec, basis, f, 1.0).value;
    const double p3 = rs_pairing_periods(spec, basis, f, 3.0).value;
    if (p3 != 3.0 * p1) worst = 1.0;
    rep.checks.push_back(check("measure scale covariance", worst, 0.0));
  }

  {  // Obstruction decision vs direct arithmetic on random instances.
    int mismatches = 0;
    for (int i = 0; i < 50; ++i) {
      HomologyBasis b;
      b.rank = 2 + rng() % 3;
      b.degree = 1 + static_cast<int>(rng() % 3);
      b.ambient_dimension = b.degree + 2 * (1 + static_cast<int>(rng() % 3));
      std::vector<std::vector<std::int64_t>> q(
          b.rank, std::vector<std::int64_t>(b.rank, 0));
      for (auto& row : q)
        for (auto& v : row)
          v = static_cast<std::int64_t>(rng() % 11) - 5;
      b.intersection_form = q;
      b.validate();
      TargetClass a;
      for (std::size_t j = 0; j < b.rank; ++j)
        a.coordinates.push_back(
            Rat(static_cast<std::int64_t>(rng() % 9) - 4));
      bool zero = true;
      for (const Rat& c : a.coordinates) zero = zero && c == Rat(0);
      if (zero) a.coordinates[0] = Rat(1);
      Rat self(0);
      for (std::size_t x = 0; x < b.rank; ++x)
        for (std::size_t y = 0; y < b.rank; ++y)
          self += a.coordinates[x] * Rat(q[x][y]) * a.coordinates[y];
      const ObstructionVerdict expect = self == Rat(0)
                                            ? ObstructionVerdict::unobstructed
                                            : ObstructionVerdict::obstructed;
      if (embedding_obstruction(a, b) != expect) ++mismatches;
    }
    rep.checks.push_back(check("obstruction vs direct arithmetic",
                               static_cast<double>(mismatches), 0.0));
  }

  return finish(rep);
}

SuiteReport suite_schwartzman(std::uint64_t seed) {
  SuiteReport rep;
  rep.suite = "schwartzman";
  const HomologyBasis basis = ref_basis();
  SolenoidSpec spec = ref_spec(ref_map(), PartitionMode::exact);

  ExhaustionPolicy policy;
  policy.closing_volume = 1.0;
  policy.schedule = {100, 1000, 10000};

  {  // Stored normalization must be the literal quotient of stored fields.
    const AsymptoticEstimate e =
        schwartzman_estimate(spec, basis, 0.37, 1000, policy);
    double worst = 0.0;
    for (std::size_t j = 0; j < e.raw.size(); ++j)
      if (e.normalized[j] != static_cast<double>(e.raw[j]) / e.volume)
        worst = 1.0;
    rep.checks.push_back(check("normalization identity", worst, 0.0));
  }

  {  // Closing-cap share of the volume obeys the exhaustion bound and decays.
    double worst = 0.0;
    double prev = 1e300;
    double min_vol = 1e300;
    for (const BlockSpec& b : spec.blocks())
      min_vol = std::min(min_vol, b.volume);
    for (std::int64_t n : policy.schedule) {
      const AsymptoticEstimate e =
          schwartzman_estimate(spec, basis, 0.37, n, policy);
      const double cap =
          policy.closing_volume / (static_cast<double>(n) * min_vol);
      worst = std::max(worst, e.gamma_ratio - cap);
      if (e.gamma_ratio >= prev) worst = std::max(worst, 1.0);
      prev = e.gamma_ratio;
    }
    rep.checks.push_back(check("closing-cap ratio bound", worst, 0.0));
  }

  {  // Visit frequencies approach the prescribed masses.
    const std::int64_t n = 10000;
    const std::vector<double> freq = birkhoff_frequencies(spec, 0.37, n);
    const std::vector<double> lam = spec.partition().measures();
    double worst = 0.0;
    for (std::size_t b = 0; b < freq.size(); ++b)
      worst = std::max(worst, std::abs(freq[b] - lam[b]));
    rep.checks.push_back(check("frequencies near masses", worst,
                               10.0 * std::log(static_cast<double>(n)) /
                                   static_cast<double>(n)));
  }

  {  // One block: every window already sits on the class ray.
    DenjoyMap map = ref_map();
    MeasuredPartition part =
        MeasuredPartition::build(map, {Rat(1)}, PartitionMode::exact);
    BlockSpec blk{"C1", 1, 1.0, {1, 0}, true, false, {"D+", +1}, {"D-", -1}};
    SolenoidSpec single = SolenoidSpec::build(std::move(map), std::move(part),
                                              {blk}, 0.25, IsotopyProfile{},
                                              1.0);
    ExhaustionPolicy p2;
    p2.closing_volume = 1.0;
    p2.schedule = {10, 100};
    const RepresentationReport r =
        full_representation_check(single, basis, 3, p2, 1e-12, seed);
    double worst = 0.0;
    for (const auto& row : r.rows) worst = std::max(worst, row.distance);
    rep.checks.push_back(check("single block sits on the ray", worst, 0.0));
  }

  {  // Projective distance is a pseudometric on rays.
    const std::vector<double> u{0.3, -0.7};
    const std::vector<double> v{0.6, -1.4};
    const std::vector<double> w{1.0, 1.0};
    double worst = std::abs(projective_distance(u, u));
    worst = std::max(worst, std::abs(projective_distance(u, v)));
    worst = std::max(
        worst, std::abs(projective_distance(u, w) - projective_distance(w, u)));
    rep.checks.push_back(check("projective distance sanity", worst, 0.0));
  }

  return finish(rep);
}

}  // namespace

SuiteReport run_suite(const std::string& suite, std::uint64_t seed) {
  if (suite == "circle") return suite_circle(seed);
  if (suite == "solenoid") return suite_solenoid(seed);
  if (suite == "currents") return suite_currents(seed);
  if (suite == "schwartzman") return suite_schwartzman(seed);
  throw ConfigError("unknown suite '" + suite +
                    "' (expected circle|solenoid|currents|schwartzman|all)");
}

std::vector<SuiteReport> run_suites(const std::string& suite,
                                    std::uint64_t seed) {
  if (suite == "all")
    return {suite_circle(seed), suite_solenoid(seed), suite_currents(seed),
            suite_schwartzman(seed)};
  return {run_suite(suite, seed)};
}

nlohmann::json to_json(const SuiteReport& r) {
  nlohmann::json checks = nlohmann::json::array();
  for (const CheckResult& c : r.checks)
    checks.push_back(nlohmann::json{{"name", c.name},
                                    {"pass", c.pass},
                                    {"measured", c.measured},
                                    {"bound", c.bound},
                                    {"detail", c.detail}});
  return nlohmann::json{
      {"suite", r.suite}, {"checks", checks}, {"all_pass", r.all_pass}};
}

std::vector<RegressionCase> make_regression_cases() {
  DenjoyMap base = ref_map();
  const HomologyBasis basis = ref_basis();
  const TorusModel model = ref_model();

  struct SpecDef {
    std::string name;
    PartitionMode mode;
    std::vector<Rat> weights;
    std::vector<std::vector<std::int64_t>> coords;
    std::vector<double> volumes;
  };
  const std::vector<SpecDef> spec_defs = {
      {"s1", PartitionMode::exact, {Rat(3, 10), Rat(7, 10)},
       {{1, 0}, {0, 1}}, {1.0, 2.0}},
      {"s2", PartitionMode::exact, {Rat(1, 2), Rat(1, 2)},
       {{1, 0}, {1, 1}}, {1.0, 1.0}},
      {"s3", PartitionMode::exact, {Rat(2, 5), Rat(3, 5)},
       {{2, 1}, {0, 1}}, {1.5, 2.5}},
      {"s4", PartitionMode::gap_separated, {Rat(3, 10), Rat(7, 10)},
       {{1, 0}, {0, 1}}, {1.0, 2.0}},
      {"s5", PartitionMode::exact, {Rat(1, 4), Rat(1, 4), Rat(1, 2)},
       {{1, 0}, {0, 1}, {1, -1}}, {1.0, 2.0, 1.0}},
  };

  struct FormDef {
    std::string name;
    std::vector<double> coefficients;
    double probe;
  };
  const std::vector<FormDef> form_defs = {
      {"f1", {1.0, 0.0, 0.0}, 0.0},
      {"f2", {0.0, 1.0, 0.0}, 0.0},
      {"f3", {0.7, -0.3, 0.2}, 0.5},
      {"f4", {0.0, 0.0, 0.0}, 1.0},
  };

  std::vector<RegressionCase> cases;
  cases.reserve(spec_defs.size() * form_defs.size());
  for (const SpecDef& sd : spec_defs) {
    for (const FormDef& fd : form_defs) {
      DenjoyMap map = base;  // shared table, copied per case
      MeasuredPartition part =
          MeasuredPartition::build(map, sd.weights, sd.mode);
      std::vector<BlockSpec> blocks;
      for (std::size_t i = 0; i < sd.coords.size(); ++i)
        blocks.push_back(BlockSpec{"B" + std::to_string(i + 1), 1,
                                   sd.volumes[i], sd.coords[i], true, false,
                                   {"D+", +1}, {"D-", -1}});
      SolenoidSpec spec =
          SolenoidSpec::build(std::move(map), std::move(part),
                              std::move(blocks), 0.25, IsotopyProfile{}, 1.0);
      TorusForm form;
      form.coefficients = fd.coefficients;
      form.probe_amplitude = fd.probe;
      cases.push_back(RegressionCase{sd.name + "-" + fd.name, std::move(spec),
                                     basis, model, form});
    }
  }
  return cases;
}

}  // namespace ergosol
