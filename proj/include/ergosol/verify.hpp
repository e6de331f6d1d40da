#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "ergosol/forms.hpp"
#include "ergosol/homology.hpp"
#include "ergosol/solenoid.hpp"

namespace ergosol {

// Runtime re-checks of the module invariants on a fixed reference
// configuration, reported with measured values.  These are the `verify`
// command's suites; the test suite drives the same code.
struct CheckResult {
  std::string name;
  bool pass = false;
  double measured = 0.0;  // the quantity the bound constrains
  double bound = 0.0;
  std::string detail;
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckResult> checks;
  bool all_pass = false;
};

// suite: circle | solenoid | currents | schwartzman.  Throws ConfigError on
// an unknown name.
SuiteReport run_suite(const std::string& suite, std::uint64_t seed);

// Expands "all"; otherwise a single suite.
std::vector<SuiteReport> run_suites(const std::string& suite,
                                    std::uint64_t seed);

nlohmann::json to_json(const SuiteReport& r);

// Fixed cross-backend regression suite: solenoid/form pairs on the 3-torus
// whose period and quadrature pairings must agree within 1e-6.
struct RegressionCase {
  std::string name;
  SolenoidSpec spec;
  HomologyBasis basis;
  TorusModel model;
  TorusForm form;
};
std::vector<RegressionCase> make_regression_cases();

}  // namespace ergosol
