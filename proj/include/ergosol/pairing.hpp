#pragma once

#include <string>

#include "ergosol/forms.hpp"
#include "ergosol/homology.hpp"
#include "ergosol/solenoid.hpp"

namespace ergosol {

struct PairingResult {
  double value = 0.0;
  double error_bound = 0.0;
  std::string backend;
};

// Current-against-form pairing through periods: sum_i mu_i <C_i, omega>.
// Exact linear algebra; the error bound is zero.
PairingResult rs_pairing_periods(const SolenoidSpec& spec,
                                 const HomologyBasis& basis,
                                 const AbstractForm& form,
                                 double measure_scale = 1.0);

// The same pairing computed from the concrete torus geometry: for each block,
// integrate the pulled-back form along the leaf pieces (the block's closed
// wrap loop plus the collar chord to the holonomy image, both based at the
// transversal circle), then integrate over the transversal arc in collapse
// coordinates against arc length.
//
// Leaf integrals run over deterministic panels cut at wrap jumps and bump
// shell crossings (15-point Kronrod per panel, error = |K15 - G7|); the
// transversal integral uses 16-point Gauss per block arc.  If the summed
// panel error exceeds quad_tol the panels are halved, up to a fixed budget;
// past the budget the pairing fails with the achieved residual.
PairingResult rs_pairing_quadrature(const SolenoidSpec& spec,
                                    const TorusModel& model,
                                    const TorusForm& form, double quad_tol,
                                    double measure_scale = 1.0);

}  // namespace ergosol
