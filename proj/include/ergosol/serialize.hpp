#pragma once

#include <iosfwd>

#include "json.hpp"

#include "ergosol/forms.hpp"
#include "ergosol/homology.hpp"
#include "ergosol/pairing.hpp"
#include "ergosol/schwartzman.hpp"
#include "ergosol/solenoid.hpp"
#include "ergosol/trapping.hpp"

namespace ergosol {

// All documents carry {"schema_version": kSchemaVersion}; readers reject
// other versions.  Maps, partitions and solenoids serialize as construction
// parameters, so deserialization re-runs the builders (and their validation)
// instead of trusting stored derived state.  Schemas: docs/schemas.md.
inline constexpr int kSchemaVersion = 1;

nlohmann::json to_json(const RotationNumber& r);
RotationNumber rotation_from_json(const nlohmann::json& j);

nlohmann::json to_json(const GapSchedule& g);
GapSchedule gaps_from_json(const nlohmann::json& j);

nlohmann::json to_json(const DenjoyMap& m);
DenjoyMap denjoy_from_json(const nlohmann::json& j);

nlohmann::json to_json(const MeasuredPartition& p);
MeasuredPartition partition_from_json(const nlohmann::json& j,
                                      const DenjoyMap& map);

nlohmann::json to_json(const BlockSpec& b);
BlockSpec block_from_json(const nlohmann::json& j);

nlohmann::json to_json(const SolenoidSpec& s);
SolenoidSpec solenoid_from_json(const nlohmann::json& j);

nlohmann::json to_json(const HomologyBasis& b);
HomologyBasis basis_from_json(const nlohmann::json& j);

nlohmann::json to_json(const AbstractForm& f);
AbstractForm abstract_form_from_json(const nlohmann::json& j);

nlohmann::json to_json(const TorusModel& m);
TorusModel torus_model_from_json(const nlohmann::json& j);

nlohmann::json to_json(const TorusForm& f);
TorusForm torus_form_from_json(const nlohmann::json& j);

nlohmann::json to_json(const PairingResult& p);
nlohmann::json to_json(const TrappingReport& r);
nlohmann::json to_json(const AsymptoticEstimate& e);
nlohmann::json to_json(const RepresentationReport& r);

void write_leaf_csv(std::ostream& out, const LeafSegment& seg);
void write_convergence_csv(std::ostream& out,
                           const RepresentationReport& rep);

}  // namespace ergosol
