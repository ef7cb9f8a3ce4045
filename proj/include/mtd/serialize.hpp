#pragma once

// JSON/CSV serialization for the report types.  Every to_json has a matching
// parser so emitted documents round-trip losslessly; doubles are printed in
// shortest round-trip form wherever we format them ourselves.

#include <string>

#include <json.hpp>

#include "mtd/best_response.hpp"
#include "mtd/equilibrium.hpp"
#include "mtd/montecarlo.hpp"
#include "mtd/nash.hpp"
#include "mtd/payoff.hpp"

namespace mtd {

// Shortest decimal string that parses back to exactly this double.
std::string format_double(double value);

struct PayoffRecord {
  double migration_time = 0.0;
  double attack_rate = 0.0;
  double attacker = 0.0;
  double defender = 0.0;
  PayoffMethod method = PayoffMethod::closed_form;
};

nlohmann::json to_json(const PayoffRecord& record);
PayoffRecord payoff_record_from_json(const nlohmann::json& j);

nlohmann::json to_json(const SimulationReport& report);
SimulationReport simulation_report_from_json(const nlohmann::json& j);

nlohmann::json to_json(const ThresholdReport& report);
ThresholdReport threshold_report_from_json(const nlohmann::json& j);

nlohmann::json to_json(const ExistenceCertificate& cert);
ExistenceCertificate existence_certificate_from_json(const nlohmann::json& j);

nlohmann::json to_json(const BackoffCheck& check);
BackoffCheck backoff_check_from_json(const nlohmann::json& j);

nlohmann::json to_json(const EquilibriumPoint& point);
EquilibriumPoint equilibrium_point_from_json(const nlohmann::json& j);

nlohmann::json to_json(const EquilibriumReport& report);
EquilibriumReport equilibrium_report_from_json(const nlohmann::json& j);

// CSV series for external plotting.
// header: opponent_action,action,kind,residual
std::string reaction_curve_csv(const ReactionCurve& curve);

// Concavity-margin map over the action rectangle, row-major with the
// migration time as the outer loop; exactly n_migration * n_rate data rows.
// header: tau_d,lambda_a,margin
std::string region_csv(const Game& game, int n_migration, int n_rate);

}  // namespace mtd
