#include "mtd/serialize.hpp"

#include <charconv>
#include <stdexcept>

namespace mtd {

std::string format_double(double value) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

namespace {

using nlohmann::json;

double num(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number())
    throw std::invalid_argument(std::string("report JSON: missing number \"") +
                                key + "\"");
  return j.at(key).get<double>();
}

std::uint64_t unsigned_num(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number_unsigned())
    throw std::invalid_argument(
        std::string("report JSON: missing unsigned \"") + key + "\"");
  return j.at(key).get<std::uint64_t>();
}

bool boolean(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_boolean())
    throw std::invalid_argument(std::string("report JSON: missing bool \"") +
                                key + "\"");
  return j.at(key).get<bool>();
}

std::string text(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_string())
    throw std::invalid_argument(std::string("report JSON: missing string \"") +
                                key + "\"");
  return j.at(key).get<std::string>();
}

ResponseKind response_kind_from_name(const std::string& name) {
  if (name == "lower_boundary") return ResponseKind::lower_boundary;
  if (name == "interior") return ResponseKind::interior;
  if (name == "upper_boundary") return ResponseKind::upper_boundary;
  throw std::invalid_argument("report JSON: unknown response kind " + name);
}

ThresholdKind threshold_kind_from_name(const std::string& name) {
  if (name == "attacker_min_rate") return ThresholdKind::attacker_min_rate;
  if (name == "defender_no_migrate") return ThresholdKind::defender_no_migrate;
  if (name == "general_attacker") return ThresholdKind::general_attacker;
  if (name == "general_defender") return ThresholdKind::general_defender;
  if (name == "backoff") return ThresholdKind::backoff;
  throw std::invalid_argument("report JSON: unknown threshold kind " + name);
}

}  // namespace

nlohmann::json to_json(const PayoffRecord& record) {
  return {
      {"migration_time", record.migration_time},
      {"attack_rate", record.attack_rate},
      {"attacker", record.attacker},
      {"defender", record.defender},
      {"method",
       record.method == PayoffMethod::closed_form ? "closed_form" : "quadrature"},
  };
}

PayoffRecord payoff_record_from_json(const nlohmann::json& j) {
  PayoffRecord r;
  r.migration_time = num(j, "migration_time");
  r.attack_rate = num(j, "attack_rate");
  r.attacker = num(j, "attacker");
  r.defender = num(j, "defender");
  const std::string method = text(j, "method");
  if (method == "closed_form") {
    r.method = PayoffMethod::closed_form;
  } else if (method == "quadrature") {
    r.method = PayoffMethod::quadrature;
  } else {
    throw std::invalid_argument("report JSON: unknown payoff method " + method);
  }
  return r;
}

nlohmann::json to_json(const SimulationReport& report) {
  return {
      {"n_samples", report.n_samples},
      {"migration_time", report.migration_time},
      {"attack_rate", report.attack_rate},
      {"mean_attacker", report.mean_attacker},
      {"mean_defender", report.mean_defender},
      {"stderr_attacker", report.stderr_attacker},
      {"stderr_defender", report.stderr_defender},
      {"empirical_collocation_prob", report.empirical_collocation_prob},
      {"seed", report.seed},
  };
}

SimulationReport simulation_report_from_json(const nlohmann::json& j) {
  SimulationReport r;
  r.n_samples = unsigned_num(j, "n_samples");
  r.migration_time = num(j, "migration_time");
  r.attack_rate = num(j, "attack_rate");
  r.mean_attacker = num(j, "mean_attacker");
  r.mean_defender = num(j, "mean_defender");
  r.stderr_attacker = num(j, "stderr_attacker");
  r.stderr_defender = num(j, "stderr_defender");
  r.empirical_collocation_prob = num(j, "empirical_collocation_prob");
  r.seed = unsigned_num(j, "seed");
  return r;
}

nlohmann::json to_json(const ThresholdReport& report) {
  return {
      {"kind", threshold_kind_name(report.kind)},
      {"threshold", report.threshold},
      {"satisfied", report.satisfied},
      {"applicable", report.applicable},
  };
}

ThresholdReport threshold_report_from_json(const nlohmann::json& j) {
  ThresholdReport r;
  r.kind = threshold_kind_from_name(text(j, "kind"));
  r.threshold = num(j, "threshold");
  r.satisfied = boolean(j, "satisfied");
  r.applicable = boolean(j, "applicable");
  return r;
}

nlohmann::json to_json(const ExistenceCertificate& cert) {
  return {
      {"holds", cert.holds},
      {"worst_margin", cert.worst_margin},
      {"worst_migration_time", cert.worst_migration_time},
      {"worst_attack_rate", cert.worst_attack_rate},
      {"grid_migration", cert.grid_migration},
      {"grid_rate", cert.grid_rate},
  };
}

ExistenceCertificate existence_certificate_from_json(const nlohmann::json& j) {
  ExistenceCertificate c;
  c.holds = boolean(j, "holds");
  c.worst_margin = num(j, "worst_margin");
  c.worst_migration_time = num(j, "worst_migration_time");
  c.worst_attack_rate = num(j, "worst_attack_rate");
  c.grid_migration = static_cast<int>(num(j, "grid_migration"));
  c.grid_rate = static_cast<int>(num(j, "grid_rate"));
  return c;
}

nlohmann::json to_json(const BackoffCheck& check) {
  return {
      {"is_equilibrium", check.is_equilibrium},
      {"worst_rate", check.worst_rate},
      {"worst_margin", check.worst_margin},
  };
}

BackoffCheck backoff_check_from_json(const nlohmann::json& j) {
  BackoffCheck c;
  c.is_equilibrium = boolean(j, "is_equilibrium");
  c.worst_rate = num(j, "worst_rate");
  c.worst_margin = num(j, "worst_margin");
  return c;
}

nlohmann::json to_json(const EquilibriumPoint& point) {
  return {
      {"migration_time", point.migration_time},
      {"attack_rate", point.attack_rate},
      {"defender_kind", response_kind_name(point.defender_kind)},
      {"attacker_kind", response_kind_name(point.attacker_kind)},
      {"defender_residual", point.defender_residual},
      {"attacker_residual", point.attacker_residual},
      {"defender_payoff", point.defender_payoff},
      {"attacker_payoff", point.attacker_payoff},
      {"max_gain_defender", point.max_gain_defender},
      {"max_gain_attacker", point.max_gain_attacker},
      {"epsilon", point.epsilon},
  };
}

EquilibriumPoint equilibrium_point_from_json(const nlohmann::json& j) {
  EquilibriumPoint p;
  p.migration_time = num(j, "migration_time");
  p.attack_rate = num(j, "attack_rate");
  p.defender_kind = response_kind_from_name(text(j, "defender_kind"));
  p.attacker_kind = response_kind_from_name(text(j, "attacker_kind"));
  p.defender_residual = num(j, "defender_residual");
  p.attacker_residual = num(j, "attacker_residual");
  p.defender_payoff = num(j, "defender_payoff");
  p.attacker_payoff = num(j, "attacker_payoff");
  p.max_gain_defender = num(j, "max_gain_defender");
  p.max_gain_attacker = num(j, "max_gain_attacker");
  p.epsilon = num(j, "epsilon");
  return p;
}

nlohmann::json to_json(const EquilibriumReport& report) {
  nlohmann::json points = nlohmann::json::array();
  for (const EquilibriumPoint& p : report.equilibria) points.push_back(to_json(p));
  nlohmann::json j = {
      {"equilibria", std::move(points)},
      {"certificate_available", report.certificate_available},
      {"method", report.method},
  };
  if (report.certificate_available) j["certificate"] = to_json(report.certificate);
  return j;
}

EquilibriumReport equilibrium_report_from_json(const nlohmann::json& j) {
  EquilibriumReport r;
  if (!j.contains("equilibria") || !j.at("equilibria").is_array())
    throw std::invalid_argument("report JSON: missing equilibria array");
  for (const auto& p : j.at("equilibria"))
    r.equilibria.push_back(equilibrium_point_from_json(p));
  r.certificate_available = boolean(j, "certificate_available");
  if (r.certificate_available)
    r.certificate = existence_certificate_from_json(j.at("certificate"));
  return r;
}

std::string reaction_curve_csv(const ReactionCurve& curve) {
  std::string out = "opponent_action,action,kind,residual\n";
  for (const BestResponse& p : curve.points) {
    out += format_double(p.opponent_action);
    out += ',';
    out += format_double(p.action);
    out += ',';
    out += response_kind_name(p.kind);
    out += ',';
    out += format_double(p.residual);
    out += '\n';
  }
  return out;
}

std::string region_csv(const Game& game, int n_migration, int n_rate) {
  if (n_migration < 2 || n_rate < 2)
    throw std::invalid_argument("region grid needs at least 2x2 cells");
  std::string out = "tau_d,lambda_a,margin\n";
  for (int i = 0; i < n_migration; ++i) {
    const double tau = game.min_migration_time() +
                       (game.horizon() - game.min_migration_time()) * i /
                           (n_migration - 1);
    for (int j = 0; j < n_rate; ++j) {
      const double lambda = game.min_attack_rate() +
                            (game.max_attack_rate() - game.min_attack_rate()) *
                                j / (n_rate - 1);
      out += format_double(tau);
      out += ',';
      out += format_double(lambda);
      out += ',';
      out += format_double(concavity_margin(game, tau, lambda));
      out += '\n';
    }
  }
  return out;
}

}  // namespace mtd
