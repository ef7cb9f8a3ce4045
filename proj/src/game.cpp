#include "mtd/game.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "mtd/quadrature.hpp"

namespace mtd {

const char* issue_code_name(IssueCode code) {
  switch (code) {
    case IssueCode::InvalidInterval: return "InvalidInterval";
    case IssueCode::NegativeCost: return "NegativeCost";
    case IssueCode::NonMonotoneReward: return "NonMonotoneReward";
    case IssueCode::BadDistribution: return "BadDistribution";
  }
  return "Unknown";
}

namespace {

std::string format_issues(const std::vector<ValidationIssue>& issues) {
  std::ostringstream os;
  os << "invalid game config (" << issues.size() << " issue"
     << (issues.size() == 1 ? "" : "s") << "):";
  for (const auto& issue : issues)
    os << "\n  [" << issue_code_name(issue.code) << "] " << issue.message;
  return os.str();
}

}  // namespace

ValidationError::ValidationError(std::vector<ValidationIssue> issues)
    : std::runtime_error(format_issues(issues)), issues_(std::move(issues)) {}

// ---------------------------------------------------------------- rewards

RewardModel RewardModel::polynomial(int exponent, double scale) {
  RewardModel m;
  m.kind = RewardKind::polynomial;
  m.exponent = exponent;
  m.scale = scale;
  return m;
}

RewardModel RewardModel::custom(std::function<double(double, double)> fn) {
  RewardModel m;
  m.kind = RewardKind::custom;
  m.fn = std::move(fn);
  return m;
}

double RewardModel::value(double migration_time, double collocation_time) const {
  if (kind == RewardKind::custom) return fn(migration_time, collocation_time);
  const double d = migration_time - collocation_time;
  if (d <= 0.0) return 0.0;
  double p = 1.0;
  for (int i = 0; i < exponent; ++i) p *= d;
  return scale * p;
}

// ----------------------------------------------------------- collocation

CollocationModel CollocationModel::exponential() {
  CollocationModel m;
  m.kind = CollocationKind::exponential;
  return m;
}

CollocationModel CollocationModel::custom(
    std::function<double(double, double)> pdf,
    std::function<double(double, double)> cdf,
    std::function<double(double, double)> pdf_dlambda) {
  CollocationModel m;
  m.kind = CollocationKind::custom;
  m.pdf_fn = std::move(pdf);
  m.cdf_fn = std::move(cdf);
  m.pdf_dlambda_fn = std::move(pdf_dlambda);
  return m;
}

namespace {

void check_model_args(double collocation_time, double attack_rate) {
  if (collocation_time < 0.0)
    throw NegativeInput("collocation time must be >= 0, got " +
                        std::to_string(collocation_time));
  if (attack_rate < 0.0)
    throw NegativeInput("attack rate must be >= 0, got " +
                        std::to_string(attack_rate));
}

}  // namespace

double CollocationModel::pdf(double collocation_time, double attack_rate) const {
  check_model_args(collocation_time, attack_rate);
  if (kind == CollocationKind::custom) return pdf_fn(collocation_time, attack_rate);
  if (attack_rate == 0.0) return 0.0;  // degenerate: never collocates
  return attack_rate * std::exp(-attack_rate * collocation_time);
}

double CollocationModel::cdf(double collocation_time, double attack_rate) const {
  check_model_args(collocation_time, attack_rate);
  if (kind == CollocationKind::custom) return cdf_fn(collocation_time, attack_rate);
  if (attack_rate == 0.0) return 0.0;
  return -std::expm1(-attack_rate * collocation_time);
}

double CollocationModel::pdf_dlambda(double collocation_time, double attack_rate) const {
  check_model_args(collocation_time, attack_rate);
  if (kind == CollocationKind::custom)
    return pdf_dlambda_fn(collocation_time, attack_rate);
  // d/dl [l e^{-l t}] = (1 - l t) e^{-l t}; at l = 0 the one-sided value is 1
  const double x = attack_rate * collocation_time;
  return (1.0 - x) * std::exp(-x);
}

// ------------------------------------------------------------ validation

namespace {

void validate_reward(const GameConfig& cfg, bool intervals_ok,
                     std::vector<ValidationIssue>& issues) {
  const RewardModel& rw = cfg.reward;
  if (rw.kind == RewardKind::polynomial) {
    if (rw.exponent < 1)
      issues.push_back({IssueCode::NonMonotoneReward,
                        "polynomial reward exponent must be a positive integer"});
    if (!(rw.scale > 0.0) || !std::isfinite(rw.scale))
      issues.push_back({IssueCode::NonMonotoneReward,
                        "polynomial reward scale (alpha) must be finite and > 0"});
    return;
  }
  if (!rw.fn) {
    issues.push_back({IssueCode::NonMonotoneReward, "custom reward callable is empty"});
    return;
  }
  if (!intervals_ok) return;  // grid screen needs sane intervals
  // Screen the callable on a grid: reward must vanish once the attacker
  // arrives at or after the migration, be >= 0, depend only on the captured
  // duration, and be non-decreasing in it.
  const double T = cfg.horizon;
  const int n = 64;
  const double tol = 1e-9;
  // canonical section g(d) = G(T, T - d)
  std::vector<double> g(n + 1);
  for (int i = 0; i <= n; ++i) g[i] = rw.fn(T, T - T * i / n);
  bool nonneg = true, monotone = true, stationary = true, zero_side = true;
  for (int i = 0; i <= n; ++i) {
    if (g[i] < -tol) nonneg = false;
    if (i > 0 && g[i] < g[i - 1] - tol * (1.0 + std::abs(g[i - 1]))) monotone = false;
  }
  for (int i = 0; i <= n; ++i) {
    const double tau_d = cfg.min_migration_time + (T - cfg.min_migration_time) * i / n;
    for (int j = 0; j <= n; ++j) {
      const double tau_a = T * j / n;
      const double v = rw.fn(tau_d, tau_a);
      if (tau_a >= tau_d) {
        if (std::abs(v) > tol) zero_side = false;
      } else {
        const double d = tau_d - tau_a;
        const double ref = rw.fn(T, T - d);
        if (std::abs(v - ref) > tol * (1.0 + std::abs(ref))) stationary = false;
        if (v < -tol) nonneg = false;
      }
    }
  }
  if (!nonneg)
    issues.push_back({IssueCode::NonMonotoneReward, "custom reward takes negative values"});
  if (!monotone)
    issues.push_back({IssueCode::NonMonotoneReward,
                      "custom reward is not non-decreasing in the captured duration"});
  if (!stationary)
    issues.push_back({IssueCode::NonMonotoneReward,
                      "custom reward does not depend on the captured duration alone"});
  if (!zero_side)
    issues.push_back({IssueCode::NonMonotoneReward,
                      "custom reward is nonzero when collocation happens after migration"});
}

void validate_collocation(const GameConfig& cfg, std::vector<ValidationIssue>& issues) {
  const CollocationModel& cm = cfg.collocation;
  if (cm.kind == CollocationKind::exponential) return;  // holds by construction
  if (!cm.pdf_fn || !cm.cdf_fn || !cm.pdf_dlambda_fn) {
    issues.push_back({IssueCode::BadDistribution,
                      "custom collocation model needs pdf, cdf and pdf_dlambda"});
    return;
  }
  const double T = cfg.horizon;
  // probe rates across the action interval (avoid the degenerate rate 0)
  std::vector<double> rates;
  const double lo = std::max(cfg.min_attack_rate, 0.02 * cfg.max_attack_rate);
  for (int i = 0; i <= 4; ++i) rates.push_back(lo + (cfg.max_attack_rate - lo) * i / 4.0);
  for (double rate : rates) {
    const double upper = T + 50.0 / rate;
    const auto mass = quad::integrate(
        [&](double t) { return cm.pdf_fn(t, rate); }, 0.0, upper, 1e-9, 20);
    if (!mass.converged || std::abs(mass.value - 1.0) > 1e-6) {
      issues.push_back({IssueCode::BadDistribution,
                        "custom pdf mass at rate " + std::to_string(rate) + " is " +
                            std::to_string(mass.value) + ", not 1"});
      break;
    }
  }
  // faster attacks must collocate stochastically earlier
  bool dominated = true;
  for (std::size_t r = 1; r + 1 < rates.size() && dominated; ++r) {
    for (int j = 0; j <= 32; ++j) {
      const double t = T * j / 32.0;
      if (cm.cdf_fn(t, rates[r + 1]) < cm.cdf_fn(t, rates[r]) - 1e-9) {
        dominated = false;
        break;
      }
    }
  }
  if (!dominated)
    issues.push_back({IssueCode::BadDistribution,
                      "custom cdf is not non-decreasing in the attack rate"});
  if (cfg.min_attack_rate == 0.0) {
    for (int j = 0; j <= 32; ++j) {
      if (std::abs(cm.cdf_fn(T * j / 32.0, 0.0)) > 1e-12) {
        issues.push_back({IssueCode::BadDistribution,
                          "rate 0 must be the degenerate never-collocates case"});
        break;
      }
    }
  }
}

}  // namespace

Game validate_config(GameConfig cfg) {
  std::vector<ValidationIssue> issues;
  const bool finite_bounds =
      std::isfinite(cfg.horizon) && std::isfinite(cfg.min_migration_time) &&
      std::isfinite(cfg.min_attack_rate) && std::isfinite(cfg.max_attack_rate);
  if (!finite_bounds)
    issues.push_back({IssueCode::InvalidInterval, "interval bounds must be finite"});
  if (finite_bounds) {
    if (!(cfg.min_migration_time > 0.0) || !(cfg.min_migration_time <= cfg.horizon))
      issues.push_back(
          {IssueCode::InvalidInterval,
           "need 0 < tau_min <= T, got tau_min=" + std::to_string(cfg.min_migration_time) +
               " T=" + std::to_string(cfg.horizon)});
    if (!(cfg.min_attack_rate >= 0.0) || !(cfg.min_attack_rate < cfg.max_attack_rate))
      issues.push_back(
          {IssueCode::InvalidInterval,
           "need 0 <= lambda_min < lambda_max, got lambda_min=" +
               std::to_string(cfg.min_attack_rate) +
               " lambda_max=" + std::to_string(cfg.max_attack_rate)});
  }
  if (!(cfg.attack_cost >= 0.0) || !std::isfinite(cfg.attack_cost))
    issues.push_back({IssueCode::NegativeCost, "attack cost C_a must be finite and >= 0"});
  if (!(cfg.migration_cost >= 0.0) || !std::isfinite(cfg.migration_cost))
    issues.push_back({IssueCode::NegativeCost, "migration cost C_d must be finite and >= 0"});
  const bool intervals_ok =
      std::none_of(issues.begin(), issues.end(), [](const ValidationIssue& i) {
        return i.code == IssueCode::InvalidInterval;
      });
  validate_reward(cfg, intervals_ok, issues);
  // distribution probing likewise needs sane intervals
  if (intervals_ok) validate_collocation(cfg, issues);
  if (!issues.empty()) throw ValidationError(std::move(issues));
  return Game(std::move(cfg));
}

namespace {

double check_in(double x, double lo, double hi, const char* what) {
  const double slack = 1e-9 * std::max(1.0, hi - lo);
  if (!(x >= lo - slack) || !(x <= hi + slack))
    throw OutOfDomain(std::string(what) + " " + std::to_string(x) +
                      " outside [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  return std::clamp(x, lo, hi);
}

}  // namespace

double Game::checked_migration_time(double migration_time) const {
  return check_in(migration_time, cfg_.min_migration_time, cfg_.horizon,
                  "migration time");
}

double Game::checked_attack_rate(double attack_rate) const {
  return check_in(attack_rate, cfg_.min_attack_rate, cfg_.max_attack_rate,
                  "attack rate");
}

// ------------------------------------------------------------- JSON input

namespace {

using nlohmann::json;

double require_number(const json& j, const std::string& key) {
  if (!j.contains(key))
    throw std::invalid_argument("config: missing required key \"" + key + "\"");
  if (!j.at(key).is_number())
    throw std::invalid_argument("config: key \"" + key + "\" must be a number");
  return j.at(key).get<double>();
}

double optional_number(const json& j, const std::string& key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number())
    throw std::invalid_argument("config: key \"" + key + "\" must be a number");
  return j.at(key).get<double>();
}

void reject_unknown(const json& j, std::initializer_list<const char*> known,
                    const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* k : known)
      if (it.key() == k) ok = true;
    if (!ok)
      throw std::invalid_argument("config: unknown key \"" + it.key() + "\" in " + where);
  }
}

}  // namespace

GameConfig config_from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("config: not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("config: top level must be an object");
  reject_unknown(j, {"T", "tau_min", "lambda_min", "lambda_max", "C_a", "C_d",
                     "reward", "collocation"}, "top level");
  GameConfig cfg;
  cfg.horizon = require_number(j, "T");
  cfg.min_migration_time = optional_number(j, "tau_min", 0.01);
  cfg.min_attack_rate = optional_number(j, "lambda_min", 0.01);
  cfg.max_attack_rate = require_number(j, "lambda_max");
  cfg.attack_cost = require_number(j, "C_a");
  cfg.migration_cost = require_number(j, "C_d");

  if (!j.contains("reward") || !j.at("reward").is_object())
    throw std::invalid_argument("config: missing \"reward\" object");
  const json& rw = j.at("reward");
  reject_unknown(rw, {"kind", "exponent", "alpha"}, "reward");
  if (rw.value("kind", "") != "polynomial")
    throw std::invalid_argument("config: reward.kind must be \"polynomial\"");
  int exponent = 1;
  if (rw.contains("exponent")) {
    if (!rw.at("exponent").is_number_integer())
      throw std::invalid_argument("config: reward.exponent must be an integer");
    exponent = rw.at("exponent").get<int>();
  }
  cfg.reward = RewardModel::polynomial(exponent, optional_number(rw, "alpha", 1.0));

  if (!j.contains("collocation") || !j.at("collocation").is_object())
    throw std::invalid_argument("config: missing \"collocation\" object");
  const json& cl = j.at("collocation");
  reject_unknown(cl, {"kind"}, "collocation");
  if (cl.value("kind", "") != "exponential")
    throw std::invalid_argument("config: collocation.kind must be \"exponential\"");
  cfg.collocation = CollocationModel::exponential();
  return cfg;
}

GameConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return config_from_json_text(buf.str());
}

}  // namespace mtd
