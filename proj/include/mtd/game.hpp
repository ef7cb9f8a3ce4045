#pragma once

#include <functional>
#include <string>

#include "mtd/errors.hpp"

// Core model types for the migration timing game. A defender re-images /
// migrates its machine every `migration_time` units (at latest at the
// horizon); an attacker probes at a chosen rate and, once collocated,
// accumulates reward until the next migration. Both sides pay per-cycle
// costs, and payoffs are normalised per unit time.

namespace mtd {

enum class RewardKind { polynomial, custom };

// Accumulated attacker reward G(migration_time, collocation_time). It is zero
// when the attacker lands after the migration, depends only on the captured
// duration d = migration_time - collocation_time otherwise, is non-negative
// and non-decreasing in d.
struct RewardModel {
  RewardKind kind = RewardKind::polynomial;
  int exponent = 1;    // polynomial: scale * d^exponent
  double scale = 1.0;  // "alpha" in the config schema
  std::function<double(double, double)> fn;  // custom(migration_time, collocation_time)

  static RewardModel polynomial(int exponent = 1, double scale = 1.0);
  static RewardModel custom(std::function<double(double, double)> fn);

  bool linear() const { return kind == RewardKind::polynomial && exponent == 1; }
  double value(double migration_time, double collocation_time) const;
};

enum class CollocationKind { exponential, custom };

// Distribution of the attacker's collocation (success) time given the attack
// rate. Rate zero degenerates to "never collocates". The exponential kind is
// the memoryless baseline; custom models supply pdf, cdf and the pdf's
// partial derivative in the rate.
struct CollocationModel {
  CollocationKind kind = CollocationKind::exponential;
  std::function<double(double, double)> pdf_fn;          // (time, rate)
  std::function<double(double, double)> cdf_fn;          // (time, rate)
  std::function<double(double, double)> pdf_dlambda_fn;  // (time, rate)

  static CollocationModel exponential();
  static CollocationModel custom(std::function<double(double, double)> pdf,
                                 std::function<double(double, double)> cdf,
                                 std::function<double(double, double)> pdf_dlambda);

  // All three throw NegativeInput for negative time or rate.
  double pdf(double collocation_time, double attack_rate) const;
  double cdf(double collocation_time, double attack_rate) const;
  double pdf_dlambda(double collocation_time, double attack_rate) const;
};

struct GameConfig {
  double horizon = 0.0;              // T: migration must happen by this time
  double min_migration_time = 0.01;  // defender acts on [min_migration_time, horizon]
  double min_attack_rate = 0.01;     // attacker acts on [min_attack_rate, max_attack_rate]
  double max_attack_rate = 0.0;
  double attack_cost = 0.0;     // C_a: attacker cost per unit rate per cycle
  double migration_cost = 0.0;  // C_d: defender cost per migration
  RewardModel reward;
  CollocationModel collocation;
};

// Immutable, validated game handle. Constructing one runs every config
// invariant (collecting all violations); engine operations therefore only
// need cheap per-call domain checks.
class Game {
 public:
  const GameConfig& config() const { return cfg_; }
  double horizon() const { return cfg_.horizon; }
  double min_migration_time() const { return cfg_.min_migration_time; }
  double min_attack_rate() const { return cfg_.min_attack_rate; }
  double max_attack_rate() const { return cfg_.max_attack_rate; }
  double attack_cost() const { return cfg_.attack_cost; }
  double migration_cost() const { return cfg_.migration_cost; }
  const RewardModel& reward() const { return cfg_.reward; }
  const CollocationModel& collocation() const { return cfg_.collocation; }

  // Closed forms are hard-coded for the linear-reward / exponential pair.
  bool closed_form() const {
    return cfg_.reward.linear() && cfg_.collocation.kind == CollocationKind::exponential;
  }

  // Domain checks with a tiny relative slack so solver outputs that land
  // exactly on an interval end stay valid; both clamp into the interval.
  double checked_migration_time(double migration_time) const;
  double checked_attack_rate(double attack_rate) const;

 private:
  friend Game validate_config(GameConfig cfg);
  explicit Game(GameConfig cfg) : cfg_(std::move(cfg)) {}
  GameConfig cfg_;
};

// Validates every GameConfig invariant; throws ValidationError carrying one
// issue per violation. Custom reward / collocation callables are screened on
// evaluation grids (non-negativity, shift-invariance, monotonicity, unit
// probability mass, cdf dominance in the rate).
Game validate_config(GameConfig cfg);

// Parses the documented JSON schema:
//   {"T":., "tau_min":., "lambda_min":., "lambda_max":., "C_a":., "C_d":.,
//    "reward": {"kind":"polynomial", "exponent":n, "alpha":.},
//    "collocation": {"kind":"exponential"}}
// tau_min and lambda_min default to 0.01; alpha to 1.0; exponent to 1.
// Unknown keys or non-schema kinds raise std::invalid_argument.
GameConfig config_from_json_text(const std::string& text);
GameConfig load_config_file(const std::string& path);

}  // namespace mtd
