#pragma once

// Equilibrium-existence certificates and cost-threshold calculators.
//
// For the linear-reward / exponential-collocation game the defender payoff is
// concave in the migration time wherever
//
//   margin(tau, lambda) = (1 + x + x^2/2) e^{-x} - (1 - lambda*C_d/alpha) > 0,
//   x = lambda * tau,
//
// and the attacker payoff is concave in the rate everywhere.  A strictly
// positive margin over the whole action rectangle therefore certifies that a
// pure-strategy equilibrium exists.  The cost thresholds bound the costs
// beyond which best responses pin to an interval end (attacker to the minimum
// rate, defender to the horizon), plus quadrature-based generalisations for
// arbitrary reward/collocation models and the attacker back-off condition.

#include <utility>

#include "mtd/game.hpp"

namespace mtd {

// Second derivative of the attacker's expected payoff in the attack rate
// (closed form; strictly negative for every positive rate and time).
double attacker_second_derivative(const Game& game, double migration_time,
                                  double attack_rate);

// Second derivative of the defender's expected payoff in the migration time
// (closed form; negative exactly where the concavity margin is positive).
double defender_second_derivative(const Game& game, double migration_time,
                                  double attack_rate);

// The concavity margin above.  Positive ⇒ defender payoff locally concave.
double concavity_margin(const Game& game, double migration_time,
                        double attack_rate);

struct ExistenceCertificate {
  bool holds = false;          // worst_margin > 0 (strict)
  double worst_margin = 0.0;   // minimum margin over the scanned points
  double worst_migration_time = 0.0;
  double worst_attack_rate = 0.0;
  int grid_migration = 0;  // grid resolution used (corner-inclusive)
  int grid_rate = 0;
};

// Scans the margin on an (n+1)x(n+1) corner-inclusive grid over the action
// rectangle, then refines once around the grid minimum.  Numeric evidence,
// not a proof; `holds` requires a strictly positive minimum.
ExistenceCertificate existence_certificate(const Game& game,
                                           int grid_migration = 64,
                                           int grid_rate = 64);

// Cheap sufficient conditions, each of which already forces the certificate:
//   rate_floor:    min_attack_rate >= 1/migration_cost  (margin RHS <= 0)
//   short_horizon: horizon <= 5 * migration_cost
// Both report false when migration_cost = 0.
struct SufficientConditions {
  bool rate_floor = false;
  bool short_horizon = false;
};
SufficientConditions sufficient_existence_conditions(const Game& game);

// Pointwise numeric concavity/convexity survey for arbitrary models: second
// differences of the collocation pdf in the rate and of reward/time in the
// migration time.  Reports per-point violation counts; the global flags are
// deliberately strict (a single violation clears them), so for the
// exponential/linear pair they come out false — the closed-form certificate
// above is the authoritative existence test for that instantiation.
struct GeneralConcavityReport {
  bool collocation_concave_in_rate = false;
  bool reward_rate_convex = false;
  bool existence_guaranteed = false;  // both flags true
  int points = 0;
  int concavity_violations = 0;
  int convexity_violations = 0;
};
GeneralConcavityReport general_concavity_report(const Game& game, int grid = 32);

enum class ThresholdKind {
  attacker_min_rate,    // cost above which the attacker pins to the rate floor
  defender_no_migrate,  // cost above which the defender waits out the horizon
  general_attacker,     // quadrature version of attacker_min_rate
  general_defender,     // quadrature version of defender_no_migrate
  backoff,              // zero-rate equilibrium condition
};

const char* threshold_kind_name(ThresholdKind kind);

struct ThresholdReport {
  ThresholdKind kind = ThresholdKind::attacker_min_rate;
  double threshold = 0.0;
  bool satisfied = false;   // the relevant cost strictly exceeds the threshold
  bool applicable = true;   // false when the closed form does not cover the game
};

// Attack cost above which the attacker's payoff decreases in the rate over
// the whole rate interval at this migration time; the best response is then
// the rate floor.  A zero rate floor makes the bound infinite (never
// satisfied).  Closed form; flagged not-applicable for custom models.
ThresholdReport attacker_cost_threshold(const Game& game, double migration_time);

// Migration cost above which the defender's payoff increases in the migration
// time up to the horizon at this attack rate; the best response is then the
// horizon itself.  Rate zero yields threshold 0 (waiting is free of risk).
ThresholdReport defender_cost_threshold(const Game& game, double attack_rate);

// Quadrature/finite-difference generalisations of the two bounds for
// arbitrary reward and collocation models:
//   attacker: integral of G * d(pdf)/d(rate) at the rate floor over one cycle;
//   defender: horizon^2 * E[ d/dtau (G/tau) at tau = horizon ].
// For the linear/exponential pair the defender bound reproduces
// defender_cost_threshold to quadrature accuracy.
std::pair<ThresholdReport, ThresholdReport> general_monotonicity_thresholds(
    const Game& game, double migration_time, double attack_rate);

// Back-off analysis: with a zero rate floor, (horizon, rate 0) is an
// equilibrium iff rate * attack_cost >= E[reward at the horizon] for every
// admissible rate.  Scans the margin of that inequality on a rate grid.
struct BackoffCheck {
  bool is_equilibrium = false;
  double worst_rate = 0.0;
  double worst_margin = 0.0;  // min over the grid of rate*C_a - E[reward]
};
BackoffCheck backoff_equilibrium_check(const Game& game, int grid = 256);

}  // namespace mtd
