#pragma once

// Pure-strategy Nash equilibria as reaction-curve intersections.
//
// The solver scans the composed map r(rate) = BR_attacker(BR_defender(rate))
// minus the rate for sign changes, refines each bracket by bisection, adds
// the four action-rectangle corners as explicit candidates, and keeps only
// candidates that survive a dense unilateral-deviation scan.  A damped
// best-response iteration is provided for cross-validation.

#include <cstdint>
#include <vector>

#include "mtd/best_response.hpp"
#include "mtd/equilibrium.hpp"
#include "mtd/game.hpp"

namespace mtd {

struct EquilibriumPoint {
  double migration_time = 0.0;
  double attack_rate = 0.0;
  ResponseKind defender_kind = ResponseKind::interior;
  ResponseKind attacker_kind = ResponseKind::interior;
  double defender_residual = 0.0;  // marginal at the point, per player
  double attacker_residual = 0.0;
  double defender_payoff = 0.0;
  double attacker_payoff = 0.0;
  double max_gain_defender = 0.0;  // best unilateral deviation gains found
  double max_gain_attacker = 0.0;
  double epsilon = 0.0;  // max of the two gains
};

struct SolveOptions {
  int rate_grid = 256;          // scan resolution for the composed map
  double epsilon = 1e-6;        // deviation-gain tolerance (scaled by payoff size)
  int deviation_samples = 2048; // per-player deviation scan density
  bool require_existence = false;  // throw NoEquilibriumFound when none survive
};

struct EquilibriumReport {
  std::vector<EquilibriumPoint> equilibria;
  // Filled for closed-form games; certificate_available says whether the
  // closed-form existence margin applies to this instantiation at all.
  bool certificate_available = false;
  ExistenceCertificate certificate;
  const char* method = "curve_intersection";
};

EquilibriumReport find_equilibria(const Game& game, const SolveOptions& options = {});

struct DeviationCheck {
  bool is_ne = false;
  double max_gain_defender = 0.0;
  double max_gain_attacker = 0.0;
};

// Scans n_deviations+1 uniform unilateral deviations per player (interval
// ends included) plus that player's best response to the fixed opponent
// action; is_ne iff neither player can gain more than epsilon.
DeviationCheck verify_epsilon_ne(const Game& game, double migration_time,
                                 double attack_rate, double epsilon,
                                 int n_deviations = 2048);

struct IterationResult {
  std::vector<std::pair<double, double>> trajectory;  // (migration_time, rate)
  double migration_time = 0.0;
  double attack_rate = 0.0;
  bool converged = false;  // step dropped below 1e-10 before max_iters
  int iterations = 0;
};

// Damped simultaneous best-response iteration
//   (tau, rate) <- (1-d)*(tau, rate) + d*(BR_d(rate), BR_a(tau)).
// Non-convergence is reported through `converged`, never truncated silently:
// the full trajectory is returned either way.
IterationResult best_response_iteration(const Game& game,
                                        double start_migration_time,
                                        double start_attack_rate,
                                        double damping = 1.0,
                                        int max_iters = 500);

}  // namespace mtd
