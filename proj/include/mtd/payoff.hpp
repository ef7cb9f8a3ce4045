#pragma once

// Realized and expected payoffs for one round of the migration timing game.
//
// A round lasts until the defender migrates at time tau_d; the attacker's
// collocation time tau_a is random with rate lambda.  Payoffs are the
// per-round totals divided by the round length tau_d, so that strategies
// with different migration periods are comparable as long-run rates.

#include "mtd/game.hpp"

namespace mtd {

// How an expected payoff was produced.
enum class PayoffMethod { closed_form, quadrature };

struct PayoffPair {
  double attacker = 0.0;
  double defender = 0.0;
  PayoffMethod method = PayoffMethod::closed_form;
};

namespace detail {

// 1 - (1 + x) e^{-x}, the probability that an Erlang(2) variable with unit
// rate is below x.  Evaluated by series for small x to avoid cancellation.
double erlang2_cdf(double x);

// e^x - 1 - x - x^2/2, again with a series branch for small |x|.
double exp_tail3(double x);

}  // namespace detail

// P(tau_a < tau_d): the chance the attacker collocates before the migration.
double collocation_probability(const Game& game, double migration_time,
                               double attack_rate);

// Payoffs for one realized round with known collocation time.
double realized_attacker_payoff(const Game& game, double migration_time,
                                double attack_rate, double collocation_time);
double realized_defender_payoff(const Game& game, double migration_time,
                                double attack_rate, double collocation_time);

// E[G(tau_d, tau_a)] by adaptive quadrature over [0, tau_d].  The model-level
// overload skips Game validation so that pathological inputs can be probed.
double expected_reward_quadrature(const Game& game, double migration_time,
                                  double attack_rate);
double expected_reward_quadrature(const RewardModel& reward,
                                  const CollocationModel& collocation,
                                  double migration_time, double attack_rate);

// Expected per-round payoffs for both players.  Uses the closed form when the
// game has a linear reward and exponential collocation times, quadrature
// otherwise.
PayoffPair expected_payoffs(const Game& game, double migration_time,
                            double attack_rate);

}  // namespace mtd
