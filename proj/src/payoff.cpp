#include "mtd/payoff.hpp"

#include <cmath>

#include "mtd/quadrature.hpp"

namespace mtd {

namespace detail {

double erlang2_cdf(double x) {
  if (x < 0.02) {
    // 1 - (1+x)e^{-x} = sum_{k>=2} (-1)^k (k-1) x^k / k!
    double term = 0.5 * x * x;  // k = 2
    double sum = term;
    for (int k = 2; k < 30; ++k) {
      term *= -x * k / (static_cast<double>(k + 1) * (k - 1));
      sum += term;
      if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return sum;
  }
  return 1.0 - (1.0 + x) * std::exp(-x);
}

double exp_tail3(double x) {
  if (std::abs(x) < 0.5) {
    // sum_{k>=3} x^k / k!
    double term = x * x * x / 6.0;
    double sum = term;
    for (int k = 4; k < 40; ++k) {
      term *= x / k;
      sum += term;
      if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return sum;
  }
  return std::exp(x) - 1.0 - x - 0.5 * x * x;
}

}  // namespace detail

double collocation_probability(const Game& game, double migration_time,
                               double attack_rate) {
  const double tau = game.checked_migration_time(migration_time);
  const double lambda = game.checked_attack_rate(attack_rate);
  return game.collocation().cdf(tau, lambda);
}

double realized_attacker_payoff(const Game& game, double migration_time,
                                double attack_rate, double collocation_time) {
  const double tau = game.checked_migration_time(migration_time);
  const double lambda = game.checked_attack_rate(attack_rate);
  if (collocation_time < 0.0)
    throw NegativeInput("collocation time must be >= 0");
  const double reward =
      collocation_time < tau ? game.reward().value(tau, collocation_time) : 0.0;
  return (reward - lambda * game.attack_cost()) / tau;
}

double realized_defender_payoff(const Game& game, double migration_time,
                                double attack_rate, double collocation_time) {
  const double tau = game.checked_migration_time(migration_time);
  game.checked_attack_rate(attack_rate);
  if (collocation_time < 0.0)
    throw NegativeInput("collocation time must be >= 0");
  const double reward =
      collocation_time < tau ? game.reward().value(tau, collocation_time) : 0.0;
  return (-reward - game.migration_cost()) / tau;
}

double expected_reward_quadrature(const RewardModel& reward,
                                  const CollocationModel& collocation,
                                  double migration_time, double attack_rate) {
  if (attack_rate == 0.0 && collocation.kind == CollocationKind::exponential)
    return 0.0;  // degenerate: collocation never happens
  return quad::integrate_or_throw(
      [&](double t) { return reward.value(migration_time, t) * collocation.pdf(t, attack_rate); },
      0.0, migration_time);
}

double expected_reward_quadrature(const Game& game, double migration_time,
                                  double attack_rate) {
  const double tau = game.checked_migration_time(migration_time);
  const double lambda = game.checked_attack_rate(attack_rate);
  return expected_reward_quadrature(game.reward(), game.collocation(), tau, lambda);
}

PayoffPair expected_payoffs(const Game& game, double migration_time,
                            double attack_rate) {
  const double tau = game.checked_migration_time(migration_time);
  const double lambda = game.checked_attack_rate(attack_rate);
  PayoffPair out;
  if (game.closed_form()) {
    out.method = PayoffMethod::closed_form;
    const double alpha = game.reward().scale;
    if (lambda == 0.0) {
      // no attack ever lands: the attacker nets zero, the defender still
      // pays the migration cost every round
      out.attacker = 0.0;
      out.defender = -game.migration_cost() / tau;
      return out;
    }
    const double x = lambda * tau;
    // E[G]/tau = alpha (1 + expm1(-x)/x); expm1 keeps the small-x case exact
    const double reward_rate = alpha * (1.0 + std::expm1(-x) / x);
    out.attacker = reward_rate - game.attack_cost() * lambda / tau;
    out.defender = -reward_rate - game.migration_cost() / tau;
    return out;
  }
  out.method = PayoffMethod::quadrature;
  const double expected_reward = expected_reward_quadrature(game, tau, lambda);
  out.attacker = (expected_reward - lambda * game.attack_cost()) / tau;
  out.defender = (-expected_reward - game.migration_cost()) / tau;
  return out;
}

}  // namespace mtd
