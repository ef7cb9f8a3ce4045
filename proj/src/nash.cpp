#include "mtd/nash.hpp"

#include <algorithm>
#include <cmath>

#include "mtd/payoff.hpp"
#include "mtd/roots.hpp"

namespace mtd {

DeviationCheck verify_epsilon_ne(const Game& game, double migration_time,
                                 double attack_rate, double epsilon,
                                 int n_deviations) {
  const double tau = game.checked_migration_time(migration_time);
  const double lambda = game.checked_attack_rate(attack_rate);
  n_deviations = std::max(n_deviations, 2);
  const PayoffPair base = expected_payoffs(game, tau, lambda);

  DeviationCheck out;
  double best_d = base.defender;
  for (int i = 0; i <= n_deviations; ++i) {
    const double t = game.min_migration_time() +
                     (game.horizon() - game.min_migration_time()) * i / n_deviations;
    best_d = std::max(best_d, expected_payoffs(game, t, lambda).defender);
  }
  const BestResponse brd = defender_best_response(game, lambda);
  best_d = std::max(best_d, expected_payoffs(game, brd.action, lambda).defender);
  out.max_gain_defender = best_d - base.defender;

  double best_a = base.attacker;
  for (int i = 0; i <= n_deviations; ++i) {
    const double l = game.min_attack_rate() +
                     (game.max_attack_rate() - game.min_attack_rate()) * i / n_deviations;
    best_a = std::max(best_a, expected_payoffs(game, tau, l).attacker);
  }
  const BestResponse bra = attacker_best_response(game, tau);
  best_a = std::max(best_a, expected_payoffs(game, tau, bra.action).attacker);
  out.max_gain_attacker = best_a - base.attacker;

  out.is_ne = out.max_gain_defender <= epsilon && out.max_gain_attacker <= epsilon;
  return out;
}

namespace {

// Composed-map residual: how far the rate is from being a fixed point of
// BR_attacker ∘ BR_defender.
double fixed_point_residual(const Game& game, double rate) {
  const BestResponse brd = defender_best_response(game, rate);
  return attacker_best_response(game, brd.action).action - rate;
}

}  // namespace

EquilibriumReport find_equilibria(const Game& game, const SolveOptions& options) {
  EquilibriumReport report;
  if (game.closed_form()) {
    report.certificate_available = true;
    report.certificate = existence_certificate(game);
  }

  const double lam_lo = game.min_attack_rate();
  const double lam_hi = game.max_attack_rate();
  const int n = std::max(options.rate_grid, 8);

  std::vector<double> candidates;  // candidate equilibrium rates
  auto add_candidate = [&](double rate) {
    for (double c : candidates)
      if (std::abs(c - rate) <= 1e-6 * std::max(1.0, lam_hi)) return;
    candidates.push_back(rate);
  };

  std::vector<double> residual(static_cast<std::size_t>(n) + 1);
  for (int j = 0; j <= n; ++j)
    residual[j] = fixed_point_residual(game, lam_lo + (lam_hi - lam_lo) * j / n);
  for (int j = 0; j <= n; ++j) {
    if (residual[j] == 0.0) add_candidate(lam_lo + (lam_hi - lam_lo) * j / n);
    if (j == n) break;
    if ((residual[j] < 0.0) != (residual[j + 1] < 0.0) && residual[j] != 0.0 &&
        residual[j + 1] != 0.0) {
      const double a = lam_lo + (lam_hi - lam_lo) * j / n;
      const double b = lam_lo + (lam_hi - lam_lo) * (j + 1) / n;
      const auto root = roots::bisect(
          [&](double r) { return fixed_point_residual(game, r); }, a, b, 1e-9);
      add_candidate(root.x);
    }
  }
  // action-rectangle corners: an equilibrium pinned at both interval ends is
  // a fixed point of the composition only when the defender's best response
  // happens to land on the corner, so test the corners outright
  for (double lc : {lam_lo, lam_hi}) {
    const double tc = defender_best_response(game, lc).action;
    if (std::abs(attacker_best_response(game, tc).action - lc) <=
        1e-9 * std::max(1.0, lam_hi))
      add_candidate(lc);
  }

  for (double rate : candidates) {
    const BestResponse brd = defender_best_response(game, rate);
    const BestResponse bra = attacker_best_response(game, brd.action);
    EquilibriumPoint pt;
    pt.migration_time = brd.action;
    pt.attack_rate = rate;
    pt.defender_kind = brd.kind;
    pt.attacker_kind = bra.kind;
    pt.defender_residual = brd.residual;
    pt.attacker_residual = bra.residual;
    const PayoffPair u = expected_payoffs(game, pt.migration_time, pt.attack_rate);
    pt.defender_payoff = u.defender;
    pt.attacker_payoff = u.attacker;
    const double scale =
        std::max({1.0, std::abs(u.attacker), std::abs(u.defender)});
    const DeviationCheck check =
        verify_epsilon_ne(game, pt.migration_time, pt.attack_rate,
                          options.epsilon * scale, options.deviation_samples);
    pt.max_gain_defender = check.max_gain_defender;
    pt.max_gain_attacker = check.max_gain_attacker;
    pt.epsilon = std::max(check.max_gain_defender, check.max_gain_attacker);
    if (check.is_ne) report.equilibria.push_back(pt);
  }
  std::sort(report.equilibria.begin(), report.equilibria.end(),
            [](const EquilibriumPoint& a, const EquilibriumPoint& b) {
              return a.attack_rate < b.attack_rate;
            });

  if (report.equilibria.empty() && options.require_existence)
    throw NoEquilibriumFound(
        "no strategy pair survived the deviation scan (composed best-response "
        "map has no verified fixed point)");
  return report;
}

IterationResult best_response_iteration(const Game& game,
                                        double start_migration_time,
                                        double start_attack_rate,
                                        double damping, int max_iters) {
  if (!(damping > 0.0) || damping > 1.0)
    throw std::invalid_argument("damping must lie in (0, 1]");
  double tau = game.checked_migration_time(start_migration_time);
  double lambda = game.checked_attack_rate(start_attack_rate);
  IterationResult out;
  out.trajectory.emplace_back(tau, lambda);
  for (int k = 0; k < max_iters; ++k) {
    const double next_tau =
        (1.0 - damping) * tau + damping * defender_best_response(game, lambda).action;
    const double next_lambda =
        (1.0 - damping) * lambda + damping * attacker_best_response(game, tau).action;
    const double step =
        std::max(std::abs(next_tau - tau), std::abs(next_lambda - lambda));
    tau = next_tau;
    lambda = next_lambda;
    out.trajectory.emplace_back(tau, lambda);
    ++out.iterations;
    if (step < 1e-10) {
      out.converged = true;
      break;
    }
  }
  out.migration_time = tau;
  out.attack_rate = lambda;
  return out;
}

}  // namespace mtd
