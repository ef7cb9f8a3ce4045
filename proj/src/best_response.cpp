#include "mtd/best_response.hpp"

#include <cmath>
#include <functional>

#include "mtd/payoff.hpp"
#include "mtd/roots.hpp"

namespace mtd {

const char* player_name(Player player) {
  return player == Player::attacker ? "attacker" : "defender";
}

const char* response_kind_name(ResponseKind kind) {
  switch (kind) {
    case ResponseKind::lower_boundary: return "lower_boundary";
    case ResponseKind::interior: return "interior";
    case ResponseKind::upper_boundary: return "upper_boundary";
  }
  return "unknown";
}

namespace {

// Central difference with one-sided fallbacks at the interval ends, used for
// models without closed-form marginals.
double fd_marginal(const std::function<double(double)>& f, double a, double lo,
                   double hi) {
  const double h = 1e-6 * std::max(1.0, hi - lo);
  if (a - h >= lo && a + h <= hi) return (f(a + h) - f(a - h)) / (2.0 * h);
  if (a + 2.0 * h <= hi)
    return (-3.0 * f(a) + 4.0 * f(a + h) - f(a + 2.0 * h)) / (2.0 * h);
  return (3.0 * f(a) - 4.0 * f(a - h) + f(a - 2.0 * h)) / (2.0 * h);
}

// Deterministic fallback: coarse grid argmax, then golden-section refinement
// on the bracket around the winner.  Ties break toward the smaller action.
BestResponse grid_best_response(Player player, double opponent_action,
                                const std::function<double(double)>& payoff,
                                double lo, double hi) {
  const auto [coarse, coarse_val] = roots::grid_max(payoff, lo, hi, 512);
  (void)coarse_val;
  const double cell = (hi - lo) / 512.0;
  const double a = std::max(lo, coarse - cell);
  const double b = std::min(hi, coarse + cell);
  const double refined =
      roots::golden_max(payoff, a, b, 1e-10 * std::max(1.0, hi - lo));
  // keep whichever the payoff actually prefers (golden can stall on plateaus)
  const double action = payoff(refined) >= payoff(coarse) ? refined : coarse;

  BestResponse br;
  br.player = player;
  br.opponent_action = opponent_action;
  br.action = action;
  br.root_based = false;
  br.residual = fd_marginal(payoff, action, lo, hi);
  const double edge = 1e-9 * std::max(1.0, hi - lo);
  if (action - lo <= edge) {
    br.kind = ResponseKind::lower_boundary;
    br.action = lo;
  } else if (hi - action <= edge) {
    br.kind = ResponseKind::upper_boundary;
    br.action = hi;
  } else {
    br.kind = ResponseKind::interior;
  }
  return br;
}

// Shared three-case classification for a strictly decreasing marginal.
BestResponse classify(Player player, double opponent_action,
                      const std::function<double(double)>& marginal, double lo,
                      double hi) {
  BestResponse br;
  br.player = player;
  br.opponent_action = opponent_action;
  br.root_based = true;
  const double m_hi = marginal(hi);
  if (m_hi >= 0.0) {  // still climbing at the top end
    br.kind = ResponseKind::upper_boundary;
    br.action = hi;
    br.residual = m_hi;
    return br;
  }
  const double m_lo = marginal(lo);
  if (m_lo <= 0.0) {  // already falling at the bottom end
    br.kind = ResponseKind::lower_boundary;
    br.action = lo;
    br.residual = m_lo;
    return br;
  }
  const auto root = roots::bisect(marginal, lo, hi, 1e-9);
  br.kind = ResponseKind::interior;
  br.action = root.x;
  br.residual = root.fx;
  return br;
}

}  // namespace

double attacker_marginal(const Game& game, double migration_time,
                         double attack_rate) {
  const double tau = game.checked_migration_time(migration_time);
  const double lambda = game.checked_attack_rate(attack_rate);
  if (game.closed_form()) {
    const double alpha = game.reward().scale;
    if (lambda == 0.0)
      return alpha * tau / 2.0 - game.attack_cost() / tau;  // series limit
    const double numerator = alpha * detail::erlang2_cdf(lambda * tau) -
                             game.attack_cost() * lambda * lambda;
    return numerator / (lambda * lambda * tau);
  }
  return fd_marginal(
      [&](double l) { return expected_payoffs(game, tau, l).attacker; }, lambda,
      game.min_attack_rate(), game.max_attack_rate());
}

double defender_marginal(const Game& game, double migration_time,
                         double attack_rate) {
  const double tau = game.checked_migration_time(migration_time);
  const double lambda = game.checked_attack_rate(attack_rate);
  if (game.closed_form()) {
    if (lambda == 0.0) return game.migration_cost() / (tau * tau);  // limit
    const double numerator = game.migration_cost() * lambda -
                             game.reward().scale *
                                 detail::erlang2_cdf(lambda * tau);
    return numerator / (lambda * tau * tau);
  }
  return fd_marginal(
      [&](double t) { return expected_payoffs(game, t, lambda).defender; }, tau,
      game.min_migration_time(), game.horizon());
}

BestResponse attacker_best_response(const Game& game, double migration_time) {
  const double tau = game.checked_migration_time(migration_time);
  if (!game.closed_form())
    return grid_best_response(
        Player::attacker, tau,
        [&](double l) { return expected_payoffs(game, tau, l).attacker; },
        game.min_attack_rate(), game.max_attack_rate());
  return classify(
      Player::attacker, tau,
      [&](double l) { return attacker_marginal(game, tau, l); },
      game.min_attack_rate(), game.max_attack_rate());
}

BestResponse defender_best_response(const Game& game, double attack_rate) {
  const double lambda = game.checked_attack_rate(attack_rate);
  if (lambda == 0.0) {
    // no attack ever lands; waiting out the horizon amortises the migration
    // cost best (payoff -C_d/tau is increasing)
    BestResponse br;
    br.player = Player::defender;
    br.opponent_action = 0.0;
    br.kind = ResponseKind::upper_boundary;
    br.action = game.horizon();
    br.residual = defender_marginal(game, game.horizon(), 0.0);
    return br;
  }
  if (!game.closed_form())
    return grid_best_response(
        Player::defender, lambda,
        [&](double t) { return expected_payoffs(game, t, lambda).defender; },
        game.min_migration_time(), game.horizon());
  return classify(
      Player::defender, lambda,
      [&](double t) { return defender_marginal(game, t, lambda); },
      game.min_migration_time(), game.horizon());
}

ReactionCurve reaction_curve(const Game& game, Player player, int n_points) {
  if (n_points < 2)
    throw std::invalid_argument("reaction_curve needs n_points >= 2");
  ReactionCurve curve;
  curve.player = player;
  curve.points.reserve(static_cast<std::size_t>(n_points));
  const bool for_attacker = player == Player::attacker;
  const double lo = for_attacker ? game.min_migration_time() : game.min_attack_rate();
  const double hi = for_attacker ? game.horizon() : game.max_attack_rate();
  for (int i = 0; i < n_points; ++i) {
    const double opp = lo + (hi - lo) * i / (n_points - 1);
    curve.points.push_back(for_attacker ? attacker_best_response(game, opp)
                                        : defender_best_response(game, opp));
  }
  for (std::size_t i = 0; i < curve.points.size(); ++i) {
    if (curve.segments.empty() ||
        curve.segments.back().kind != curve.points[i].kind) {
      curve.segments.push_back({curve.points[i].kind, i, i});
    } else {
      curve.segments.back().last = i;
    }
  }
  return curve;
}

}  // namespace mtd
