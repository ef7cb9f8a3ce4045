#pragma once

// Marginal payoffs and best responses.
//
// Each player's best response to a fixed opponent action is classified into
// three cases by the marginal's sign at the interval ends: pinned to the
// lower end, pinned to the upper end, or an interior stationary point found
// by bisection.  The closed-form game guarantees the bracketed marginal is
// strictly decreasing (attacker payoff is concave in the rate; the defender
// marginal's numerator is strictly decreasing in the migration time), so the
// interior root is unique.  Other reward/collocation models fall back to a
// deterministic grid argmax plus golden-section refinement.

#include <cstddef>
#include <vector>

#include "mtd/game.hpp"

namespace mtd {

enum class Player { attacker, defender };
enum class ResponseKind { lower_boundary, interior, upper_boundary };

const char* player_name(Player player);
const char* response_kind_name(ResponseKind kind);

struct BestResponse {
  Player player = Player::attacker;
  double opponent_action = 0.0;
  ResponseKind kind = ResponseKind::interior;
  double action = 0.0;
  // Marginal payoff at `action`: ~0 at an interior root, the cause of the
  // pin at a boundary (<= 0 lower, >= 0 upper).
  double residual = 0.0;
  // True when produced by the sign-test/bisection path (closed form); false
  // for the grid+golden fallback, whose residual is a finite difference.
  bool root_based = true;
};

// d(expected attacker payoff)/d(rate).  Closed form when available, central
// finite difference of the payoff engine otherwise.  Rate 0 uses the analytic
// one-sided limit alpha*tau/2 - C_a/tau.
double attacker_marginal(const Game& game, double migration_time,
                         double attack_rate);

// d(expected defender payoff)/d(migration time); rate 0 limit is C_d/tau^2.
double defender_marginal(const Game& game, double migration_time,
                         double attack_rate);

BestResponse attacker_best_response(const Game& game, double migration_time);
BestResponse defender_best_response(const Game& game, double attack_rate);

struct ReactionSegment {
  ResponseKind kind = ResponseKind::interior;
  std::size_t first = 0;  // index range [first, last] into points
  std::size_t last = 0;
};

struct ReactionCurve {
  Player player = Player::attacker;
  std::vector<BestResponse> points;       // opponent_action is the sample grid
  std::vector<ReactionSegment> segments;  // maximal runs of equal kind
};

// Samples the opponent's interval uniformly (n_points >= 2, endpoints
// included) and records the best response at each sample.
ReactionCurve reaction_curve(const Game& game, Player player, int n_points);

}  // namespace mtd
