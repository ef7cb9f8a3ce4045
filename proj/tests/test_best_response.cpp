#include <doctest.h>

#include <cmath>

#include "mtd/best_response.hpp"
#include "mtd/payoff.hpp"
#include "oracles.hpp"

// Frozen marginals/roots below come from 40-digit series evaluation and
// bisection at 1e-30 residual, rounded to the nearest double.

TEST_CASE("attacker marginal matches frozen values") {
  const auto free_rate = oracle::linear_game(3.0, 3.0, 0.0, 0.3);
  CHECK(mtd::attacker_marginal(free_rate, 1.0, 1.0) ==
        doctest::Approx(0.26424111765711535681).epsilon(1e-13));

  const auto priced = oracle::linear_game(3.0, 3.0, 0.3, 0.3);
  CHECK(mtd::attacker_marginal(priced, 1.0, 1.0) ==
        doctest::Approx(-0.035758882342884643191).epsilon(1e-12));

  const auto near_flat = oracle::linear_game(3.0, 3.0, 0.2, 0.3);
  CHECK(mtd::attacker_marginal(near_flat, 1.5, 2.0) ==
        doctest::Approx(0.00014195442142403801377).epsilon(1e-10));
}

TEST_CASE("defender marginal matches frozen values") {
  const auto game = oracle::linear_game(3.0, 3.0, 0.1, 0.3);
  CHECK(mtd::defender_marginal(game, 1.0, 1.0) ==
        doctest::Approx(0.035758882342884643191).epsilon(1e-12));
}

TEST_CASE("marginals agree with finite differences of the payoffs") {
  const auto game = oracle::linear_game(3.0, 3.0, 0.2, 0.3);
  for (double tau : {0.5, 1.2, 2.8}) {
    for (double lambda : {0.2, 1.0, 2.7}) {
      auto ua = [&](double l) { return mtd::expected_payoffs(game, tau, l).attacker; };
      auto ud = [&](double t) { return mtd::expected_payoffs(game, t, lambda).defender; };
      const double fd_a = oracle::derivative1(ua, lambda, 0.01, 3.0);
      const double fd_d = oracle::derivative1(ud, tau, 0.01, 3.0);
      CHECK(mtd::attacker_marginal(game, tau, lambda) ==
            doctest::Approx(fd_a).epsilon(1e-6));
      CHECK(mtd::defender_marginal(game, tau, lambda) ==
            doctest::Approx(fd_d).epsilon(1e-6));
    }
  }
}

TEST_CASE("rate-zero marginal limits") {
  const auto game = oracle::linear_game(3.0, 3.0, 0.2, 0.3, 0.01, 0.0);
  // attacker: alpha*tau/2 - C_a/tau; defender: C_d/tau^2
  CHECK(mtd::attacker_marginal(game, 2.0, 0.0) ==
        doctest::Approx(1.0 - 0.1).epsilon(1e-15));
  CHECK(mtd::defender_marginal(game, 2.0, 0.0) ==
        doctest::Approx(0.075).epsilon(1e-15));
  // continuity just off zero
  CHECK(mtd::attacker_marginal(game, 2.0, 1e-8) ==
        doctest::Approx(0.9).epsilon(1e-6));
}

TEST_CASE("attacker best response: cheap attacks pin to the rate ceiling") {
  const auto game = oracle::linear_game(3.0, 3.0, 0.01, 0.3);
  const auto br = mtd::attacker_best_response(game, 1.5);
  CHECK(br.player == mtd::Player::attacker);
  CHECK(br.opponent_action == 1.5);
  CHECK(br.kind == mtd::ResponseKind::upper_boundary);
  CHECK(br.action == 3.0);
  CHECK(br.residual >= 0.0);  // still climbing at the ceiling
  CHECK(br.root_based);
}

TEST_CASE("attacker best response: pricey attacks pin to the rate floor") {
  const auto game = oracle::linear_game(4.0, 3.0, 4.0, 0.3, 0.01, 1.0);
  for (double tau : {0.5, 1.0, 2.0, 4.0}) {
    const auto br = mtd::attacker_best_response(game, tau);
    CHECK(br.kind == mtd::ResponseKind::lower_boundary);
    CHECK(br.action == 1.0);
    CHECK(br.residual <= 0.0);  // already falling at the floor
  }
}

TEST_CASE("attacker best response: interior roots match frozen bisection") {
  const auto g3 = oracle::linear_game(3.0, 3.0, 0.2, 0.3);
  const auto br3 = mtd::attacker_best_response(g3, 1.5);
  CHECK(br3.kind == mtd::ResponseKind::interior);
  CHECK(br3.action == doctest::Approx(2.0014776165685963481).epsilon(1e-7));
  CHECK(std::abs(br3.residual) <= 1e-9);

  const auto g4 = oracle::linear_game(4.0, 3.0, 0.2, 0.3);
  const auto br4 = mtd::attacker_best_response(g4, 4.0);
  CHECK(br4.kind == mtd::ResponseKind::interior);
  CHECK(br4.action == doctest::Approx(2.2346091596741989334).epsilon(1e-7));
  // a longer exposure justifies probing at least as fast
  CHECK(br4.action > br3.action);
}

TEST_CASE("interior attacker root is a genuine sign change and argmax") {
  const auto game = oracle::linear_game(3.0, 3.0, 0.2, 0.3);
  const auto br = mtd::attacker_best_response(game, 1.5);
  CHECK(mtd::attacker_marginal(game, 1.5, br.action - 1e-3) > 0.0);
  CHECK(mtd::attacker_marginal(game, 1.5, br.action + 1e-3) < 0.0);
  const double best = mtd::expected_payoffs(game, 1.5, br.action).attacker;
  for (int i = 0; i <= 1000; ++i) {
    const double lambda = 0.01 + (3.0 - 0.01) * i / 1000;
    CHECK(best >= mtd::expected_payoffs(game, 1.5, lambda).attacker - 1e-9);
  }
}

TEST_CASE("defender best response: pricey migrations wait out the horizon") {
  const auto game = oracle::linear_game(3.0, 3.0, 0.1, 1.5);
  for (double lambda : {0.01, 0.5, 1.0, 2.0, 3.0}) {
    const auto br = mtd::defender_best_response(game, lambda);
    CHECK(br.player == mtd::Player::defender);
    CHECK(br.kind == mtd::ResponseKind::upper_boundary);
    CHECK(br.action == 3.0);
    CHECK(br.residual >= 0.0);
  }
}

TEST_CASE("defender best response: near-free migrations pin to the floor") {
  const auto game = oracle::linear_game(4.0, 3.0, 0.1, 0.03, 0.5);
  for (double lambda : {1.0, 2.5}) {
    const auto br = mtd::defender_best_response(game, lambda);
    CHECK(br.kind == mtd::ResponseKind::lower_boundary);
    CHECK(br.action == 0.5);
    CHECK(br.residual <= 0.0);
  }
}

TEST_CASE("defender best response: interior root matches frozen bisection") {
  const auto game = oracle::linear_game(4.0, 3.0, 0.1, 0.3);
  const auto br = mtd::defender_best_response(game, 1.0);
  CHECK(br.kind == mtd::ResponseKind::interior);
  CHECK(br.action == doctest::Approx(1.0973492107034916496).epsilon(1e-7));
  CHECK(std::abs(br.residual) <= 1e-9);
  CHECK(mtd::defender_marginal(game, br.action - 1e-3, 1.0) > 0.0);
  CHECK(mtd::defender_marginal(game, br.action + 1e-3, 1.0) < 0.0);
  const double best = mtd::expected_payoffs(game, br.action, 1.0).defender;
  for (int i = 0; i <= 1000; ++i) {
    const double tau = 0.01 + (4.0 - 0.01) * i / 1000;
    CHECK(best >= mtd::expected_payoffs(game, tau, 1.0).defender - 1e-9);
  }
}

TEST_CASE("defender best response to a dormant attacker is the horizon") {
  const auto game = oracle::linear_game(4.0, 3.0, 0.1, 0.3, 0.01, 0.0);
  const auto br = mtd::defender_best_response(game, 0.0);
  CHECK(br.kind == mtd::ResponseKind::upper_boundary);
  CHECK(br.action == 4.0);
}

TEST_CASE("zero-cost reaction curves are constant boundary pins") {
  const auto game = oracle::linear_game(3.0, 3.0, 0.0, 0.0);
  const auto att = mtd::reaction_curve(game, mtd::Player::attacker, 33);
  REQUIRE(att.points.size() == 33);
  REQUIRE(att.segments.size() == 1);
  CHECK(att.segments[0].kind == mtd::ResponseKind::upper_boundary);
  CHECK(att.segments[0].first == 0);
  CHECK(att.segments[0].last == 32);
  CHECK(att.points.front().opponent_action == 0.01);
  CHECK(att.points.back().opponent_action == 3.0);
  for (const auto& p : att.points) CHECK(p.action == 3.0);

  const auto def = mtd::reaction_curve(game, mtd::Player::defender, 33);
  REQUIRE(def.segments.size() == 1);
  CHECK(def.segments[0].kind == mtd::ResponseKind::lower_boundary);
  for (const auto& p : def.points) CHECK(p.action == 0.01);
}

TEST_CASE("attacker reaction curve switches from floor to interior") {
  // Against short exposures a 1.5-per-rate attack cannot pay for itself;
  // beyond tau ~ sqrt(2 C_a) the interior stationary rate takes over.
  const auto game = oracle::linear_game(4.0, 3.0, 1.5, 0.3);
  const auto curve = mtd::reaction_curve(game, mtd::Player::attacker, 81);
  REQUIRE(curve.segments.size() == 2);
  CHECK(curve.segments[0].kind == mtd::ResponseKind::lower_boundary);
  CHECK(curve.segments[1].kind == mtd::ResponseKind::interior);
  // the interior branch is non-decreasing in the exposure time
  for (std::size_t i = curve.segments[1].first; i < curve.segments[1].last; ++i)
    CHECK(curve.points[i + 1].action >= curve.points[i].action - 1e-9);
}

TEST_CASE("reaction curve input validation") {
  const auto game = oracle::linear_game(3.0, 3.0, 0.1, 0.3);
  CHECK_THROWS_AS(mtd::reaction_curve(game, mtd::Player::attacker, 1),
                  std::invalid_argument);
}

TEST_CASE("non-closed-form games fall back to a grid search") {
  const auto game = oracle::polynomial_game(2, 3.0, 3.0, 0.2, 0.4);
  const auto att = mtd::attacker_best_response(game, 1.5);
  CHECK_FALSE(att.root_based);
  CHECK(att.kind == mtd::ResponseKind::interior);
  CHECK(att.action == doctest::Approx(2.893810708187388).epsilon(1e-4));

  const auto def = mtd::defender_best_response(game, 1.0);
  CHECK_FALSE(def.root_based);
  CHECK(def.kind == mtd::ResponseKind::interior);
  CHECK(def.action == doctest::Approx(0.9406664989806416).epsilon(1e-4));

  // fallback results still behave like argmaxes
  const double best = mtd::expected_payoffs(game, 1.5, att.action).attacker;
  auto [grid_arg, grid_best] = oracle::argmax(
      [&](double l) { return mtd::expected_payoffs(game, 1.5, l).attacker; },
      0.01, 3.0, 4000);
  CHECK(best >= grid_best - 1e-7);
  (void)grid_arg;
}

TEST_CASE("player and kind names are stable identifiers") {
  CHECK(std::string(mtd::player_name(mtd::Player::attacker)) == "attacker");
  CHECK(std::string(mtd::player_name(mtd::Player::defender)) == "defender");
  CHECK(std::string(mtd::response_kind_name(mtd::ResponseKind::interior)) == "interior");
  CHECK(std::string(mtd::response_kind_name(mtd::ResponseKind::lower_boundary)) ==
        "lower_boundary");
}
