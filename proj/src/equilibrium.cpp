#include "mtd/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mtd/payoff.hpp"
#include "mtd/quadrature.hpp"

namespace mtd {

namespace {

void require_closed_form(const Game& game, const char* what) {
  if (!game.closed_form())
    throw WrongInstantiation(std::string(what) +
                             " needs the linear-reward/exponential-collocation "
                             "closed form; use the general/numeric variant");
}

// margin = (1 + x + x^2/2)e^{-x} - 1 + lambda*C_d/alpha, written via
// exp_tail3 so the two near-1 terms never cancel.
double margin_value(double migration_time, double attack_rate,
                    double migration_cost, double scale) {
  const double x = attack_rate * migration_time;
  return attack_rate * migration_cost / scale -
         std::exp(-x) * detail::exp_tail3(x);
}

}  // namespace

double attacker_second_derivative(const Game& game, double migration_time,
                                  double attack_rate) {
  require_closed_form(game, "attacker_second_derivative");
  const double tau = game.checked_migration_time(migration_time);
  const double lambda = game.checked_attack_rate(attack_rate);
  const double alpha = game.reward().scale;
  if (lambda == 0.0) return -alpha * tau * tau / 3.0;  // series limit
  const double x = lambda * tau;
  return -2.0 * alpha * std::exp(-x) * detail::exp_tail3(x) /
         (lambda * lambda * lambda * tau);
}

double defender_second_derivative(const Game& game, double migration_time,
                                  double attack_rate) {
  require_closed_form(game, "defender_second_derivative");
  const double tau = game.checked_migration_time(migration_time);
  const double lambda = game.checked_attack_rate(attack_rate);
  const double tau3 = tau * tau * tau;
  if (lambda == 0.0) return -2.0 * game.migration_cost() / tau3;  // limit
  // -2*alpha*margin/(lambda*tau^3): sign is exactly the negated margin sign
  return -2.0 * game.reward().scale *
         margin_value(tau, lambda, game.migration_cost(), game.reward().scale) /
         (lambda * tau3);
}

double concavity_margin(const Game& game, double migration_time,
                        double attack_rate) {
  require_closed_form(game, "concavity_margin");
  const double tau = game.checked_migration_time(migration_time);
  const double lambda = game.checked_attack_rate(attack_rate);
  return margin_value(tau, lambda, game.migration_cost(), game.reward().scale);
}

ExistenceCertificate existence_certificate(const Game& game, int grid_migration,
                                           int grid_rate) {
  require_closed_form(game, "existence_certificate");
  grid_migration = std::max(grid_migration, 2);
  grid_rate = std::max(grid_rate, 2);
  const double tau_lo = game.min_migration_time();
  const double tau_hi = game.horizon();
  const double lam_lo = game.min_attack_rate();
  const double lam_hi = game.max_attack_rate();
  const double cd = game.migration_cost();
  const double alpha = game.reward().scale;

  ExistenceCertificate cert;
  cert.grid_migration = grid_migration;
  cert.grid_rate = grid_rate;
  cert.worst_margin = std::numeric_limits<double>::infinity();
  auto consider = [&](double tau, double lambda) {
    const double m = margin_value(tau, lambda, cd, alpha);
    if (m < cert.worst_margin) {
      cert.worst_margin = m;
      cert.worst_migration_time = tau;
      cert.worst_attack_rate = lambda;
    }
  };
  for (int i = 0; i <= grid_migration; ++i) {
    const double tau = tau_lo + (tau_hi - tau_lo) * i / grid_migration;
    for (int j = 0; j <= grid_rate; ++j)
      consider(tau, lam_lo + (lam_hi - lam_lo) * j / grid_rate);
  }
  // one local refinement pass around the grid minimum (cell-sized window,
  // 16x finer) to cut down false "holds" between grid lines
  const double dtau = (tau_hi - tau_lo) / grid_migration;
  const double dlam = (lam_hi - lam_lo) / grid_rate;
  const double t0 = std::max(tau_lo, cert.worst_migration_time - dtau);
  const double t1 = std::min(tau_hi, cert.worst_migration_time + dtau);
  const double l0 = std::max(lam_lo, cert.worst_attack_rate - dlam);
  const double l1 = std::min(lam_hi, cert.worst_attack_rate + dlam);
  for (int i = 0; i <= 32; ++i)
    for (int j = 0; j <= 32; ++j)
      consider(t0 + (t1 - t0) * i / 32, l0 + (l1 - l0) * j / 32);
  cert.holds = cert.worst_margin > 0.0;  // strict: exactly zero does not hold
  return cert;
}

SufficientConditions sufficient_existence_conditions(const Game& game) {
  SufficientConditions out;
  const double cd = game.migration_cost();
  if (cd > 0.0) {
    out.rate_floor = game.min_attack_rate() >= 1.0 / cd;
    out.short_horizon = game.horizon() <= 5.0 * cd;
  }
  return out;
}

GeneralConcavityReport general_concavity_report(const Game& game, int grid) {
  grid = std::max(grid, 4);
  GeneralConcavityReport rep;
  const double tau_lo = game.min_migration_time();
  const double tau_hi = game.horizon();
  const double lam_lo = std::max(game.min_attack_rate(), 1e-3);
  const double lam_hi = game.max_attack_rate();
  const double h_lam = (lam_hi - lam_lo) / (8.0 * grid);
  const double h_tau = (tau_hi - tau_lo) / (8.0 * grid);
  int concave_bad = 0, convex_bad = 0, points = 0;
  for (int i = 1; i < grid; ++i) {
    // second difference of pdf(t; rate) in the rate, at interior rate nodes
    const double lambda = lam_lo + (lam_hi - lam_lo) * i / grid;
    for (int j = 0; j <= grid; ++j) {
      const double t = tau_hi * j / grid;
      const double d2 = (game.collocation().pdf(t, lambda + h_lam) -
                         2.0 * game.collocation().pdf(t, lambda) +
                         game.collocation().pdf(t, lambda - h_lam)) /
                        (h_lam * h_lam);
      ++points;
      if (d2 >= -1e-7) ++concave_bad;  // strict concavity wants d2 < 0
    }
  }
  for (int i = 1; i < grid; ++i) {
    // second difference of G(tau, t)/tau in tau, at interior time nodes
    const double tau = tau_lo + (tau_hi - tau_lo) * i / grid;
    for (int j = 0; j <= grid; ++j) {
      const double t = tau_hi * j / grid;
      auto ratio = [&](double td) { return game.reward().value(td, t) / td; };
      const double d2 =
          (ratio(tau + h_tau) - 2.0 * ratio(tau) + ratio(tau - h_tau)) /
          (h_tau * h_tau);
      ++points;
      if (d2 < -1e-7) ++convex_bad;  // convexity wants d2 >= 0
    }
  }
  rep.points = points;
  rep.concavity_violations = concave_bad;
  rep.convexity_violations = convex_bad;
  rep.collocation_concave_in_rate = concave_bad == 0;
  rep.reward_rate_convex = convex_bad == 0;
  rep.existence_guaranteed =
      rep.collocation_concave_in_rate && rep.reward_rate_convex;
  return rep;
}

const char* threshold_kind_name(ThresholdKind kind) {
  switch (kind) {
    case ThresholdKind::attacker_min_rate: return "attacker_min_rate";
    case ThresholdKind::defender_no_migrate: return "defender_no_migrate";
    case ThresholdKind::general_attacker: return "general_attacker";
    case ThresholdKind::general_defender: return "general_defender";
    case ThresholdKind::backoff: return "backoff";
  }
  return "unknown";
}

ThresholdReport attacker_cost_threshold(const Game& game, double migration_time) {
  const double tau = game.checked_migration_time(migration_time);
  ThresholdReport rep;
  rep.kind = ThresholdKind::attacker_min_rate;
  rep.applicable = game.closed_form();
  const double lam_min = game.min_attack_rate();
  const double alpha = game.reward().scale;
  if (lam_min == 0.0) {
    // the bound degenerates: no finite cost freezes a free-to-raise rate
    rep.threshold = std::numeric_limits<double>::infinity();
    rep.satisfied = false;
    return rep;
  }
  rep.threshold = alpha * detail::erlang2_cdf(game.max_attack_rate() * tau) /
                  (lam_min * lam_min);
  rep.satisfied = game.attack_cost() > rep.threshold;
  return rep;
}

ThresholdReport defender_cost_threshold(const Game& game, double attack_rate) {
  const double lambda = game.checked_attack_rate(attack_rate);
  ThresholdReport rep;
  rep.kind = ThresholdKind::defender_no_migrate;
  rep.applicable = game.closed_form();
  const double alpha = game.reward().scale;
  if (lambda == 0.0) {
    rep.threshold = 0.0;  // series limit of erlang2_cdf(x)/lambda as x -> 0
  } else {
    rep.threshold =
        alpha * detail::erlang2_cdf(lambda * game.horizon()) / lambda;
  }
  rep.satisfied = game.migration_cost() > rep.threshold;
  return rep;
}

std::pair<ThresholdReport, ThresholdReport> general_monotonicity_thresholds(
    const Game& game, double migration_time, double attack_rate) {
  const double tau = game.checked_migration_time(migration_time);
  const double lambda = game.checked_attack_rate(attack_rate);
  const double T = game.horizon();
  const RewardModel& rw = game.reward();
  const CollocationModel& cm = game.collocation();

  ThresholdReport att;
  att.kind = ThresholdKind::general_attacker;
  const double lam_min = game.min_attack_rate();
  if (lam_min == 0.0) {
    att.threshold = std::numeric_limits<double>::infinity();
    att.satisfied = false;
  } else {
    att.threshold = quad::integrate_or_throw(
        [&](double t) { return rw.value(tau, t) * cm.pdf_dlambda(t, lam_min); },
        0.0, tau);
    att.satisfied = game.attack_cost() > att.threshold;
  }

  ThresholdReport def;
  def.kind = ThresholdKind::general_defender;
  // d/dtau (G(tau,t)/tau) at tau = T: analytic for polynomial rewards,
  // backward difference (to stay inside the domain) otherwise
  std::function<double(double)> reward_rate_slope;
  if (rw.kind == RewardKind::polynomial) {
    reward_rate_slope = [&](double t) {
      const double d = T - t;
      if (d <= 0.0) return 0.0;
      double p = rw.scale;  // scale * d^(n-1)
      for (int i = 0; i + 1 < rw.exponent; ++i) p *= d;
      return p * ((rw.exponent - 1) * T + t) / (T * T);
    };
  } else {
    reward_rate_slope = [&](double t) {
      const double h = 1e-6 * std::max(1.0, T);
      return (rw.value(T, t) / T - rw.value(T - h, t) / (T - h)) / h;
    };
  }
  if (lambda == 0.0) {
    def.threshold = 0.0;  // degenerate rate: reward never accrues
  } else {
    def.threshold =
        T * T *
        quad::integrate_or_throw(
            [&](double t) { return reward_rate_slope(t) * cm.pdf(t, lambda); },
            0.0, T);
  }
  def.satisfied = game.migration_cost() > def.threshold;
  return {att, def};
}

BackoffCheck backoff_equilibrium_check(const Game& game, int grid) {
  if (game.min_attack_rate() != 0.0)
    throw RequiresZeroLambdaMin(
        "backoff_equilibrium_check needs min_attack_rate == 0");
  grid = std::max(grid, 2);
  const double T = game.horizon();
  const double ca = game.attack_cost();
  BackoffCheck out;
  out.worst_margin = std::numeric_limits<double>::infinity();
  for (int j = 1; j <= grid; ++j) {
    const double lambda = game.max_attack_rate() * j / grid;
    double expected_reward;
    if (game.closed_form()) {
      // E[alpha*(T - t)^+] = alpha*(T - (1 - e^{-xT})/lambda) for rate lambda
      expected_reward = game.reward().scale *
                        (T + std::expm1(-lambda * T) / lambda);
    } else {
      expected_reward = quad::integrate_or_throw(
          [&](double t) { return game.reward().value(T, t) *
                                 game.collocation().pdf(t, lambda); },
          0.0, T);
    }
    const double margin = lambda * ca - expected_reward;
    if (margin < out.worst_margin) {
      out.worst_margin = margin;
      out.worst_rate = lambda;
    }
  }
  out.is_equilibrium = out.worst_margin >= 0.0;
  return out;
}

}  // namespace mtd
