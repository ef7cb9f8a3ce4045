#pragma once

// Monte-Carlo estimation of realized payoffs and the strategy-comparison
// table.
//
// Sampling is counter-based: sample i of a run with seed s uses only (s, i),
// so any partition of the index range across threads reproduces the same
// stream.  Per-block partial sums are merged in block order, which makes
// every report bit-identical for a fixed seed regardless of thread count.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "mtd/game.hpp"

namespace mtd {

namespace rng {

// splitmix64 finalizer over the counter seed + (index+1)*golden_gamma.
std::uint64_t mix(std::uint64_t seed, std::uint64_t index);

// Uniform draw in the open interval (0, 1): (mix >> 11 + 0.5) * 2^-53.
double uniform01(std::uint64_t seed, std::uint64_t index);

}  // namespace rng

// Inverse-CDF sample of the collocation time; exponential kind uses
// -ln(u)/rate.  Rate 0 returns +infinity (collocation never happens).
// Custom models are inverted by bisection on the cdf.
double collocation_time_from_uniform(const CollocationModel& model,
                                     double attack_rate, double u);
double sample_collocation_time(const CollocationModel& model, double attack_rate,
                               std::uint64_t seed, std::uint64_t index);

struct SimulationReport {
  std::uint64_t n_samples = 0;
  double migration_time = 0.0;
  double attack_rate = 0.0;
  double mean_attacker = 0.0;
  double mean_defender = 0.0;
  double stderr_attacker = 0.0;  // sample sd / sqrt(n)
  double stderr_defender = 0.0;
  double empirical_collocation_prob = 0.0;
  std::uint64_t seed = 0;
};

// Estimates both players' expected payoffs at a fixed strategy pair from n
// independent rounds.  threads = 0 picks the hardware default; the result is
// independent of the thread count.
SimulationReport simulate_strategy_pair(const Game& game, double migration_time,
                                        double attack_rate, std::uint64_t n,
                                        std::uint64_t seed, int threads = 0);

struct PayoffCell {
  double defender = 0.0;
  double attacker = 0.0;
};

// One cost pair compared across five strategy profiles.  The non-equilibrium
// columns pin one player's action and hold the other at the equilibrium:
//   no_defense:        (horizon, equilibrium rate)
//   no_attack:         (equilibrium time, rate floor)
//   aggressive_attack: (equilibrium time, max rate)
//   worst_case:        (horizon, max rate)
struct StrategyTableRow {
  double migration_cost = 0.0;
  double attack_cost = 0.0;
  double ne_migration_time = 0.0;
  double ne_attack_rate = 0.0;
  PayoffCell ne, no_defense, no_attack, aggressive_attack, worst_case;
};

enum class TableMode { analytic, simulated };

// Re-solves the game per cost row (all other config fields shared) and fills
// the five columns.  Simulated mode draws n samples per cell with a per-cell
// counter offset from `seed`; analytic mode ignores n and seed.
std::vector<StrategyTableRow> strategy_table(
    const Game& game, const std::vector<std::pair<double, double>>& cost_rows,
    TableMode mode = TableMode::analytic, std::uint64_t n = 1000000,
    std::uint64_t seed = 1, int threads = 0);

// CSV with the fixed header
// C_d,C_a,ne_ud,ne_ua,nodef_ud,nodef_ua,noatk_ud,noatk_ua,aggr_ud,aggr_ua,worst_ud,worst_ua
std::string strategy_table_csv(const std::vector<StrategyTableRow>& rows);

}  // namespace mtd
