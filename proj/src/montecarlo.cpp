#include "mtd/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "mtd/nash.hpp"
#include "mtd/payoff.hpp"
#include "mtd/serialize.hpp"

namespace mtd {

namespace rng {

std::uint64_t mix(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + (index + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double uniform01(std::uint64_t seed, std::uint64_t index) {
  // 53 high bits, centered in the cell: never exactly 0 or 1
  return (static_cast<double>(mix(seed, index) >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace rng

double collocation_time_from_uniform(const CollocationModel& model,
                                     double attack_rate, double u) {
  if (attack_rate < 0.0) throw NegativeInput("attack rate must be >= 0");
  if (!(u > 0.0) || !(u < 1.0))
    throw std::invalid_argument("uniform draw must lie in (0, 1)");
  if (attack_rate == 0.0) return std::numeric_limits<double>::infinity();
  if (model.kind == CollocationKind::exponential)
    return -std::log(u) / attack_rate;
  // generic inverse cdf by expanding bracket + bisection
  double hi = 1.0;
  while (model.cdf(hi, attack_rate) < u && hi < 1e12) hi *= 2.0;
  double lo = 0.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (model.cdf(mid, attack_rate) < u ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double sample_collocation_time(const CollocationModel& model, double attack_rate,
                               std::uint64_t seed, std::uint64_t index) {
  return collocation_time_from_uniform(model, attack_rate,
                                       rng::uniform01(seed, index));
}

namespace {

struct BlockSums {
  double sum_a = 0.0, sumsq_a = 0.0;
  double sum_d = 0.0, sumsq_d = 0.0;
  std::uint64_t collocated = 0;
};

constexpr std::uint64_t kBlock = 65536;

}  // namespace

SimulationReport simulate_strategy_pair(const Game& game, double migration_time,
                                        double attack_rate, std::uint64_t n,
                                        std::uint64_t seed, int threads) {
  const double tau = game.checked_migration_time(migration_time);
  const double lambda = game.checked_attack_rate(attack_rate);
  if (n == 0) throw std::invalid_argument("need at least one sample");

  const double ca = game.attack_cost();
  const double cd = game.migration_cost();
  const RewardModel& rw = game.reward();
  const CollocationModel& cm = game.collocation();

  const std::uint64_t n_blocks = (n + kBlock - 1) / kBlock;
  std::vector<BlockSums> blocks(n_blocks);
  std::atomic<std::uint64_t> next{0};

  auto worker = [&]() {
    for (;;) {
      const std::uint64_t b = next.fetch_add(1);
      if (b >= n_blocks) return;
      const std::uint64_t begin = b * kBlock;
      const std::uint64_t end = std::min(n, begin + kBlock);
      BlockSums s;
      for (std::uint64_t i = begin; i < end; ++i) {
        const double t = collocation_time_from_uniform(cm, lambda,
                                                       rng::uniform01(seed, i));
        double reward = 0.0;
        if (t < tau) {
          reward = rw.value(tau, t);
          ++s.collocated;
        }
        const double ua = (reward - lambda * ca) / tau;
        const double ud = (-reward - cd) / tau;
        s.sum_a += ua;
        s.sumsq_a += ua * ua;
        s.sum_d += ud;
        s.sumsq_d += ud * ud;
      }
      blocks[b] = s;
    }
  };

  int n_threads = threads > 0 ? threads
                              : static_cast<int>(std::thread::hardware_concurrency());
  n_threads = std::max(1, std::min<int>(n_threads, static_cast<int>(
                                                       std::min<std::uint64_t>(n_blocks, 64))));
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(n_threads));
    for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  // merge strictly in block order: determinism across thread counts
  BlockSums total;
  for (const BlockSums& s : blocks) {
    total.sum_a += s.sum_a;
    total.sumsq_a += s.sumsq_a;
    total.sum_d += s.sum_d;
    total.sumsq_d += s.sumsq_d;
    total.collocated += s.collocated;
  }

  SimulationReport rep;
  rep.n_samples = n;
  rep.migration_time = tau;
  rep.attack_rate = lambda;
  rep.seed = seed;
  const double dn = static_cast<double>(n);
  rep.mean_attacker = total.sum_a / dn;
  rep.mean_defender = total.sum_d / dn;
  if (n > 1) {
    const double var_a =
        std::max(0.0, (total.sumsq_a - dn * rep.mean_attacker * rep.mean_attacker) /
                          (dn - 1.0));
    const double var_d =
        std::max(0.0, (total.sumsq_d - dn * rep.mean_defender * rep.mean_defender) /
                          (dn - 1.0));
    rep.stderr_attacker = std::sqrt(var_a / dn);
    rep.stderr_defender = std::sqrt(var_d / dn);
  }
  rep.empirical_collocation_prob = static_cast<double>(total.collocated) / dn;
  return rep;
}

std::vector<StrategyTableRow> strategy_table(
    const Game& game, const std::vector<std::pair<double, double>>& cost_rows,
    TableMode mode, std::uint64_t n, std::uint64_t seed, int threads) {
  std::vector<StrategyTableRow> rows;
  rows.reserve(cost_rows.size());
  std::uint64_t cell_counter = 0;
  for (const auto& [cd, ca] : cost_rows) {
    GameConfig cfg = game.config();
    cfg.migration_cost = cd;
    cfg.attack_cost = ca;
    const Game row_game = validate_config(std::move(cfg));

    SolveOptions opts;
    opts.require_existence = true;  // a table row without an equilibrium is an error
    const EquilibriumReport ne = find_equilibria(row_game, opts);

    StrategyTableRow row;
    row.migration_cost = cd;
    row.attack_cost = ca;
    row.ne_migration_time = ne.equilibria.front().migration_time;
    row.ne_attack_rate = ne.equilibria.front().attack_rate;

    const double T = row_game.horizon();
    const double lam_lo = row_game.min_attack_rate();
    const double lam_hi = row_game.max_attack_rate();
    const std::pair<double, double> profiles[5] = {
        {row.ne_migration_time, row.ne_attack_rate},  // ne
        {T, row.ne_attack_rate},                      // no_defense
        {row.ne_migration_time, lam_lo},              // no_attack
        {row.ne_migration_time, lam_hi},              // aggressive_attack
        {T, lam_hi},                                  // worst_case
    };
    PayoffCell* cells[5] = {&row.ne, &row.no_defense, &row.no_attack,
                            &row.aggressive_attack, &row.worst_case};
    for (int c = 0; c < 5; ++c) {
      if (mode == TableMode::analytic) {
        const PayoffPair u =
            expected_payoffs(row_game, profiles[c].first, profiles[c].second);
        *cells[c] = {u.defender, u.attacker};
      } else {
        // distinct counter stream per cell, offset deterministically
        const SimulationReport rep = simulate_strategy_pair(
            row_game, profiles[c].first, profiles[c].second, n,
            seed + 0x51ED2701ULL * ++cell_counter, threads);
        *cells[c] = {rep.mean_defender, rep.mean_attacker};
      }
    }
    rows.push_back(row);
  }
  return rows;
}

std::string strategy_table_csv(const std::vector<StrategyTableRow>& rows) {
  std::string out =
      "C_d,C_a,ne_ud,ne_ua,nodef_ud,nodef_ua,noatk_ud,noatk_ua,aggr_ud,aggr_ua,"
      "worst_ud,worst_ua\n";
  for (const StrategyTableRow& r : rows) {
    const double vals[12] = {
        r.migration_cost,       r.attack_cost,
        r.ne.defender,          r.ne.attacker,
        r.no_defense.defender,  r.no_defense.attacker,
        r.no_attack.defender,   r.no_attack.attacker,
        r.aggressive_attack.defender, r.aggressive_attack.attacker,
        r.worst_case.defender,  r.worst_case.attacker,
    };
    for (int i = 0; i < 12; ++i) {
      if (i) out += ',';
      out += format_double(vals[i]);
    }
    out += '\n';
  }
  return out;
}

}  // namespace mtd
