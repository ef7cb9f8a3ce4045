// Command-line front end: load a game config, run one analysis verb, emit
// CSV/JSON for external tooling.
//
// Exit codes: 0 success; 1 usage/config/validation errors; 2 numeric failure
// (non-convergent quadrature, or no equilibrium under --require-ne).

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mtd/best_response.hpp"
#include "mtd/equilibrium.hpp"
#include "mtd/game.hpp"
#include "mtd/montecarlo.hpp"
#include "mtd/nash.hpp"
#include "mtd/payoff.hpp"
#include "mtd/serialize.hpp"

namespace {

// Write-to-temp-then-rename keeps partially written files from ever appearing
// under the target name.  Empty path means stdout.
void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::fputs(content.c_str(), stdout);
    return;
  }
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp(target);
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::invalid_argument("cannot open output file " + tmp.string());
    out << content;
    if (!out) throw std::invalid_argument("failed writing " + tmp.string());
  }
  fs::rename(tmp, target);
}

std::pair<int, int> parse_grid(const std::string& spec) {
  const auto x = spec.find('x');
  if (x == std::string::npos || x == 0 || x + 1 == spec.size())
    throw std::invalid_argument("--grid expects NxM, got " + spec);
  const int rows = std::stoi(spec.substr(0, x));
  const int cols = std::stoi(spec.substr(x + 1));
  if (rows < 2 || cols < 2)
    throw std::invalid_argument("--grid needs at least 2x2, got " + spec);
  return {rows, cols};
}

// Cost rows for the table verb: one "C_d,C_a" pair per line, optional header.
std::vector<std::pair<double, double>> load_cost_rows(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open rows file " + path);
  std::vector<std::pair<double, double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos)
      throw std::invalid_argument("rows file: expected C_d,C_a in line: " + line);
    try {
      rows.emplace_back(std::stod(line.substr(0, comma)),
                        std::stod(line.substr(comma + 1)));
    } catch (const std::exception&) {
      if (rows.empty() && line.find_first_of("0123456789") == std::string::npos)
        continue;  // header line
      throw std::invalid_argument("rows file: bad number in line: " + line);
    }
  }
  if (rows.empty()) throw std::invalid_argument("rows file has no cost rows");
  return rows;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"migration timing game: payoffs, best responses, equilibria"};
  app.require_subcommand(1);

  std::string config_path, out_path, rows_path;
  std::string player = "attacker", grid_spec = "64x64", mode = "analytic";
  double tau = -1.0, lambda = -1.0;
  std::uint64_t samples = 1000000, seed = 1;
  int threads = 0, points = 101;
  bool require_ne = false;

  auto add_common = [&](CLI::App* cmd, bool out_default_stdout = true) {
    cmd->add_option("--config", config_path, "game config JSON file")->required();
    cmd->add_option("--out", out_path,
                    out_default_stdout ? "output file (default: stdout)"
                                       : "output file")->capture_default_str();
    return cmd;
  };

  CLI::App* payoff_cmd =
      add_common(app.add_subcommand("payoff", "expected payoffs at one strategy pair"));
  payoff_cmd->add_option("--tau", tau, "migration time")->required();
  payoff_cmd->add_option("--lambda", lambda, "attack rate")->required();

  CLI::App* br_cmd = add_common(
      app.add_subcommand("br-curve", "sample one player's reaction curve (CSV)"));
  br_cmd->add_option("--player", player, "attacker|defender")
      ->check(CLI::IsMember({"attacker", "defender"}));
  br_cmd->add_option("--points", points, "curve sample count")
      ->check(CLI::Range(2, 1000000));

  CLI::App* region_cmd = add_common(app.add_subcommand(
      "region", "concavity-margin map over the action rectangle (CSV)"));
  region_cmd->add_option("--grid", grid_spec, "resolution NxM");

  CLI::App* thresholds_cmd = add_common(app.add_subcommand(
      "thresholds", "cost thresholds, certificate and back-off check (JSON)"));
  thresholds_cmd->add_option("--tau", tau, "migration time (default: horizon)");
  thresholds_cmd->add_option("--lambda", lambda, "attack rate (default: max rate)");

  CLI::App* solve_cmd = add_common(
      app.add_subcommand("solve", "find pure-strategy equilibria (JSON)"));
  solve_cmd->add_flag("--require-ne", require_ne,
                      "exit 2 when no equilibrium survives verification");

  CLI::App* simulate_cmd = add_common(app.add_subcommand(
      "simulate", "Monte-Carlo payoff estimate at one strategy pair (JSON)"));
  simulate_cmd->add_option("--tau", tau, "migration time")->required();
  simulate_cmd->add_option("--lambda", lambda, "attack rate")->required();
  simulate_cmd->add_option("--samples", samples, "sample count")->capture_default_str();
  simulate_cmd->add_option("--seed", seed, "RNG seed")->capture_default_str();
  simulate_cmd->add_option("--threads", threads, "worker cap (0 = hardware)");

  CLI::App* table_cmd = add_common(app.add_subcommand(
      "table", "strategy comparison table for a list of cost pairs (CSV)"));
  table_cmd->add_option("--rows", rows_path, "CSV of C_d,C_a pairs")->required();
  table_cmd->add_option("--mode", mode, "analytic|simulated")
      ->check(CLI::IsMember({"analytic", "simulated"}));
  table_cmd->add_option("--samples", samples, "samples per cell (simulated mode)");
  table_cmd->add_option("--seed", seed, "RNG seed (simulated mode)");
  table_cmd->add_option("--threads", threads, "worker cap (0 = hardware)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // --help and friends exit 0; genuine grammar errors map onto exit 1
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    const mtd::Game game = mtd::validate_config(mtd::load_config_file(config_path));

    if (payoff_cmd->parsed()) {
      const mtd::PayoffPair u = mtd::expected_payoffs(game, tau, lambda);
      const mtd::PayoffRecord record{tau, lambda, u.attacker, u.defender, u.method};
      write_output(out_path, mtd::to_json(record).dump(2) + "\n");
    } else if (br_cmd->parsed()) {
      const mtd::Player who =
          player == "attacker" ? mtd::Player::attacker : mtd::Player::defender;
      write_output(out_path,
                   mtd::reaction_curve_csv(mtd::reaction_curve(game, who, points)));
    } else if (region_cmd->parsed()) {
      const auto [n_tau, n_lambda] = parse_grid(grid_spec);
      write_output(out_path, mtd::region_csv(game, n_tau, n_lambda));
    } else if (thresholds_cmd->parsed()) {
      const double at_tau = tau >= 0.0 ? tau : game.horizon();
      const double at_lambda = lambda >= 0.0 ? lambda : game.max_attack_rate();
      nlohmann::json j;
      j["attacker_min_rate"] = mtd::to_json(mtd::attacker_cost_threshold(game, at_tau));
      j["defender_no_migrate"] =
          mtd::to_json(mtd::defender_cost_threshold(game, at_lambda));
      const auto [general_att, general_def] =
          mtd::general_monotonicity_thresholds(game, at_tau, at_lambda);
      j["general_attacker"] = mtd::to_json(general_att);
      j["general_defender"] = mtd::to_json(general_def);
      if (game.min_attack_rate() == 0.0)
        j["backoff"] = mtd::to_json(mtd::backoff_equilibrium_check(game));
      if (game.closed_form()) {
        j["certificate"] = mtd::to_json(mtd::existence_certificate(game));
        const mtd::SufficientConditions sc = mtd::sufficient_existence_conditions(game);
        j["sufficient_conditions"] = {{"rate_floor", sc.rate_floor},
                                      {"short_horizon", sc.short_horizon}};
      }
      write_output(out_path, j.dump(2) + "\n");
    } else if (solve_cmd->parsed()) {
      mtd::SolveOptions opts;
      opts.require_existence = require_ne;
      write_output(out_path,
                   mtd::to_json(mtd::find_equilibria(game, opts)).dump(2) + "\n");
    } else if (simulate_cmd->parsed()) {
      const mtd::SimulationReport rep =
          mtd::simulate_strategy_pair(game, tau, lambda, samples, seed, threads);
      write_output(out_path, mtd::to_json(rep).dump(2) + "\n");
    } else if (table_cmd->parsed()) {
      const auto rows = load_cost_rows(rows_path);
      const mtd::TableMode table_mode = mode == "analytic"
                                            ? mtd::TableMode::analytic
                                            : mtd::TableMode::simulated;
      write_output(out_path,
                   mtd::strategy_table_csv(mtd::strategy_table(
                       game, rows, table_mode, samples, seed, threads)));
    }
    return 0;
  } catch (const mtd::QuadratureNotConverged& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return 2;
  } catch (const mtd::NoEquilibriumFound& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
