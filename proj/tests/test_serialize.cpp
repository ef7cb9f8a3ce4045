#include <doctest.h>

#include <cmath>
#include <string>

#include "mtd/nash.hpp"
#include "mtd/serialize.hpp"
#include "oracles.hpp"

TEST_CASE("format_double emits shortest round-trip decimals") {
  CHECK(mtd::format_double(0.1) == "0.1");
  CHECK(mtd::format_double(1.0) == "1");
  CHECK(mtd::format_double(-0.25) == "-0.25");
  CHECK(std::stod(mtd::format_double(1.0 / 3.0)) == 1.0 / 3.0);
  CHECK(std::stod(mtd::format_double(0.26424111765711535681)) ==
        0.26424111765711535681);
  CHECK(std::stod(mtd::format_double(1e-300)) == 1e-300);
}

TEST_CASE("payoff record round-trips through json") {
  const mtd::PayoffRecord rec{1.25, 0.6, 0.1875, -0.45, mtd::PayoffMethod::quadrature};
  const auto j = mtd::to_json(rec);
  const auto back = mtd::payoff_record_from_json(j);
  CHECK(back.migration_time == rec.migration_time);
  CHECK(back.attack_rate == rec.attack_rate);
  CHECK(back.attacker == rec.attacker);
  CHECK(back.defender == rec.defender);
  CHECK(back.method == rec.method);
  CHECK(j.at("method") == "quadrature");

  auto broken = j;
  broken["method"] = "psychic";
  CHECK_THROWS_AS(mtd::payoff_record_from_json(broken), std::invalid_argument);
  broken = j;
  broken.erase("defender");
  CHECK_THROWS_AS(mtd::payoff_record_from_json(broken), std::invalid_argument);
}

TEST_CASE("simulation report round-trips through json") {
  mtd::SimulationReport rep;
  rep.n_samples = 123456;
  rep.migration_time = 2.0;
  rep.attack_rate = 1.5;
  rep.mean_attacker = 0.25;
  rep.mean_defender = -0.5;
  rep.stderr_attacker = 1e-3;
  rep.stderr_defender = 2e-3;
  rep.empirical_collocation_prob = 0.95;
  rep.seed = 42;
  const auto back = mtd::simulation_report_from_json(mtd::to_json(rep));
  CHECK(back.n_samples == rep.n_samples);
  CHECK(back.seed == rep.seed);
  CHECK(back.mean_attacker == rep.mean_attacker);
  CHECK(back.stderr_defender == rep.stderr_defender);
  CHECK(back.empirical_collocation_prob == rep.empirical_collocation_prob);
}

TEST_CASE("threshold, certificate and backoff reports round-trip") {
  const auto game = oracle::linear_game(3.0, 3.0, 0.05, 0.5, 0.01, 1.0);
  const auto thr = mtd::attacker_cost_threshold(game, 0.1);
  const auto thr2 = mtd::threshold_report_from_json(mtd::to_json(thr));
  CHECK(thr2.kind == thr.kind);
  CHECK(thr2.threshold == thr.threshold);
  CHECK(thr2.satisfied == thr.satisfied);
  CHECK(thr2.applicable == thr.applicable);

  const auto cert = mtd::existence_certificate(game);
  const auto cert2 = mtd::existence_certificate_from_json(mtd::to_json(cert));
  CHECK(cert2.holds == cert.holds);
  CHECK(cert2.worst_margin == cert.worst_margin);
  CHECK(cert2.worst_migration_time == cert.worst_migration_time);
  CHECK(cert2.grid_migration == cert.grid_migration);

  const auto zero_floor = oracle::linear_game(1.0, 3.0, 2.0, 0.1, 0.01, 0.0);
  const auto bk = mtd::backoff_equilibrium_check(zero_floor);
  const auto bk2 = mtd::backoff_check_from_json(mtd::to_json(bk));
  CHECK(bk2.is_equilibrium == bk.is_equilibrium);
  CHECK(bk2.worst_rate == bk.worst_rate);
  CHECK(bk2.worst_margin == bk.worst_margin);
}

TEST_CASE("equilibrium report round-trips with its certificate") {
  const auto game = oracle::linear_game(1.5, 5.0, 0.5, 0.3);
  const auto report = mtd::find_equilibria(game);
  const auto j = mtd::to_json(report);
  CHECK(j.at("method") == "curve_intersection");
  CHECK(j.contains("certificate"));
  const auto back = mtd::equilibrium_report_from_json(j);
  REQUIRE(back.equilibria.size() == report.equilibria.size());
  CHECK(back.equilibria[0].migration_time == report.equilibria[0].migration_time);
  CHECK(back.equilibria[0].attack_rate == report.equilibria[0].attack_rate);
  CHECK(back.equilibria[0].defender_kind == report.equilibria[0].defender_kind);
  CHECK(back.equilibria[0].attacker_kind == report.equilibria[0].attacker_kind);
  CHECK(back.equilibria[0].epsilon == report.equilibria[0].epsilon);
  CHECK(back.certificate_available);
  CHECK(back.certificate.holds == report.certificate.holds);
  CHECK(back.certificate.worst_margin == report.certificate.worst_margin);
}

TEST_CASE("reaction curve csv shape") {
  const auto game = oracle::linear_game(3.0, 3.0, 0.0, 0.0);
  const auto curve = mtd::reaction_curve(game, mtd::Player::attacker, 5);
  const std::string csv = mtd::reaction_curve_csv(curve);
  const std::string header = "opponent_action,action,kind,residual\n";
  REQUIRE(csv.substr(0, header.size()) == header);
  int lines = 0;
  for (char ch : csv)
    if (ch == '\n') ++lines;
  CHECK(lines == 6);  // header + one line per sampled point
  CHECK(csv.find("upper_boundary") != std::string::npos);
}

TEST_CASE("region csv covers the rectangle row-major, endpoints included") {
  const auto game = oracle::linear_game(2.0, 3.0, 0.1, 0.3);
  const std::string csv = mtd::region_csv(game, 3, 4);
  const std::string header = "tau_d,lambda_a,margin\n";
  REQUIRE(csv.substr(0, header.size()) == header);

  // parse back the coordinate columns
  std::vector<double> taus, lambdas;
  std::size_t pos = header.size();
  while (pos < csv.size()) {
    const auto eol = csv.find('\n', pos);
    const std::string line = csv.substr(pos, eol - pos);
    const auto c1 = line.find(',');
    const auto c2 = line.find(',', c1 + 1);
    taus.push_back(std::stod(line.substr(0, c1)));
    lambdas.push_back(std::stod(line.substr(c1 + 1, c2 - c1 - 1)));
    pos = eol + 1;
  }
  REQUIRE(taus.size() == 12);  // 3 x 4 data rows
  // outer loop over migration times, inner over rates
  CHECK(taus.front() == 0.01);
  CHECK(taus.back() == 2.0);
  CHECK(lambdas[0] == 0.01);
  CHECK(lambdas[3] == 3.0);
  CHECK(taus[4] == doctest::Approx(1.005));  // second tau block
  CHECK(lambdas[4] == 0.01);                 // rate column restarts
}

TEST_CASE("region csv rejects degenerate grids and non-closed forms") {
  const auto game = oracle::linear_game(2.0, 3.0, 0.1, 0.3);
  CHECK_THROWS_AS(mtd::region_csv(game, 1, 4), std::invalid_argument);
  const auto poly = oracle::polynomial_game(2, 2.0, 3.0, 0.1, 0.3);
  CHECK_THROWS_AS(mtd::region_csv(poly, 4, 4), mtd::WrongInstantiation);
}
