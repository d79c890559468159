#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

#include "relcommit/adversaries/polytope.hpp"
#include "relcommit/errors.hpp"
#include "relcommit/harness/commands.hpp"

using namespace relcommit;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "relcommit_harness_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

ExperimentConfig kent_config(std::size_t n, std::uint64_t trials, std::uint64_t seed) {
  ExperimentConfig c;
  c.protocol = ProtocolKind::Kent;
  c.n = n;
  c.trials = trials;
  c.seed = seed;
  return c;
}

}  // namespace

TEST_CASE("doubles round-trip through text") {
  SplitRng rng(8);
  for (int i = 0; i < 10000; ++i) {
    const double v = std::ldexp(rng.uniform() - 0.5, static_cast<int>(rng.below(200)) - 100);
    REQUIRE(parse_double(format_double(v)) == v);
  }
  CHECK(parse_double(format_double(0.1)) == 0.1);
  CHECK_THROWS_AS(parse_double("0.5x"), InputError);
  CHECK_THROWS_AS(parse_double(""), InputError);
}

TEST_CASE("CSV parsing") {
  const auto csv = parse_csv("# comment\na,b\n1,2\n\n3,4\r\n");
  CHECK(csv.header == std::vector<std::string>{"a", "b"});
  REQUIRE(csv.rows.size() == 2);
  CHECK(csv.row_lines == std::vector<std::size_t>{3, 5});
  CHECK(write_csv(csv) == "a,b\n1,2\n3,4\n");
  try {
    parse_csv("a,b\n1,2\n1,2,3\n");
    FAIL("expected an error");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_csv("\n# only comments\n"), InputError);
}

TEST_CASE("bounds command") {
  const auto rows = cmd_bounds({64, 128, 256});
  REQUIRE(rows.size() == 3);
  CHECK(rows[1].epsilon < rows[0].epsilon);
  CHECK(rows[2].epsilon < rows[1].epsilon);
  CHECK(cmd_bounds({1}).front().epsilon >= 1.0);
  const auto twice = cmd_bounds({100, 100});
  CHECK(render_bounds({twice[0]}, OutputFormat::Csv) == render_bounds({twice[1]}, OutputFormat::Csv));
  CHECK_THROWS_AS(cmd_bounds({}), InputError);
  CHECK_THROWS_AS(cmd_bounds({0}), InputError);

  const auto back = bounds_from_csv(parse_csv(render_bounds(rows, OutputFormat::Csv)));
  REQUIRE(back.size() == rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(back[i].n == rows[i].n);
    CHECK(back[i].epsilon == rows[i].epsilon);
    CHECK(back[i].delta_star == rows[i].delta_star);
    CHECK(back[i].term_entropy == rows[i].term_entropy);
    CHECK(back[i].term_hoeffding == rows[i].term_hoeffding);
    const auto j = bound_report_from_json(Json::parse(to_json(rows[i]).dump()));
    CHECK(j.epsilon == rows[i].epsilon);
    CHECK(j.term_hoeffding == rows[i].term_hoeffding);
  }
}

TEST_CASE("tables round-trip and are checked") {
  SplitRng rng(4);
  for (int i = 0; i < 200; ++i) {
    const auto t = sample_no_signalling_table(rng);
    CHECK(table_from_csv(parse_csv(write_csv(table_csv(t)))).entries() == t.entries());
    CHECK(table_from_json(Json::parse(to_json(t).dump())).entries() == t.entries());
  }

  // Honest fixture generated by simulation.
  const auto honest = sample_attack_table(honest_strategy(0), 4, 1, 0, 500).table();
  const auto path = scratch("honest.csv");
  write_output(write_csv(table_csv(honest)), path.string());
  const auto report = cmd_nosig_check(path.string());
  CHECK(report.ok());
  CHECK(render_nosig(report, OutputFormat::Json).find("\"ok\": true") != std::string::npos);

  // Hand-edited signalling table: Bob's verdict flips with b'.
  auto csv = table_csv(honest);
  for (auto& row : csv.rows) {
    if (row[0] == "0" && row[1] == "1") {
      if (row[2] == "accept" && row[3] == "reject") row[4] = "0";
      if (row[2] == "reject" && row[3] == "reject") row[4] = "1";
    }
  }
  const auto edited = cmd_nosig_check_text(write_csv(csv));
  CHECK_FALSE(edited.ok());
  CHECK_FALSE(edited.violations.empty());
  CHECK_FALSE(edited.opening_sum);

  const auto full = cmd_nosig_check_text(to_json(deterministic_table({true, true}, {true, true})).dump());
  REQUIRE(full.opening_sum);
  CHECK(full.opening_sum->lhs == full.opening_sum->rhs);
  CHECK(render_nosig(full, OutputFormat::Json).find("\"equality\": true") != std::string::npos);
  CHECK(render_nosig(full, OutputFormat::Csv).find(",1,1\n") != std::string::npos);

  try {
    cmd_nosig_check_text("b,b_prime,bob,brian,probability\n0,0,accept,accept,1\n0,0,maybe,accept,0\n");
    FAIL("expected an error");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
  try {
    cmd_nosig_check_text("{\n  \"schema_version\": 1,\n  \"entries\": [\n  oops\n]}");
    FAIL("expected an error");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("line 4") != std::string::npos);
  }
  CHECK_THROWS_AS(cmd_nosig_check_text("b,b_prime,bob,brian,probability\n0,0,accept,accept,1\n"), InputError);
  CHECK_THROWS_AS(cmd_nosig_check(scratch("missing.csv").string()), InputError);
}

TEST_CASE("attack reports round-trip") {
  auto r = evaluate_attack(intermediate_basis_strategy(std::numbers::pi / 8), 4, 500, 3);
  const auto back = attack_report_from_json(Json::parse(to_json(r).dump()));
  CHECK(back.name == r.name);
  CHECK(back.p0 == r.p0);
  CHECK(back.p1 == r.p1);
  CHECK(back.alpha == r.alpha);
  CHECK(back.bound == r.bound);
  CHECK(back.satisfied == r.satisfied);
  REQUIRE(back.sampled);
  CHECK(back.sampled->p0 == r.sampled->p0);
  CHECK(back.sampled->se_alpha == r.sampled->se_alpha);

  const auto reports = cmd_attack(AttackRequest{"all", 16, 0.0, 0, 0, 1, 1, CommandModel::Global});
  CHECK(reports.size() == standard_attacks().size());
  for (const auto& rep : reports) CHECK_FALSE(attack_violates_bound(rep));
  const auto classical = cmd_attack(AttackRequest{"classical-global", 1, 0.0, 0, 10, 1, 1, CommandModel::Global});
  REQUIRE(classical.size() == 1);
  CHECK(classical.front().p0 + classical.front().p1 == 2.0);
  CHECK_FALSE(attack_violates_bound(classical.front()));
  CHECK_THROWS_AS(cmd_attack(AttackRequest{"nonsense", 16, 0.0, 0, 0, 1, 1, CommandModel::Global}), InputError);
  CHECK_THROWS_AS(cmd_attack(AttackRequest{"all", 16, 0.0, 0, 0, 1, 1, CommandModel::Local}), InputError);
}

TEST_CASE("experiment configs") {
  const auto c = config_from_json(Json::parse(R"({"protocol": "kent", "n": 4, "trials": 10, "seed": 9,
      "attack": {"kind": "intermediate-basis", "theta": 0.3}, "output": {"format": "csv"}})"));
  CHECK(c.protocol == ProtocolKind::Kent);
  CHECK(c.split.kind == SplitKind::Beta);
  CHECK(c.n == 4);
  CHECK(c.seed == 9);
  REQUIRE(c.attack);
  CHECK(c.attack->theta == 0.3);
  CHECK(c.format == OutputFormat::Csv);

  auto again = config_from_json(to_json(c));
  again.format = c.format;
  CHECK(again == c);

  const auto local = config_from_json(Json::parse(R"({"protocol": "local_command", "seed": 1})"));
  CHECK(local.split.command == CommandModel::Local);
  const auto sharing = config_from_json(Json::parse(R"({"protocol": "secret_sharing", "seed": 1})"));
  CHECK(sharing.split.kind == SplitKind::Alpha);

  CHECK_THROWS_AS(config_from_json(Json::parse(R"({"protocol": "kent"})")), InputError);
  CHECK_THROWS_AS(config_from_json(Json::parse(R"({"seed": 1, "colour": "red"})")), InputError);
  CHECK_THROWS_AS(config_from_json(Json::parse(R"({"seed": 1, "split": "alpha"})")), InputError);
  CHECK_THROWS_AS(config_from_json(Json::parse(R"({"seed": 1, "trials": 0})")), InputError);
  CHECK_THROWS_AS(config_from_json(Json::parse(R"({"seed": 1, "n": "eight"})")), InputError);
  CHECK_THROWS_AS(config_from_json(Json::parse(R"({"seed": 1, "command": "local",
      "attack": {"kind": "intermediate-basis"}})")),
                  InputError);
  CHECK_THROWS_AS(config_from_json(Json::parse(R"({"seed": 1, "protocol": "secret_sharing",
      "attack": {"kind": "coin-flip"}})")),
                  InputError);

  const auto path = scratch("config.json");
  write_output(R"({"protocol": "kent", "n": 2, "seed": 5})", path.string());
  CHECK(load_config(path.string()).n == 2);
  write_output("{ not json", path.string());
  CHECK_THROWS_AS(load_config(path.string()), InputError);
}

TEST_CASE("honest simulation accepts every trial") {
  const auto kent = cmd_simulate(kent_config(8, 10000, 1));
  CHECK(kent.accept_count == 10000);
  CHECK(kent.accept_rate == 1.0);
  CHECK(kent.se_accept_rate == 0.0);

  ExperimentConfig local;
  local.protocol = ProtocolKind::LocalCommand;
  local.split = {SplitKind::Beta, CommandModel::Local};
  local.trials = 3000;
  local.seed = 2;
  local.bit = 1;
  CHECK(cmd_simulate(local).accept_rate == 1.0);

  ExperimentConfig sharing;
  sharing.protocol = ProtocolKind::SecretSharing;
  sharing.split = {SplitKind::Alpha, CommandModel::Global};
  sharing.trials = 3000;
  sharing.seed = 3;
  CHECK(cmd_simulate(sharing).accept_rate == 1.0);
}

TEST_CASE("attacked simulation tracks the analytic value") {
  auto c = kent_config(16, 40000, 12);
  c.attack = AttackSpec{"intermediate-basis", std::numbers::pi / 8, 0};
  c.threads = 4;
  const auto s = cmd_simulate(c);
  REQUIRE(s.attack);
  REQUIRE(s.attack->sampled);
  const auto& e = *s.attack->sampled;
  const double sigma = std::hypot(e.se_p0, e.se_p1);
  CHECK(std::abs((e.p0 + e.p1) - (s.attack->p0 + s.attack->p1)) <= 3 * sigma);
  CHECK(static_cast<double>(s.accept_count) == s.accept_rate * static_cast<double>(c.trials));
  CHECK(s.accept_rate == e.p0);
}

TEST_CASE("outputs are independent of threads and repeat byte for byte") {
  for (bool attacked : {false, true}) {
    auto c = kent_config(4, 5000, 77);
    if (attacked) c.attack = AttackSpec{"coin-flip", 0.0, 0};
    for (auto format : {OutputFormat::Csv, OutputFormat::Json}) {
      c.threads = 1;
      const auto one = render_summary(cmd_simulate(c), format);
      c.threads = 4;
      const auto four = render_summary(cmd_simulate(c), format);
      CHECK(one == four);
      CHECK(render_summary(cmd_simulate(c), format) == four);
    }
  }

  auto c = kent_config(2, 50, 5);
  c.transcript_log = scratch("log_a.jsonl").string();
  (void)cmd_simulate(c);
  c.transcript_log = scratch("log_b.jsonl").string();
  c.threads = 3;
  (void)cmd_simulate(c);
  const auto a = slurp(scratch("log_a.jsonl"));
  CHECK(a == slurp(scratch("log_b.jsonl")));
  CHECK(std::count(a.begin(), a.end(), '\n') == 50);
  const auto first = Json::parse(a.substr(0, a.find('\n')));
  CHECK(first.at("trial") == 0);
  CHECK(first.at("flag") == "accept");
  CHECK(first.at("protocol") == "kent");

  CHECK(trial_seed(5, 3) == trial_seed(5, 3));
  CHECK(trial_seed(5, 3) != trial_seed(5, 4));
}

TEST_CASE("composability rendering") {
  const auto csv = parse_csv(render_composability({1, 10, 20}, OutputFormat::Csv));
  REQUIRE(csv.rows.size() == 3);
  CHECK(csv.rows[1][2] == "0");
  CHECK(parse_double(csv.rows[1][3]) == 512.0);
  CHECK(parse_double(csv.rows[2][3]) == 524288.0);
  CHECK_THROWS_AS(render_composability({21}, OutputFormat::Json), InputError);
}
