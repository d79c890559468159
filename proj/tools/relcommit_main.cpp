#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "relcommit/errors.hpp"
#include "relcommit/harness/commands.hpp"

using namespace relcommit;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitViolation = 2;

struct CommonOutput {
  std::string out;
  std::string format = "json";
};

void add_output(CLI::App* cmd, CommonOutput& o) {
  cmd->add_option("--out", o.out, "Output file (default: stdout)");
  cmd->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Relativistic bit commitment experiments"};
  app.require_subcommand(1);

  // bounds
  auto* bounds = app.add_subcommand("bounds", "Binding parameter for each n");
  std::vector<std::size_t> bound_n{64, 128, 256, 512, 1024, 2048, 4096};
  CommonOutput bounds_out;
  bounds->add_option("--n", bound_n, "Number of checked positions (repeatable)");
  add_output(bounds, bounds_out);

  // simulate
  auto* simulate = app.add_subcommand("simulate", "Run seeded protocol trials");
  std::string config_path, protocol = "kent", split, command, attack, transcript_log;
  std::size_t sim_n = 8;
  std::uint64_t sim_trials = 1000, sim_seed = 0;
  double sim_theta = 0.0;
  int sim_bit = 0;
  unsigned sim_threads = 1;
  CommonOutput sim_out;
  simulate->add_option("--config", config_path, "JSON experiment config");
  auto* o_protocol = simulate->add_option("--protocol", protocol, "secret_sharing, local_command or kent");
  auto* o_split = simulate->add_option("--split", split, "alpha or beta (default: the protocol's split)");
  auto* o_command = simulate->add_option("--command", command, "local or global");
  auto* o_n = simulate->add_option("--n", sim_n, "Checked positions for kent");
  auto* o_trials = simulate->add_option("--trials", sim_trials, "Number of trials");
  auto* o_seed = simulate->add_option("--seed", sim_seed, "Root seed (required without --config)");
  auto* o_bit = simulate->add_option("--bit", sim_bit, "Committed bit for honest runs");
  auto* o_attack = simulate->add_option("--attack", attack, "intermediate-basis, coin-flip, honest, honest-bob-guessing-brian");
  auto* o_theta = simulate->add_option("--theta", sim_theta, "Measurement angle for intermediate-basis");
  auto* o_threads = simulate->add_option("--threads", sim_threads, "Worker threads");
  auto* o_log = simulate->add_option("--transcript-log", transcript_log, "Write one JSON transcript per line");
  add_output(simulate, sim_out);

  // attack
  auto* attack_cmd = app.add_subcommand("attack", "Evaluate cheating strategies against the bound");
  AttackRequest request;
  std::string attack_command = "global";
  CommonOutput attack_out;
  attack_cmd->add_option("--attack", request.attack, "all, a strategy name, or classical-global");
  attack_cmd->add_option("--n", request.n, "Checked positions");
  attack_cmd->add_option("--theta", request.theta, "Measurement angle for intermediate-basis");
  attack_cmd->add_option("--bit", request.bit, "Bit for the honest baseline");
  attack_cmd->add_option("--trials", request.trials, "Monte-Carlo trials (0: analytic only)");
  attack_cmd->add_option("--seed", request.seed, "Root seed");
  attack_cmd->add_option("--threads", request.threads, "Worker threads");
  attack_cmd->add_option("--command", attack_command, "local or global");
  add_output(attack_cmd, attack_out);

  // nosig-check
  auto* nosig = app.add_subcommand("nosig-check", "Check a joint outcome table file");
  std::string table_path;
  CommonOutput nosig_out;
  nosig->add_option("path", table_path, "Table in JSON or CSV")->required();
  add_output(nosig, nosig_out);

  // composability-demo
  auto* compose = app.add_subcommand("composability-demo", "Per-bit binding versus string acceptance sums");
  std::vector<std::size_t> compose_n{1, 2, 4, 8, 10, 16, 20};
  CommonOutput compose_out;
  compose->add_option("--n", compose_n, "String lengths (repeatable, at most 20)");
  add_output(compose, compose_out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitError;
  }

  try {
    if (*bounds) {
      write_output(render_bounds(cmd_bounds(bound_n), parse_format(bounds_out.format)), bounds_out.out);
      return kExitOk;
    }
    if (*simulate) {
      ExperimentConfig config;
      if (!config_path.empty()) {
        config = load_config(config_path);
      } else if (!o_seed->count()) {
        throw InputError("--seed is required unless --config supplies one");
      }
      if (o_protocol->count() || config_path.empty()) {
        config.protocol = parse_protocol(protocol);
        config.split.kind = required_split(config.protocol);
        if (config.protocol == ProtocolKind::LocalCommand) config.split.command = CommandModel::Local;
      }
      if (o_split->count()) config.split.kind = parse_split(split);
      if (o_command->count()) config.split.command = parse_command(command);
      if (o_n->count()) config.n = sim_n;
      if (o_trials->count() || config_path.empty()) config.trials = sim_trials;
      if (o_seed->count()) config.seed = sim_seed;
      if (o_bit->count()) config.bit = sim_bit;
      if (o_attack->count()) config.attack = AttackSpec{attack, sim_theta, sim_bit};
      if (o_theta->count() && config.attack) config.attack->theta = sim_theta;
      if (o_threads->count()) config.threads = sim_threads;
      if (o_log->count()) config.transcript_log = transcript_log;
      if (!sim_out.out.empty()) config.out = sim_out.out;
      if (simulate->get_option("--format")->count()) config.format = parse_format(sim_out.format);
      validate_config(config);
      const auto summary = cmd_simulate(config);
      write_output(render_summary(summary, config.format), config.out);
      std::fprintf(stderr, "wall time: %.3f s\n", summary.wall_seconds);
      return kExitOk;
    }
    if (*attack_cmd) {
      request.command = parse_command(attack_command);
      const auto reports = cmd_attack(request);
      write_output(render_attacks(reports, parse_format(attack_out.format)), attack_out.out);
      for (const auto& r : reports) {
        if (attack_violates_bound(r)) {
          std::cerr << "bound violated by " << r.name << "\n";
          return kExitViolation;
        }
      }
      return kExitOk;
    }
    if (*nosig) {
      const auto report = cmd_nosig_check(table_path);
      write_output(render_nosig(report, parse_format(nosig_out.format)), nosig_out.out);
      return report.ok() ? kExitOk : kExitViolation;
    }
    if (*compose) {
      write_output(render_composability(compose_n, parse_format(compose_out.format)), compose_out.out);
      return kExitOk;
    }
  } catch (const ValidationFailure& e) {
    std::cerr << "validation failed: " << e.what() << "\n";
    return kExitViolation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
