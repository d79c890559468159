#include "relcommit/harness/commands.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "relcommit/adversaries/classical_attacks.hpp"
#include "relcommit/errors.hpp"
#include "relcommit/protocols/classical.hpp"
#include "relcommit/protocols/kent.hpp"

namespace relcommit {

namespace {

constexpr std::uint64_t kChunk = 2048;

// Chunk c covers trials [c * kChunk, ...). Chunks are claimed by whichever worker is free,
// but results land in their own slot, so the merge order never depends on scheduling.
template <class Part, class Fn>
std::vector<Part> run_chunks(std::uint64_t trials, unsigned threads, Fn fn) {
  const std::uint64_t chunks = (trials + kChunk - 1) / kChunk;
  std::vector<Part> parts(chunks);
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (std::uint64_t c = next++; c < chunks; c = next++) {
      try {
        const std::uint64_t first = c * kChunk;
        parts[c] = fn(first, std::min(kChunk, trials - first));
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next = chunks;
      }
    }
  };
  const auto workers = static_cast<unsigned>(std::min<std::uint64_t>(threads, std::max<std::uint64_t>(chunks, 1)));
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < workers; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
  return parts;
}

TableCounts parallel_counts(const AttackStrategy& strategy, std::size_t n, std::uint64_t seed, std::uint64_t trials,
                            unsigned threads) {
  const auto parts = run_chunks<TableCounts>(trials, threads, [&](std::uint64_t first, std::uint64_t count) {
    return sample_attack_table(strategy, n, seed, first, count);
  });
  TableCounts total;
  for (const auto& p : parts) total.merge(p);
  return total;
}

struct HonestPart {
  std::uint64_t accepts = 0;
  std::vector<Violation> violations;
  std::vector<std::string> log;
};

ProtocolTranscript honest_trial(const ExperimentConfig& c, std::uint64_t seed) {
  switch (c.protocol) {
    case ProtocolKind::SecretSharing:
      return run_secret_sharing(c.bit, std::nullopt, seed).transcript;
    case ProtocolKind::LocalCommand:
      return run_local_command(honest_local_strategy(c.bit), c.bit, seed, c.split.command).transcript;
    case ProtocolKind::Kent: {
      HonestCommitter committer(c.bit);
      return run_kent(c.n, committer, std::nullopt, seed, {}, c.split.command).transcript;
    }
  }
  throw InputError("unknown protocol");
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

double bernoulli_se(double p, std::uint64_t trials) { return std::sqrt(p * (1.0 - p) / static_cast<double>(trials)); }

}  // namespace

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t k) { return SplitRng(seed).split(k).next_u64(); }

std::vector<BoundReport> cmd_bounds(const std::vector<std::size_t>& n_list) {
  if (n_list.empty()) throw InputError("bounds needs at least one n");
  std::vector<BoundReport> out;
  for (auto n : n_list) {
    if (n < 1) throw InputError("n must be at least 1");
    out.push_back(binding_epsilon(n));
  }
  return out;
}

std::string render_bounds(const std::vector<BoundReport>& reports, OutputFormat format) {
  if (format == OutputFormat::Csv) return write_csv(bounds_csv(reports));
  Json rows = Json::array();
  for (const auto& r : reports) rows.push_back(to_json(r));
  return dump(Json{{"schema_version", kSchemaVersion}, {"bounds", rows}});
}

RunSummary cmd_simulate(const ExperimentConfig& config) {
  validate_config(config);
  const auto start = std::chrono::steady_clock::now();
  RunSummary s;
  s.config = config;

  if (config.attack) {
    const auto strategy = strategy_from_spec(*config.attack, config.split.command);
    const auto counts = parallel_counts(strategy, config.n, config.seed, config.trials, config.threads);
    AttackReport report = evaluate_attack(strategy, config.n, 0, config.seed);
    attach_sampled(report, counts);
    s.accept_count = counts.cells[JointOutcomeTable::index(config.bit, config.bit, Flag::Accept, Flag::Accept)];
    s.attack = report;
  } else {
    const bool keep_log = !config.transcript_log.empty();
    const auto parts = run_chunks<HonestPart>(config.trials, config.threads, [&](std::uint64_t first, std::uint64_t count) {
      HonestPart part;
      for (std::uint64_t k = first; k < first + count; ++k) {
        const auto tr = honest_trial(config, trial_seed(config.seed, k));
        if (tr.accepted()) ++part.accepts;
        auto found = validate_transcript(tr, config.split);
        const auto geometric = validate_transcript_geometry(tr);
        found.insert(found.end(), geometric.begin(), geometric.end());
        for (auto& v : found) {
          v.reason = "trial " + std::to_string(k) + ": " + v.reason;
          part.violations.push_back(std::move(v));
        }
        if (keep_log) {
          Json line = to_json(tr);
          line["trial"] = k;
          part.log.push_back(line.dump());
        }
      }
      return part;
    });
    std::vector<Violation> violations;
    for (const auto& p : parts) {
      s.accept_count += p.accepts;
      violations.insert(violations.end(), p.violations.begin(), p.violations.end());
    }
    if (keep_log) {
      std::ofstream log(config.transcript_log, std::ios::binary);
      if (!log) throw InputError("cannot write transcript log '" + config.transcript_log + "'");
      for (const auto& p : parts)
        for (const auto& line : p.log) log << line << '\n';
    }
    if (!violations.empty()) {
      throw ValidationFailure(std::to_string(violations.size()) + " split-rule violations; first: " +
                                  violations.front().reason,
                              std::move(violations));
    }
  }
  s.accept_rate = static_cast<double>(s.accept_count) / static_cast<double>(config.trials);
  s.se_accept_rate = bernoulli_se(s.accept_rate, config.trials);
  s.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return s;
}

std::string render_summary(const RunSummary& s, OutputFormat format) {
  if (format == OutputFormat::Json) {
    Json j{{"schema_version", kSchemaVersion},
           {"config", to_json(s.config)},
           {"accept_count", s.accept_count},
           {"accept_rate", s.accept_rate},
           {"se_accept_rate", s.se_accept_rate}};
    j["attack"] = s.attack ? to_json(*s.attack) : Json(nullptr);
    return dump(j);
  }
  CsvTable csv;
  csv.header = {"schema_version", "protocol",    "split",    "command",       "n",           "trials",
                "seed",           "bit",         "attack",   "theta",         "accept_count", "accept_rate",
                "se_accept_rate", "p0",          "se_p0",    "p1",            "se_p1",       "alpha",
                "se_alpha",       "analytic_p0", "analytic_p1", "analytic_alpha", "bound"};
  const auto& c = s.config;
  std::vector<std::string> row{std::to_string(kSchemaVersion),
                               std::string(protocol_name(c.protocol)),
                               std::string(split_name(c.split.kind)),
                               std::string(command_name(c.split.command)),
                               std::to_string(c.n),
                               std::to_string(c.trials),
                               std::to_string(c.seed),
                               std::to_string(c.bit),
                               c.attack ? c.attack->kind : "",
                               c.attack ? format_double(c.attack->theta) : "",
                               std::to_string(s.accept_count),
                               format_double(s.accept_rate),
                               format_double(s.se_accept_rate)};
  if (s.attack && s.attack->sampled) {
    const auto& e = *s.attack->sampled;
    row.insert(row.end(), {format_double(e.p0), format_double(e.se_p0), format_double(e.p1), format_double(e.se_p1),
                           format_double(e.alpha), format_double(e.se_alpha), format_double(s.attack->p0),
                           format_double(s.attack->p1), format_double(s.attack->alpha), format_double(s.attack->bound)});
  } else {
    row.resize(csv.header.size());
  }
  csv.rows.push_back(std::move(row));
  return write_csv(csv);
}

std::vector<AttackReport> cmd_attack(const AttackRequest& request) {
  if (request.threads < 1) throw InputError("threads must be at least 1");
  if (request.attack == "classical-global") {
    return {classical_global_cheat(std::max<std::uint64_t>(request.trials, 1), request.seed)};
  }
  if (request.n < 1) throw InputError("n must be at least 1");
  std::vector<AttackStrategy> strategies;
  if (request.attack == "all") {
    strategies = standard_attacks();
    for (auto& s : strategies) {
      s.command = request.command;
      validate_strategy(s);
    }
  } else {
    strategies.push_back(
        strategy_from_spec(AttackSpec{request.attack, request.theta, request.bit}, request.command));
  }
  std::vector<AttackReport> out;
  for (const auto& s : strategies) {
    auto r = evaluate_attack(s, request.n, 0, request.seed);
    if (request.trials > 0) attach_sampled(r, parallel_counts(s, request.n, request.seed, request.trials, request.threads));
    out.push_back(std::move(r));
  }
  return out;
}

std::string render_attacks(const std::vector<AttackReport>& reports, OutputFormat format) {
  if (format == OutputFormat::Csv) return write_csv(attacks_csv(reports));
  Json rows = Json::array();
  for (const auto& r : reports) rows.push_back(to_json(r));
  return dump(Json{{"schema_version", kSchemaVersion}, {"attacks", rows}});
}

bool attack_violates_bound(const AttackReport& report) {
  return report.name != "classical-global-cheat" && !report.satisfied;
}

NosigReport cmd_nosig_check_text(const std::string& text) {
  NosigReport r;
  r.table = parse_table(text);
  r.violations = check_no_signalling(r.table);
  if (r.violations.empty()) r.opening_sum = check_opening_sum_bound(r.table);
  return r;
}

NosigReport cmd_nosig_check(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read table '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return cmd_nosig_check_text(buf.str());
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

std::string render_nosig(const NosigReport& r, OutputFormat format) {
  const bool equality = r.opening_sum && std::abs(r.opening_sum->lhs - r.opening_sum->rhs) <= 1e-9;
  if (format == OutputFormat::Csv) {
    CsvTable csv;
    csv.header = {"schema_version", "no_signalling", "violations", "lhs", "rhs", "holds", "equality"};
    csv.rows.push_back({std::to_string(kSchemaVersion), r.violations.empty() ? "1" : "0",
                        std::to_string(r.violations.size()),
                        r.opening_sum ? format_double(r.opening_sum->lhs) : "",
                        r.opening_sum ? format_double(r.opening_sum->rhs) : "",
                        r.opening_sum ? (r.opening_sum->holds ? "1" : "0") : "", equality ? "1" : "0"});
    return write_csv(csv);
  }
  Json violations = Json::array();
  for (const auto& v : r.violations) violations.push_back(Json{{"side", v.side}, {"input", v.input}, {"gap", v.gap}});
  Json j{{"schema_version", kSchemaVersion}, {"ok", r.ok()}, {"no_signalling", r.violations.empty()},
         {"violations", violations}};
  j["opening_sum"] = r.opening_sum ? Json{{"lhs", r.opening_sum->lhs},
                                          {"rhs", r.opening_sum->rhs},
                                          {"holds", r.opening_sum->holds},
                                          {"equality", equality}}
                                   : Json(nullptr);
  return dump(j);
}

std::string render_composability(const std::vector<std::size_t>& n_list, OutputFormat format) {
  if (n_list.empty()) throw InputError("composability demo needs at least one n");
  if (format == OutputFormat::Csv) {
    CsvTable csv;
    csv.header = {"schema_version", "n", "per_bit_epsilon", "string_sum"};
    for (auto n : n_list) {
      const auto r = composability_counterexample(n);
      csv.rows.push_back({std::to_string(kSchemaVersion), std::to_string(n), format_double(r.per_bit_epsilon),
                          format_double(r.string_sum)});
    }
    return write_csv(csv);
  }
  Json rows = Json::array();
  for (auto n : n_list) rows.push_back(to_json(composability_counterexample(n), n));
  return dump(Json{{"schema_version", kSchemaVersion}, {"composability", rows}});
}

void write_output(const std::string& content, const std::string& path) {
  if (path.empty()) {
    std::cout << content;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << content;
  if (!out) throw InputError("write to '" + path + "' failed");
}

}  // namespace relcommit
