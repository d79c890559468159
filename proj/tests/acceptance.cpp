// Prints one PASS/FAIL line per acceptance criterion; exits 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "relcommit/adversaries/attacks.hpp"
#include "relcommit/adversaries/classical_attacks.hpp"
#include "relcommit/adversaries/outcome_table.hpp"
#include "relcommit/adversaries/polytope.hpp"
#include "relcommit/bounds/binding.hpp"
#include "relcommit/bounds/uncertainty.hpp"
#include "relcommit/harness/commands.hpp"
#include "relcommit/protocols/classical.hpp"
#include "relcommit/protocols/kent.hpp"
#include "support/random_states.hpp"

using namespace relcommit;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) { return std::chrono::duration<double>(Clock::now() - start).count(); }

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

Outcome correctness() {
  const auto start = Clock::now();
  const std::uint64_t trials = 10000;
  std::uint64_t failures = 0;
  for (std::uint64_t k = 0; k < trials; ++k) {
    const auto seed = trial_seed(100, k);
    const int b = static_cast<int>(k & 1U);
    if (!run_secret_sharing(b, std::nullopt, seed).transcript.accepted()) ++failures;
    if (!run_local_command(honest_local_strategy(b), b, seed, CommandModel::Local).transcript.accepted()) ++failures;
    for (std::size_t n : {1u, 4u, 8u}) {
      if (!run_kent_honest(n, b, seed).transcript.accepted()) ++failures;
    }
  }
  const double elapsed = seconds_since(start);
  return {failures == 0 && elapsed < 60.0,
          fmt("%.0f rejected of 50000 honest runs, %.1f s", static_cast<double>(failures), elapsed)};
}

Outcome hiding() {
  double worst = 0.0;
  for (std::size_t n = 1; n <= 6; ++n) worst = std::max(worst, hiding_check_kent(n, 7).distance);
  double worst_share = 0.0;
  for (AgentId agent : {kAlice, kAmy}) {
    const auto ens = secret_sharing_agent_ensemble(agent);
    worst_share = std::max(worst_share, trace_distance(ens.entries()[0].state, ens.entries()[1].state));
  }
  return {worst < 1e-12 && worst_share < 1e-12,
          fmt("max trace distance %.3g (kent n<=6), %.3g (per share)", worst, worst_share)};
}

Outcome opening_sum() {
  const auto start = Clock::now();
  SplitRng rng(3);
  double worst = -1.0;
  bool all_hold = true;
  for (int i = 0; i < 100000; ++i) {
    const auto t = sample_no_signalling_table(rng, i % 3 == 0);
    const auto c = check_opening_sum_bound(t, 1e-9);
    all_hold = all_hold && c.holds;
    worst = std::max(worst, c.lhs - c.rhs);
  }
  double tight_gap = 0.0;
  for (double cap : {0.0, 0.25, 0.5, 1.0}) tight_gap = std::max(tight_gap, std::abs(max_p0_plus_p1(cap) - (1.0 + cap)));
  const double elapsed = seconds_since(start);
  return {all_hold && tight_gap == 0.0 && elapsed < 60.0,
          fmt("max p0+p1-(1+alpha) %.3g over 1e5 tables; optimum gap %.3g; %.1f s", worst, tight_gap, elapsed)};
}

Outcome bound_pipeline() {
  std::vector<double> eps;
  bool decreasing = true;
  double finest_gap = 0.0;
  for (std::size_t n = 32; n <= 4096; n *= 2) {
    const auto r = binding_epsilon(n);
    if (!eps.empty() && !(r.epsilon < eps.back())) decreasing = false;
    eps.push_back(r.epsilon);
    finest_gap = std::max(finest_gap, std::abs(binding_epsilon(n, 1e-4).epsilon - r.epsilon) / r.epsilon);
  }
  const double e256 = binding_epsilon(256).epsilon;
  // Per-unit-n slope of log2 epsilon over each doubling from 256 on.
  std::vector<double> slopes;
  for (std::size_t k = 4; k + 1 < eps.size(); ++k) {
    const double n = 32.0 * std::exp2(static_cast<double>(k));
    slopes.push_back((std::log2(eps[k + 1]) - std::log2(eps[k])) / n);
  }
  double worst_ratio = 0.0;
  for (std::size_t k = 1; k < slopes.size(); ++k) worst_ratio = std::max(worst_ratio, std::abs(slopes[k] / slopes[k - 1] - 1.0));
  return {decreasing && e256 < 1e-4 && worst_ratio <= 0.2 && finest_gap <= 1e-5,
          fmt("eps(256) = %.4g, slope drift %.3f, fine-grid gap %.2g", e256, worst_ratio, finest_gap)};
}

Outcome attack_domination() {
  int violations = 0, checked = 0;
  double closest = -1.0;
  for (std::size_t n : {16u, 32u, 64u}) {
    const auto eps = binding_epsilon(n);
    const double cap = alpha_bound(n, eps.delta_star);
    for (const auto& s : standard_attacks()) {
      const auto t = analytic_table(s, n);
      ++checked;
      if (t.p(0) + t.p(1) > 1.0 + eps.epsilon || t.alpha() > cap) ++violations;
      closest = std::max(closest, (t.p(0) + t.p(1) - 1.0) - eps.epsilon);
    }
  }
  return {violations == 0, fmt("%.0f violations over %.0f attack evaluations; max (p0+p1-1)-eps = %.3g",
                               violations, checked, closest)};
}

Outcome factorization() {
  double worst = 0.0;
  for (const auto& s : standard_attacks()) {
    for (std::size_t n = 1; n <= 16; ++n) {
      const auto d = alpha_decomposition_check(s, n);
      worst = std::max(worst, std::abs(d.alpha_direct - d.alpha_factored));
    }
  }
  return {worst <= 1e-9, fmt("max |alpha_direct - alpha_factored| = %.3g", worst)};
}

// 2n positions, w of them erroneous; a uniform half Z is checked. The joint event is
// "no error in Z" and "at least delta n errors outside Z".
Outcome hoeffding() {
  const std::size_t n = 50;
  const int samples = 100000;
  bool ok = true;
  double worst_margin = -1.0;
  SplitRng rng(99);
  for (double delta : {0.1, 0.2, 0.3}) {
    const double bound = hoeffding_tail(n, delta);
    const auto w = static_cast<std::size_t>(std::ceil(delta * static_cast<double>(n)));
    int hits = 0;
    std::vector<std::size_t> idx(2 * n);
    for (int s = 0; s < samples; ++s) {
      for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
      for (std::size_t i = 0; i < n; ++i) std::swap(idx[i], idx[i + rng.below(2 * n - i)]);
      std::size_t in_z = 0;
      for (std::size_t i = 0; i < n; ++i) in_z += idx[i] < w ? 1 : 0;
      if (in_z == 0 && static_cast<double>(w - in_z) >= delta * static_cast<double>(n)) ++hits;
    }
    const double freq = static_cast<double>(hits) / samples;
    const double slack = 3.0 * std::sqrt(std::max(freq * (1 - freq), 1.0 / samples) / samples);
    ok = ok && freq <= bound + slack;
    worst_margin = std::max(worst_margin, freq - bound);
  }
  return {ok, fmt("max frequency - exp(-n delta^2/2) = %.3g", worst_margin)};
}

Outcome uncertainty() {
  SplitRng rng(2718);
  int counterexamples = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(rng.below(3));
    const std::size_t nb = 1 + rng.below(3), nc = 1 + rng.below(3);
    const auto labels = make_qubit_ids(0, n);
    const auto weights = testing::random_probabilities(nb * nc, rng);
    std::vector<CcqBranch> branches;
    for (std::size_t b = 0; b < nb; ++b)
      for (std::size_t c = 0; c < nc; ++c) {
        const std::size_t rank = 1 + rng.below(std::size_t{1} << n);
        branches.push_back({b, c, weights[b * nc + c], testing::random_density(labels, rank, rng)});
      }
    const Basis first = rng.bit() ? Basis::Computational : Basis::Hadamard;
    const Basis second = first == Basis::Computational ? Basis::Hadamard : Basis::Computational;
    const auto check = check_uncertainty_relation(CcqState(branches), first, second);
    if (check.lhs < check.rhs - 1e-9) ++counterexamples;
  }
  double equality_gap = 0.0;
  for (std::size_t n = 1; n <= 3; ++n) {
    const auto labels = make_qubit_ids(0, n);
    const auto zero = DensityOperator::from_pure(StateVector::basis_state(labels, BitString(n)));
    const auto c = check_uncertainty_relation(CcqState({{0, 0, 1.0, zero}}), Basis::Computational, Basis::Hadamard);
    equality_gap = std::max(equality_gap, std::abs(c.lhs - c.rhs));
  }
  return {counterexamples == 0 && equality_gap < 1e-12,
          fmt("%.0f counterexamples in 1000 states; |0..0> equality gap %.3g", counterexamples, equality_gap)};
}

Outcome classical_demo() {
  const auto cheat = classical_global_cheat(1000, 5);
  const double sum = cheat.p0 + cheat.p1;
  const double optimum = local_command_optimum(pre_agreed_bit_strategy_space());
  return {sum == 2.0 && optimum == 1.0, fmt("global-command p0+p1 = %.17g, local-command optimum = %.17g", sum, optimum)};
}

Outcome composability() {
  bool ok = true;
  for (std::size_t n = 1; n <= 20; ++n) {
    const auto r = composability_counterexample(n);
    ok = ok && r.per_bit_epsilon == 0.0 && r.string_sum == std::ldexp(1.0, static_cast<int>(n) - 1);
    if (n <= 10) {
      double brute = 0.0;
      for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s)
        for (int coin = 0; coin < 2; ++coin) brute += coin == 1 ? 0.5 : 0.0;
      ok = ok && r.string_sum == brute;
    }
  }
  const auto r10 = composability_counterexample(10);
  return {ok, fmt("n=10 gives (%.17g, %.17g); n<=20 exact", r10.per_bit_epsilon, r10.string_sum)};
}

Outcome determinism() {
  std::vector<ExperimentConfig> configs;
  ExperimentConfig honest;
  honest.n = 6;
  honest.trials = 3000;
  honest.seed = 2026;
  configs.push_back(honest);
  ExperimentConfig attacked = honest;
  attacked.n = 8;
  attacked.attack = AttackSpec{"intermediate-basis", std::numbers::pi / 8, 0};
  configs.push_back(attacked);
  ExperimentConfig local;
  local.protocol = ProtocolKind::LocalCommand;
  local.split = {SplitKind::Beta, CommandModel::Local};
  local.trials = 3000;
  local.seed = 1;
  configs.push_back(local);

  int mismatches = 0;
  for (auto c : configs) {
    for (auto format : {OutputFormat::Csv, OutputFormat::Json}) {
      c.threads = 1;
      const auto first = render_summary(cmd_simulate(c), format);
      c.threads = 4;
      const auto second = render_summary(cmd_simulate(c), format);
      if (first != second) ++mismatches;
    }
  }
  const auto b1 = render_bounds(cmd_bounds({64, 256}), OutputFormat::Csv);
  const auto b2 = render_bounds(cmd_bounds({64, 256}), OutputFormat::Csv);
  if (b1 != b2) ++mismatches;
  return {mismatches == 0, fmt("%.0f differing outputs across repeated runs", mismatches)};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"perfect correctness", correctness},
      {"perfect hiding", hiding},
      {"opening-sum bound on no-signalling tables", opening_sum},
      {"binding parameter pipeline", bound_pipeline},
      {"attack domination", attack_domination},
      {"alpha factorization", factorization},
      {"sampling tail bound", hoeffding},
      {"uncertainty relation", uncertainty},
      {"classical impossibility", classical_demo},
      {"composability counterexample", composability},
      {"determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("%s %zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
