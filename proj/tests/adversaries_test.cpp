#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "relcommit/adversaries/attacks.hpp"
#include "relcommit/adversaries/classical_attacks.hpp"
#include "relcommit/adversaries/outcome_table.hpp"
#include "relcommit/adversaries/polytope.hpp"
#include "relcommit/bounds/binding.hpp"
#include "relcommit/errors.hpp"

using namespace relcommit;

namespace {

JointOutcomeTable always_accept() { return deterministic_table({true, true}, {true, true}); }

// Bob's verdict follows b', which no separated pair can produce.
JointOutcomeTable signalling_table() {
  JointOutcomeTable::Entries e{};
  for (int b = 0; b < 2; ++b) {
    for (int bp = 0; bp < 2; ++bp) {
      const Flag bob = bp == 0 ? Flag::Accept : Flag::Reject;
      e[JointOutcomeTable::index(b, bp, bob, Flag::Accept)] = 1.0;
    }
  }
  return JointOutcomeTable(e);
}

double sigma(double p, double trials) { return std::sqrt(std::max(p * (1 - p), 1e-12) / trials); }

}  // namespace

TEST_CASE("outcome table construction") {
  const JointOutcomeTable reject;
  CHECK(reject.p(0) == 0.0);
  CHECK(reject.bob_accept(0, 1) == 0.0);

  JointOutcomeTable::Entries bad{};
  bad[0] = 0.5;
  CHECK_THROWS_AS(JointOutcomeTable{bad}, InputError);
  JointOutcomeTable::Entries negative{};
  for (int q = 0; q < 4; ++q) negative[static_cast<std::size_t>(4 * q)] = 1.0;
  negative[0] = 1.5;
  negative[1] = -0.5;
  CHECK_THROWS_AS(JointOutcomeTable{negative}, InputError);

  const auto t = always_accept();
  CHECK(t.p(0) == 1.0);
  CHECK(t.p(1) == 1.0);
  CHECK(t.alpha() == 1.0);
  CHECK(check_no_signalling(t).empty());

  const auto s = signalling_table();
  const auto violations = check_no_signalling(s);
  REQUIRE_FALSE(violations.empty());
  CHECK(violations.front().side == "Bob");
  CHECK_THROWS_AS(check_opening_sum_bound(s), PreconditionError);
}

TEST_CASE("opening sum bound is tight on the no-signalling polytope") {
  for (double cap : {0.0, 0.05, 0.125, 0.25, 0.5, 0.75, 1.0}) {
    CAPTURE(cap);
    // Witness: honest-for-0 table mixed with the always-accept table.
    const auto witness = mix({{1.0 - cap, deterministic_table({true, false}, {true, false})}, {cap, always_accept()}});
    CHECK(witness.p(0) + witness.p(1) == doctest::Approx(1.0 + cap).epsilon(1e-15));
    CHECK(witness.alpha() == doctest::Approx(cap).epsilon(1e-15));

    const auto opt = maximize_opening_sum(cap);
    CHECK(opt.value == doctest::Approx(1.0 + cap).epsilon(1e-12));
    CHECK(opt.table.alpha() <= cap + 1e-12);
    CHECK(check_no_signalling(opt.table).empty());
    CHECK(max_p0_plus_p1(cap) == doctest::Approx(1.0 + cap).epsilon(1e-12));
  }
  CHECK_THROWS_AS(max_p0_plus_p1(-0.1), InputError);
  CHECK_THROWS_AS(max_p0_plus_p1(1.5), InputError);
}

TEST_CASE("extremal tables") {
  const auto locals = local_deterministic_tables();
  const auto boxes = nonlocal_boxes();
  CHECK(locals.size() == 16);
  CHECK(boxes.size() == 8);
  for (const auto& t : locals) CHECK(check_no_signalling(t).empty());
  for (const auto& t : boxes) {
    CHECK(check_no_signalling(t).empty());
    CHECK(check_opening_sum_bound(t).holds);
    // Every verdict marginal of a nonlocal box is a fair coin.
    for (int b = 0; b < 2; ++b)
      for (int bp = 0; bp < 2; ++bp) CHECK(t.bob_accept(b, bp) == doctest::Approx(0.5));
  }
}

TEST_CASE("opening sum bound on random no-signalling tables") {
  SplitRng rng(2024);
  double worst_slack = 1.0;
  for (int i = 0; i < 100000; ++i) {
    const auto t = sample_no_signalling_table(rng, i % 2 == 0);
    REQUIRE(check_no_signalling(t).empty());
    const auto c = check_opening_sum_bound(t);
    REQUIRE(c.holds);
    worst_slack = std::min(worst_slack, c.rhs - c.lhs);
  }
  CHECK(worst_slack >= -1e-9);
}

TEST_CASE("intermediate-basis attack matches per-round closed forms") {
  for (int k = 0; k <= 8; ++k) {
    const double theta = k * std::numbers::pi / 32;
    const double c = std::cos(theta) * std::cos(theta);
    const double d = (1.0 + std::sin(2 * theta)) / 2.0;
    CAPTURE(k);
    CHECK(round_agreement(theta, Basis::Computational) == doctest::Approx(c).epsilon(1e-12));
    CHECK(round_agreement(theta, Basis::Hadamard) == doctest::Approx(d).epsilon(1e-12));
    for (std::size_t n : {1u, 3u, 8u, 16u}) {
      const auto t = analytic_table(intermediate_basis_strategy(theta), n);
      const double nn = static_cast<double>(n);
      CHECK(t.p(0) == doctest::Approx(std::pow(c, nn)).epsilon(1e-10));
      CHECK(t.p(1) == doctest::Approx(std::pow(d, nn)).epsilon(1e-10));
      CHECK(t.alpha() == doctest::Approx(std::pow(c * d, nn)).epsilon(1e-10));
      CHECK(check_no_signalling(t).empty());
    }
  }
  const auto zero = analytic_table(intermediate_basis_strategy(0.0), 10);
  CHECK(zero.p(0) == doctest::Approx(1.0));
  CHECK(zero.p(1) == doctest::Approx(std::ldexp(1.0, -10)).epsilon(1e-12));

  double previous = 3.0;
  for (std::size_t n : {4u, 8u, 16u}) {
    const auto t = analytic_table(intermediate_basis_strategy(std::numbers::pi / 8), n);
    const double sum = t.p(0) + t.p(1);
    CHECK(sum < previous);
    CHECK(sum < 1.0 + alpha_bound(n, binding_epsilon(n).delta_star));
    previous = sum;
  }
  CHECK_THROWS_AS(intermediate_basis_strategy(1.0), InputError);
  CHECK_THROWS_AS(intermediate_basis_strategy(-0.1), InputError);
}

TEST_CASE("baseline strategies") {
  const auto coin = analytic_table(coin_flip_strategy(), 8);
  CHECK(coin.p(0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(coin.p(1) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(coin.p(0) + coin.p(1) == doctest::Approx(1.0).epsilon(1e-12));

  for (int b = 0; b < 2; ++b) {
    const auto t = analytic_table(honest_strategy(b), 6);
    CHECK(t.p(b) == doctest::Approx(1.0));
    CHECK(t.p(1 - b) == 0.0);
  }

  const auto report = coin_flip_attack(8, 100000, 11);
  REQUIRE(report.sampled);
  const double trials = 100000.0;
  CHECK(std::abs(report.sampled->p0 - 0.5) <= 3 * sigma(0.5, trials));
  CHECK(std::abs(report.sampled->p1 - 0.5) <= 3 * sigma(0.5, trials));
  CHECK(report.satisfied);
}

TEST_CASE("strategy validation") {
  AttackStrategy s = honest_bob_guessing_brian();
  s.command = CommandModel::Local;
  CHECK_THROWS_AS(validate_strategy(s), InputError);
  s.components.front().brian.claim = ClaimRule::Fixed1;
  CHECK_NOTHROW(validate_strategy(s));
  s.components.front().weight = 0.7;
  CHECK_THROWS_AS(validate_strategy(s), InputError);
  CHECK_THROWS_AS(validate_strategy(AttackStrategy{"empty", CommandModel::Global, {}}), InputError);
  CHECK_THROWS_AS(analytic_table(coin_flip_strategy(), 0), InputError);
}

TEST_CASE("alpha factorization agrees with the joint event") {
  for (const auto& s : standard_attacks()) {
    for (std::size_t n : {1u, 2u, 4u, 8u, 16u}) {
      CAPTURE(s.name);
      CAPTURE(n);
      const auto d = alpha_decomposition_check(s, n);
      CHECK(std::abs(d.alpha_direct - d.alpha_factored) <= 1e-9);
      CHECK(d.alpha_direct == doctest::Approx(analytic_table(s, n).alpha()).epsilon(1e-12));
      CHECK(d.far_given_pass >= 0.0);
      CHECK(d.far_given_pass <= 1.0);
    }
  }

  // Bob copies honest B0 outcomes; Brian guesses every checked bit.
  const auto d = alpha_decomposition_check(honest_bob_guessing_brian(), 4);
  CHECK(d.pass_probability == doctest::Approx(1.0));
  CHECK(d.brian_given_pass == doctest::Approx(1.0 / 16));
  CHECK(d.alpha_direct == doctest::Approx(d.pass_probability / 16).epsilon(1e-12));
  CHECK(d.alpha_factored == doctest::Approx(d.pass_probability / 16).epsilon(1e-12));

  const auto eighth = alpha_decomposition_check(intermediate_basis_strategy(std::numbers::pi / 8), 8);
  CHECK(std::abs(eighth.alpha_direct - eighth.alpha_factored) <= 1e-9);
}

TEST_CASE("sampled tables are exactly no-signalling and track the analytic table") {
  const auto strategy = intermediate_basis_strategy(std::numbers::pi / 8);
  const std::size_t n = 2;
  const std::uint64_t trials = 20000;
  const auto counts = sample_attack_table(strategy, n, 5, 0, trials);
  const auto sampled = counts.table();
  CHECK(check_no_signalling(sampled, 1e-15).empty());
  const auto exact = analytic_table(strategy, n);
  for (std::size_t i = 0; i < 16; ++i) {
    CAPTURE(i);
    const double p = exact.entries()[i];
    CHECK(std::abs(sampled.entries()[i] - p) <= 4 * sigma(p, static_cast<double>(trials)) + 1e-12);
  }
  const auto d = alpha_decomposition_check(strategy, n);
  CHECK(std::abs(sampled.alpha() - d.alpha_factored) <= 3 * sigma(d.alpha_factored, static_cast<double>(trials)));

  // Chunked sampling merges to the same counts.
  auto first = sample_attack_table(strategy, n, 5, 0, 7000);
  first.merge(sample_attack_table(strategy, n, 5, 7000, trials - 7000));
  CHECK(first.cells == counts.cells);
  CHECK(first.trials == counts.trials);

  // Prepared variant and full-state simulation give the same statistics.
  KentOptions prepared;
  prepared.variant = KentVariant::PrepareAndMeasure;
  const auto alt = sample_attack_table(strategy, n, 6, 0, trials, prepared).table();
  for (std::size_t i = 0; i < 16; ++i) {
    const double p = exact.entries()[i];
    CHECK(std::abs(alt.entries()[i] - p) <= 4 * sigma(p, static_cast<double>(trials)) + 1e-12);
  }
  KentOptions full;
  full.mode = SimulationMode::FullState;
  const auto full_table = sample_attack_table(strategy, n, 7, 0, 4000, full).table();
  for (std::size_t i = 0; i < 16; ++i) {
    const double p = exact.entries()[i];
    CHECK(std::abs(full_table.entries()[i] - p) <= 4 * sigma(p, 4000.0) + 1e-12);
  }
}

TEST_CASE("Brian's verdict ignores the command under the local model") {
  AttackStrategy s{"local-probe", CommandModel::Local,
                   {{0.5, std::numbers::pi / 8, {ClaimRule::FollowCommand, StringRule::CopyOutcomes},
                     {ClaimRule::Fixed0, StringRule::UniformGuess}},
                    {0.5, 0.0, {ClaimRule::FollowCommand, StringRule::CopyOutcomes},
                     {ClaimRule::Fixed1, StringRule::CopyOutcomes}}}};
  const auto t = sample_attack_table(s, 3, 9, 0, 5000).table();
  for (int bp = 0; bp < 2; ++bp) CHECK(t.brian_accept(0, bp) == t.brian_accept(1, bp));
  CHECK(check_no_signalling(t, 1e-15).empty());

  StrategyCommitter committer(s);
  SplitRng lab_rng(1), commit_rng(2);
  EprLab lab(6, SimulationMode::Factored, lab_rng);
  committer.commit(lab, 3, commit_rng);
  SplitRng a(3), b(3);
  CHECK(committer.open_brian(0, a)->outcomes == committer.open_brian(1, b)->outcomes);
}

TEST_CASE("implemented attacks stay within the binding parameter") {
  for (std::size_t n : {16u, 32u, 64u}) {
    const double eps = binding_epsilon(n).epsilon;
    for (const auto& s : standard_attacks()) {
      CAPTURE(s.name);
      CAPTURE(n);
      const auto r = evaluate_attack(s, n, 0, 1);
      CHECK(r.satisfied);
      CHECK(r.alpha <= eps);
      CHECK(r.p0 + r.p1 <= 1.0 + eps);
      CHECK(r.bound == doctest::Approx(eps));
    }
  }
  const auto sampled = intermediate_basis_attack(64, std::numbers::pi / 8, 2000, 3);
  REQUIRE(sampled.sampled);
  CHECK(sampled.satisfied);
}

TEST_CASE("classical pre-agreed bit") {
  const auto cheat = classical_global_cheat(200, 17);
  CHECK(cheat.p0 == 1.0);
  CHECK(cheat.p1 == 1.0);
  CHECK(cheat.p0 + cheat.p1 == 2.0);
  CHECK_FALSE(cheat.satisfied);
  CHECK_THROWS_AS(classical_global_cheat(0, 1), InputError);

  CHECK(local_command_optimum(pre_agreed_bit_strategy_space()) == 1.0);

  LocalCommandGame single{1, 1, [](int b, std::size_t, std::size_t) { return b == 0 ? 0.3 : 0.6; }};
  CHECK(local_command_optimum(single) == doctest::Approx(0.9));

  LocalCommandGame huge{65, 2, [](int, std::size_t, std::size_t) { return 0.0; }};
  CHECK_THROWS_AS(local_command_optimum(huge), InputError);

  // Random acceptance tables against brute force over Bob's response pairs.
  SplitRng rng(77);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t nr = 1 + rng.below(6), ns = 1 + rng.below(6);
    std::vector<double> acc(2 * nr * ns);
    for (auto& a : acc) a = rng.uniform();
    LocalCommandGame g{nr, ns, [&](int b, std::size_t r, std::size_t s) {
                         return acc[(static_cast<std::size_t>(b) * nr + r) * ns + s];
                       }};
    double brute = 0.0;
    for (std::size_t r0 = 0; r0 < nr; ++r0)
      for (std::size_t r1 = 0; r1 < nr; ++r1)
        for (std::size_t s = 0; s < ns; ++s) brute = std::max(brute, g.accept(0, r0, s) + g.accept(1, r1, s));
    CHECK(local_command_optimum(g) == doctest::Approx(brute).epsilon(1e-15));
  }
}

TEST_CASE("per-bit binding does not compose to strings") {
  CHECK(composability_counterexample(1).per_bit_epsilon == 0.0);
  CHECK(composability_counterexample(1).string_sum == 1.0);
  CHECK(composability_counterexample(10).string_sum == 512.0);
  for (std::size_t n = 1; n <= 20; ++n) {
    const auto r = composability_counterexample(n);
    CHECK(r.per_bit_epsilon == 0.0);
    CHECK(r.string_sum == std::ldexp(1.0, static_cast<int>(n) - 1));
  }
  // Enumerate every (string, coin) pair for small n.
  for (std::size_t n = 1; n <= 10; ++n) {
    double sum = 0.0;
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s)
      for (int coin = 0; coin < 2; ++coin) sum += coin == 1 ? 0.5 : 0.0;
    CHECK(composability_counterexample(n).string_sum == sum);
  }
  CHECK_THROWS_AS(composability_counterexample(0), InputError);
  CHECK_THROWS_AS(composability_counterexample(21), InputError);
}
