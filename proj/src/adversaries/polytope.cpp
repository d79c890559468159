#include "relcommit/adversaries/polytope.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_int.hpp>

#include "relcommit/errors.hpp"

namespace relcommit {

namespace {

using boost::multiprecision::cpp_rational;
using Row = std::array<double, 16>;

constexpr std::size_t kVars = 16;
constexpr std::size_t kEqualities = 8;

std::size_t at(int b, int bp, int f, int g) {
  return JointOutcomeTable::index(b, bp, f ? Flag::Reject : Flag::Accept, g ? Flag::Reject : Flag::Accept);
}

// Normalization of each quarter, then no-signalling of both marginals.
std::vector<std::pair<Row, double>> equalities() {
  std::vector<std::pair<Row, double>> rows;
  for (int b = 0; b < 2; ++b) {
    for (int bp = 0; bp < 2; ++bp) {
      Row r{};
      for (int f = 0; f < 2; ++f)
        for (int g = 0; g < 2; ++g) r[at(b, bp, f, g)] = 1.0;
      rows.push_back({r, 1.0});
    }
  }
  for (int b = 0; b < 2; ++b) {
    Row r{};
    for (int g = 0; g < 2; ++g) {
      r[at(b, 0, 0, g)] += 1.0;
      r[at(b, 1, 0, g)] -= 1.0;
    }
    rows.push_back({r, 0.0});
  }
  for (int bp = 0; bp < 2; ++bp) {
    Row r{};
    for (int f = 0; f < 2; ++f) {
      r[at(0, bp, f, 0)] += 1.0;
      r[at(1, bp, f, 0)] -= 1.0;
    }
    rows.push_back({r, 0.0});
  }
  return rows;
}

// Inequality k < 16 is x_k >= 0 (tight: x_k = 0); k = 16 is alpha <= cap (tight: alpha = cap).
std::pair<Row, double> tight_row(std::size_t k, double cap) {
  Row r{};
  if (k < kVars) {
    r[k] = 1.0;
    return {r, 0.0};
  }
  r[at(0, 1, 0, 0)] = 1.0;
  return {r, cap};
}

double objective(const Row& x) { return x[at(0, 0, 0, 0)] + x[at(1, 1, 0, 0)]; }

std::optional<Row> solve_exact(const std::vector<std::pair<Row, double>>& rows) {
  std::vector<std::vector<cpp_rational>> m(kVars, std::vector<cpp_rational>(kVars + 1));
  for (std::size_t i = 0; i < kVars; ++i) {
    for (std::size_t j = 0; j < kVars; ++j) m[i][j] = cpp_rational(rows[i].first[j]);
    m[i][kVars] = cpp_rational(rows[i].second);
  }
  for (std::size_t col = 0; col < kVars; ++col) {
    std::size_t pivot = col;
    while (pivot < kVars && m[pivot][col] == 0) ++pivot;
    if (pivot == kVars) return std::nullopt;
    std::swap(m[col], m[pivot]);
    for (std::size_t i = 0; i < kVars; ++i) {
      if (i == col || m[i][col] == 0) continue;
      const cpp_rational factor = m[i][col] / m[col][col];
      for (std::size_t j = col; j <= kVars; ++j) m[i][j] -= factor * m[col][j];
    }
  }
  Row x{};
  for (std::size_t i = 0; i < kVars; ++i) x[i] = static_cast<double>(m[i][kVars] / m[i][i]);
  return x;
}

}  // namespace

PolytopeOptimum maximize_opening_sum(double alpha_cap) {
  if (!(alpha_cap >= 0.0 && alpha_cap <= 1.0)) throw InputError("alpha cap must lie in [0, 1]");
  const auto eq = equalities();
  constexpr std::size_t kInequalities = kVars + 1;
  constexpr std::size_t kChoose = kVars - kEqualities;

  double best = -1.0;
  std::vector<std::vector<std::size_t>> best_sets;
  std::vector<bool> mask(kInequalities, false);
  std::fill(mask.begin(), mask.begin() + kChoose, true);
  do {
    std::vector<std::size_t> active;
    for (std::size_t k = 0; k < kInequalities; ++k) {
      if (mask[k]) active.push_back(k);
    }
    Eigen::Matrix<double, 16, 16> a;
    Eigen::Matrix<double, 16, 1> rhs;
    for (std::size_t i = 0; i < kEqualities; ++i) {
      for (std::size_t j = 0; j < kVars; ++j) a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = eq[i].first[j];
      rhs(static_cast<Eigen::Index>(i)) = eq[i].second;
    }
    for (std::size_t i = 0; i < kChoose; ++i) {
      const auto [row, value] = tight_row(active[i], alpha_cap);
      for (std::size_t j = 0; j < kVars; ++j) {
        a(static_cast<Eigen::Index>(kEqualities + i), static_cast<Eigen::Index>(j)) = row[j];
      }
      rhs(static_cast<Eigen::Index>(kEqualities + i)) = value;
    }
    Eigen::FullPivLU<Eigen::Matrix<double, 16, 16>> lu(a);
    if (lu.rank() < 16) continue;
    const Eigen::Matrix<double, 16, 1> x = lu.solve(rhs);
    if (x.minCoeff() < -1e-9) continue;
    if (x(static_cast<Eigen::Index>(at(0, 1, 0, 0))) > alpha_cap + 1e-9) continue;
    const double value = x(static_cast<Eigen::Index>(at(0, 0, 0, 0))) + x(static_cast<Eigen::Index>(at(1, 1, 0, 0)));
    if (value > best + 1e-9) {
      best = value;
      best_sets.clear();
    }
    if (value > best - 1e-9) best_sets.push_back(active);
  } while (std::prev_permutation(mask.begin(), mask.end()));

  if (best_sets.empty()) throw PreconditionError("no feasible vertex found");
  PolytopeOptimum out;
  out.value = -1.0;
  for (const auto& active : best_sets) {
    std::vector<std::pair<Row, double>> rows = eq;
    for (auto k : active) rows.push_back(tight_row(k, alpha_cap));
    const auto x = solve_exact(rows);
    if (!x) continue;
    const double value = objective(*x);
    if (value > out.value) {
      out.value = value;
      JointOutcomeTable::Entries e{};
      for (std::size_t i = 0; i < kVars; ++i) e[i] = std::max(0.0, (*x)[i]);
      out.table = JointOutcomeTable(e);
    }
  }
  return out;
}

double max_p0_plus_p1(double alpha_cap) { return maximize_opening_sum(alpha_cap).value; }

std::vector<JointOutcomeTable> local_deterministic_tables() {
  std::vector<JointOutcomeTable> out;
  for (int code = 0; code < 16; ++code) {
    out.push_back(deterministic_table({(code & 1) != 0, (code & 2) != 0}, {(code & 4) != 0, (code & 8) != 0}));
  }
  return out;
}

std::vector<JointOutcomeTable> nonlocal_boxes() {
  std::vector<JointOutcomeTable> out;
  for (int u = 0; u < 2; ++u) {
    for (int v = 0; v < 2; ++v) {
      for (int w = 0; w < 2; ++w) {
        JointOutcomeTable::Entries e{};
        for (int b = 0; b < 2; ++b)
          for (int bp = 0; bp < 2; ++bp)
            for (int f = 0; f < 2; ++f)
              for (int g = 0; g < 2; ++g) {
                if ((f ^ g) == ((b & bp) ^ (u & b) ^ (v & bp) ^ w)) e[at(b, bp, f, g)] = 0.5;
              }
        out.push_back(JointOutcomeTable(e));
      }
    }
  }
  return out;
}

JointOutcomeTable sample_no_signalling_table(SplitRng& rng, bool local_only) {
  std::vector<JointOutcomeTable> vertices = local_deterministic_tables();
  if (!local_only) {
    const auto boxes = nonlocal_boxes();
    vertices.insert(vertices.end(), boxes.begin(), boxes.end());
  }
  const std::size_t parts = 1 + rng.below(4);
  std::vector<std::pair<double, JointOutcomeTable>> mixture;
  double total = 0.0;
  for (std::size_t k = 0; k < parts; ++k) {
    const double w = -std::log(1.0 - rng.uniform());
    total += w;
    mixture.push_back({w, vertices[rng.below(vertices.size())]});
  }
  for (auto& [w, t] : mixture) w /= total;
  return mix(mixture);
}

}  // namespace relcommit
