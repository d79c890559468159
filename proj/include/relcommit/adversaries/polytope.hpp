#pragma once

#include <vector>

#include "relcommit/adversaries/outcome_table.hpp"
#include "relcommit/quantum/rng.hpp"

namespace relcommit {

struct PolytopeOptimum {
  double value = 0.0;
  JointOutcomeTable table;
};

/// max p0 + p1 over no-signalling tables with alpha <= alpha_cap, by vertex
/// enumeration; the optimal vertex is re-solved in exact rational arithmetic.
PolytopeOptimum maximize_opening_sum(double alpha_cap);

double max_p0_plus_p1(double alpha_cap);

/// The 16 local deterministic tables.
std::vector<JointOutcomeTable> local_deterministic_tables();

/// The 8 extremal nonlocal boxes: verdict bits satisfy f xor g = b b' xor u b xor v b' xor w.
std::vector<JointOutcomeTable> nonlocal_boxes();

/// Random mixture of a few extremal tables; local_only restricts to deterministic local ones.
JointOutcomeTable sample_no_signalling_table(SplitRng& rng, bool local_only = false);

}  // namespace relcommit
