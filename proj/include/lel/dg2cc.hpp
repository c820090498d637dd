#pragma once

#include <vector>

#include "lel/problem.hpp"
#include "lel/rng.hpp"

namespace lel {

// Finite-difference variable grouping. Deterministic given the objective;
// probe evaluations count against the trial budget.
struct Dg2Grouping {
  std::vector<std::vector<int>> groups;  // partition of 0..d-1
  Mat lambda;                            // pairwise nonlinearity estimates
  long eval_cost = 0;                    // evaluations consumed by probing
};

// Probe evaluations used for d variables: 1 + d + d(d-1)/2.
long dg2_probe_count(int d);

// Probes from the lower-bound corner toward the midpoint, classifies pairs
// against adaptive rounding-error thresholds and merges interacting pairs
// into groups by transitive closure. Throws BudgetExhausted if the probes
// alone exceed the budget.
Dg2Grouping dg2_group(Problem& problem);

struct CcResult {
  double best_f;
  Vec context;       // best-known full solution after the last sync
  double context_f;  // objective value of context, equals problem.best_f()
};

// Round-robin cooperative coevolution over the groups, one self-adaptive DE
// generation per visit against the context vector; the context picks up a
// group's best found values after each visit.
CcResult cc_optimize(Problem& problem, const Dg2Grouping& grouping, Rng& rng);

// dg2_group followed by cc_optimize on whatever budget remains.
void dg2_cc_run(Problem& problem, Rng& rng);

}  // namespace lel
