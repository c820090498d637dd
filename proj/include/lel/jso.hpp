#pragma once

#include "lel/problem.hpp"
#include "lel/rng.hpp"

namespace lel {

// Control parameters of the success-history adaptive DE baseline with
// linear population size reduction and current-to-pbest-w/1 mutation.
struct JsoParams {
  int n_min = 4;
  int history = 5;        // memory slots; the last one is frozen at 0.9/0.9
  double arc_rate = 2.6;  // external archive size relative to the population
  double p_max = 0.25;    // pbest fraction, decays linearly to p_max/2
  double mf_init = 0.3;
  double mcr_init = 0.8;
};

// Initial population size 25 * ln(d) * sqrt(d), floored.
int jso_initial_pop(int d);

// Linear population size reduction law at budget fraction t in [0,1].
int jso_pop_at(double t, int n_init, int n_min);

// Runs until the budget is exhausted. The problem tracks the incumbent.
void jso_run(Problem& problem, Rng& rng, const JsoParams& params = {});

}  // namespace lel
