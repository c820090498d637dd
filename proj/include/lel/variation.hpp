#pragma once

#include <vector>

#include "lel/config.hpp"
#include "lel/problem.hpp"
#include "lel/rng.hpp"

namespace lel {

// Elite mean and per-coordinate standard deviation restricted to a block.
struct EliteStats {
  Vec mu;
  Vec sigma;
};

// Statistics of the top ceil(elite_fraction * N) members by fitness (ties by
// member index), projected onto `block`. sigma entries are floored.
EliteStats elite_stats(const Population& pop, double elite_fraction,
                       const std::vector<int>& block, double sigma_floor);

// Blockwise trial vector: on block coordinates,
//   y = x + l1*(mu - x) + l2*(x_p - x_q) + l3*sigma.*xi,
// with p != q != target drawn uniformly and xi standard normal; clamped to
// bounds. Coordinates outside the block are bitwise those of the target.
Vec blockwise_trial(const Population& pop, int target,
                    const std::vector<int>& block, const Config& cfg,
                    const Bounds& bounds, Rng& rng);

// Classic DE/rand/1/bin trial with guaranteed crossover index, clamped.
Vec de_rand_1_bin(const Population& pop, int target, double f, double cr,
                  const Bounds& bounds, Rng& rng);

struct Selection {
  bool improved = false;
  double df = 0.0;  // fy - f_old, negative when improved
  Vec dx;           // y - x_old, set only when improved
};

// Replaces the target member iff fy is a strict improvement.
Selection greedy_select(Population& pop, int target, const Vec& y, double fy);

}  // namespace lel
