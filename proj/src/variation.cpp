#include "lel/variation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace lel {

EliteStats elite_stats(const Population& pop, double elite_fraction,
                       const std::vector<int>& block, double sigma_floor) {
  const int n = pop.size();
  const int n_elite = static_cast<int>(
      std::ceil(elite_fraction * static_cast<double>(n)));
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) {
    if (pop.fitness[a] != pop.fitness[b])
      return pop.fitness[a] < pop.fitness[b];
    return a < b;
  });

  const int m = static_cast<int>(block.size());
  EliteStats es;
  es.mu = Vec::Zero(m);
  es.sigma = Vec::Zero(m);
  for (int e = 0; e < n_elite; ++e) {
    const Vec& x = pop.members[idx[e]];
    for (int k = 0; k < m; ++k) {
      const double v = x[block[k]];
      es.mu[k] += v;
      es.sigma[k] += v * v;
    }
  }
  for (int k = 0; k < m; ++k) {
    es.mu[k] /= n_elite;
    const double var = es.sigma[k] / n_elite - es.mu[k] * es.mu[k];
    es.sigma[k] = std::sqrt(std::max(var, 0.0));
    if (es.sigma[k] < sigma_floor) es.sigma[k] = sigma_floor;
  }
  return es;
}

Vec blockwise_trial(const Population& pop, int target,
                    const std::vector<int>& block, const Config& cfg,
                    const Bounds& bounds, Rng& rng) {
  const int n = pop.size();
  if (n < 4) throw PopulationTooSmall("blockwise trial needs N >= 4");
  const EliteStats es =
      elite_stats(pop, cfg.elite_fraction, block, cfg.sigma_floor);

  int p;
  do p = rng.index(n); while (p == target);
  int q;
  do q = rng.index(n); while (q == target || q == p);

  Vec y = pop.members[target];
  const Vec& xp = pop.members[p];
  const Vec& xq = pop.members[q];
  for (size_t k = 0; k < block.size(); ++k) {
    const int j = block[k];
    const double xj = y[j];
    const double v = xj + cfg.lambda1 * (es.mu[k] - xj) +
                     cfg.lambda2 * (xp[j] - xq[j]) +
                     cfg.lambda3 * es.sigma[k] * rng.normal();
    y[j] = std::clamp(v, bounds.lo[j], bounds.hi[j]);
  }
  return y;
}

Vec de_rand_1_bin(const Population& pop, int target, double f, double cr,
                  const Bounds& bounds, Rng& rng) {
  const int n = pop.size();
  if (n < 4) throw PopulationTooSmall("DE/rand/1/bin needs N >= 4");
  const int d = static_cast<int>(pop.members[target].size());

  int r1;
  do r1 = rng.index(n); while (r1 == target);
  int r2;
  do r2 = rng.index(n); while (r2 == target || r2 == r1);
  int r3;
  do r3 = rng.index(n); while (r3 == target || r3 == r1 || r3 == r2);

  const int j_rand = rng.index(d);
  Vec y = pop.members[target];
  const Vec& a = pop.members[r1];
  const Vec& b = pop.members[r2];
  const Vec& c = pop.members[r3];
  for (int j = 0; j < d; ++j) {
    const double u = rng.uniform();
    if (u < cr || j == j_rand)
      y[j] = std::clamp(a[j] + f * (b[j] - c[j]), bounds.lo[j], bounds.hi[j]);
  }
  return y;
}

Selection greedy_select(Population& pop, int target, const Vec& y, double fy) {
  Selection sel;
  const double f_old = pop.fitness[target];
  if (fy < f_old) {
    sel.improved = true;
    sel.df = fy - f_old;
    sel.dx = y - pop.members[target];
    pop.members[target] = y;
    pop.fitness[target] = fy;
  }
  return sel;
}

}  // namespace lel
