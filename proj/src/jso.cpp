#include "lel/jso.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace lel {

int jso_initial_pop(int d) {
  return static_cast<int>(
      std::floor(25.0 * std::log(static_cast<double>(d)) *
                 std::sqrt(static_cast<double>(d))));
}

int jso_pop_at(double t, int n_init, int n_min) {
  return static_cast<int>(std::lround(n_init + t * (n_min - n_init)));
}

namespace {

constexpr double kMemTerminal = -1.0;  // M_CR slot stuck at zero crossover

double lehmer_mean(const std::vector<double>& values,
                   const std::vector<double>& weights) {
  double num = 0.0, den = 0.0;
  for (size_t i = 0; i < values.size(); ++i) {
    num += weights[i] * values[i] * values[i];
    den += weights[i] * values[i];
  }
  return den != 0.0 ? num / den : 0.0;
}

}  // namespace

void jso_run(Problem& problem, Rng& rng, const JsoParams& params) {
  const int d = problem.dim();
  const Bounds& bounds = problem.bounds();
  const double max_nfes = static_cast<double>(problem.budget());
  const int n_init = jso_initial_pop(d);
  const int h = params.history;

  try {
    Population pop = init_population(problem, n_init, rng);
    int np = n_init;

    std::vector<Vec> archive;
    archive.reserve(static_cast<size_t>(params.arc_rate * n_init) + 1);
    std::vector<double> mem_f(h, params.mf_init);
    std::vector<double> mem_cr(h, params.mcr_init);
    mem_f[h - 1] = 0.9;  // frozen slot
    mem_cr[h - 1] = 0.9;
    int mem_pos = 0;

    std::vector<int> ranked(np);
    std::vector<Vec> trials;
    std::vector<double> trial_f, s_f, s_cr, s_w;

    while (true) {
      ranked.resize(np);
      std::iota(ranked.begin(), ranked.end(), 0);
      std::sort(ranked.begin(), ranked.end(), [&](int a, int b) {
        if (pop.fitness[a] != pop.fitness[b])
          return pop.fitness[a] < pop.fitness[b];
        return a < b;
      });

      trials.assign(np, Vec());
      trial_f.assign(np, 0.0);
      s_f.clear();
      s_cr.clear();
      s_w.clear();

      for (int i = 0; i < np; ++i) {
        const double frac = problem.evals_used() / max_nfes;
        const int r = rng.index(h);
        const double mf = (r == h - 1) ? 0.9 : mem_f[r];
        const double mcr = (r == h - 1) ? 0.9 : mem_cr[r];

        double cr;
        if (mcr <= kMemTerminal)
          cr = 0.0;
        else
          cr = std::clamp(rng.normal(mcr, 0.1), 0.0, 1.0);
        if (frac < 0.25)
          cr = std::max(cr, 0.7);
        else if (frac < 0.5)
          cr = std::max(cr, 0.6);

        double f;
        do f = rng.cauchy(mf, 0.1); while (f <= 0.0);
        f = std::min(f, 1.0);
        if (frac < 0.6) f = std::min(f, 0.7);
        const double fw = frac < 0.2 ? 0.7 * f : (frac < 0.4 ? 0.8 * f : 1.2 * f);

        const double p = params.p_max * (1.0 - 0.5 * frac);
        const int p_count =
            std::max(2, static_cast<int>(std::lround(p * np)));
        const int pbest = ranked[rng.index(p_count)];

        int r1;
        do r1 = rng.index(np); while (r1 == i);
        int r2;
        const int pool = np + static_cast<int>(archive.size());
        do r2 = rng.index(pool); while (r2 == i || r2 == r1);
        const Vec& x2 = r2 < np ? pop.members[r2] : archive[r2 - np];

        const Vec& xi = pop.members[i];
        Vec v = xi + fw * (pop.members[pbest] - xi) +
                f * (pop.members[r1] - x2);
        // midpoint repair toward the parent
        for (int j = 0; j < d; ++j) {
          if (v[j] < bounds.lo[j])
            v[j] = 0.5 * (bounds.lo[j] + xi[j]);
          else if (v[j] > bounds.hi[j])
            v[j] = 0.5 * (bounds.hi[j] + xi[j]);
        }

        const int j_rand = rng.index(d);
        Vec u = xi;
        for (int j = 0; j < d; ++j)
          if (rng.uniform() < cr || j == j_rand) u[j] = v[j];

        trial_f[i] = problem.evaluate(u);
        trials[i] = std::move(u);
        s_f.push_back(f);    // placeholder; rewritten on success below
        s_cr.push_back(cr);
      }

      // selection
      for (int i = 0; i < np; ++i) {
        if (trial_f[i] < pop.fitness[i]) {
          archive.push_back(pop.members[i]);
          s_w.push_back(pop.fitness[i] - trial_f[i]);
          s_f[i] = -s_f[i];  // mark success by sign, resolved just below
        }
        if (trial_f[i] <= pop.fitness[i]) {
          pop.members[i] = trials[i];
          pop.fitness[i] = trial_f[i];
        }
      }
      std::vector<double> ok_f, ok_cr;
      for (int i = 0; i < np; ++i)
        if (s_f[i] < 0.0) {
          ok_f.push_back(-s_f[i]);
          ok_cr.push_back(s_cr[i]);
        }

      // success-history memory update
      if (!ok_f.empty()) {
        const double sum_w = std::accumulate(s_w.begin(), s_w.end(), 0.0);
        std::vector<double> weights(s_w);
        for (auto& w : weights) w /= sum_w;
        mem_f[mem_pos] = 0.5 * (mem_f[mem_pos] + lehmer_mean(ok_f, weights));
        const double max_cr = *std::max_element(ok_cr.begin(), ok_cr.end());
        if (mem_cr[mem_pos] <= kMemTerminal || max_cr == 0.0)
          mem_cr[mem_pos] = kMemTerminal;
        else
          mem_cr[mem_pos] =
              0.5 * (mem_cr[mem_pos] + lehmer_mean(ok_cr, weights));
        mem_pos = (mem_pos + 1) % (h - 1);  // frozen slot untouched
      }

      // linear population size reduction, dropping the worst
      const double t = problem.evals_used() / max_nfes;
      int np_next = std::clamp(jso_pop_at(t, n_init, params.n_min),
                               params.n_min, np);
      if (np_next < np) {
        std::vector<int> order(np);
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](int a, int b) {
          if (pop.fitness[a] != pop.fitness[b])
            return pop.fitness[a] < pop.fitness[b];
          return a < b;
        });
        Population reduced;
        reduced.members.reserve(np_next);
        reduced.fitness.reserve(np_next);
        for (int i = 0; i < np_next; ++i) {
          reduced.members.push_back(std::move(pop.members[order[i]]));
          reduced.fitness.push_back(pop.fitness[order[i]]);
        }
        pop = std::move(reduced);
        np = np_next;
      }
      const size_t arc_limit =
          static_cast<size_t>(std::lround(params.arc_rate * np));
      while (archive.size() > arc_limit)
        archive.erase(archive.begin() +
                      rng.index(static_cast<int>(archive.size())));
    }
  } catch (const BudgetExhausted&) {
    // done: the problem tracked the incumbent
  }
}

}  // namespace lel
