#include "lel/dg2cc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

namespace lel {

long dg2_probe_count(int d) {
  return 1 + d + static_cast<long>(d) * (d - 1) / 2;
}

namespace {

// k * u / (1 - k * u) with u the unit roundoff of double arithmetic.
double gamma_round(double k) {
  const double u = std::numeric_limits<double>::epsilon() / 2.0;
  return k * u / (1.0 - k * u);
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

Dg2Grouping dg2_group(Problem& problem) {
  const int d = problem.dim();
  const Bounds& bounds = problem.bounds();
  const long start = problem.evals_used();

  // probes walk from the lower-bound corner toward the box midpoint
  Vec base = bounds.lo;
  Vec mid = 0.5 * (bounds.lo + bounds.hi);

  const double f_base = problem.evaluate(base);
  Vec f_single(d);
  Vec point = base;
  for (int i = 0; i < d; ++i) {
    point[i] = mid[i];
    f_single[i] = problem.evaluate(point);
    point[i] = base[i];
  }

  Dg2Grouping grouping;
  grouping.lambda = Mat::Zero(d, d);
  Mat e_inf(d, d), e_sup(d, d);
  const double g2 = gamma_round(2.0);
  const double gd = gamma_round(static_cast<double>(d));

  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      point[i] = mid[i];
      point[j] = mid[j];
      const double f_pair = problem.evaluate(point);
      point[i] = base[i];
      point[j] = base[j];
      const double lam = std::abs((f_pair - f_single[j]) -
                                  (f_single[i] - f_base));
      grouping.lambda(i, j) = lam;
      grouping.lambda(j, i) = lam;
      e_inf(i, j) = g2 * std::max(std::abs(f_base + f_pair),
                                  std::abs(f_single[i] + f_single[j]));
      e_sup(i, j) = gd * (std::abs(f_base) + std::abs(f_single[i]) +
                          std::abs(f_single[j]) + std::abs(f_pair));
    }
  }

  // confident classifications first, then the gray zone with a threshold
  // interpolated by the confident counts
  long n_sep = 0, n_int = 0;
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      if (grouping.lambda(i, j) > e_sup(i, j))
        ++n_int;
      else if (grouping.lambda(i, j) < e_inf(i, j))
        ++n_sep;
    }

  UnionFind uf(d);
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      const double lam = grouping.lambda(i, j);
      bool interacting;
      if (lam > e_sup(i, j))
        interacting = true;
      else if (lam < e_inf(i, j))
        interacting = false;
      else if (n_sep + n_int > 0)
        interacting = lam > (n_sep * e_inf(i, j) + n_int * e_sup(i, j)) /
                                static_cast<double>(n_sep + n_int);
      else
        interacting = lam > e_sup(i, j);
      if (interacting) uf.unite(i, j);
    }

  std::vector<std::vector<int>> buckets(d);
  for (int i = 0; i < d; ++i) buckets[uf.find(i)].push_back(i);
  for (auto& b : buckets)
    if (!b.empty()) grouping.groups.push_back(std::move(b));

  grouping.eval_cost = problem.evals_used() - start;
  return grouping;
}

namespace {

// Self-adaptive DE state for one group: strategy probability between
// rand/1 and current-to-best/2, scale-factor mixture probability, and a
// normally adapted crossover mean.
struct GroupState {
  std::vector<int> vars;
  std::vector<Vec> members;       // group-restricted coordinates
  std::vector<double> fitness;    // value in the context at evaluation time
  bool initialized = false;
  int generations = 0;
  double p_rand1 = 0.5;
  double p_normal_f = 0.5;
  double cr_mean = 0.5;
  long ns1 = 0, nf1 = 0, ns2 = 0, nf2 = 0;
  long fs1 = 0, ff1 = 0, fs2 = 0, ff2 = 0;
  std::vector<std::pair<double, double>> cr_records;  // (cr, improvement)
};

int group_pop_size(int group_size) {
  return std::clamp(10 * group_size, 5, 50);
}

double adapted_probability(long s1, long f1, long s2, long f2, double fallback) {
  const double num = static_cast<double>(s1) * (s2 + f2);
  const double den = static_cast<double>(s2) * (s1 + f1) + num;
  return den > 0.0 ? num / den : fallback;
}

}  // namespace

CcResult cc_optimize(Problem& problem, const Dg2Grouping& grouping, Rng& rng) {
  const int d = problem.dim();
  const Bounds& bounds = problem.bounds();

  Vec context;
  double context_f;
  if (problem.has_best()) {
    context = problem.best_x();
    context_f = problem.best_f();
  } else {
    context = 0.5 * (bounds.lo + bounds.hi);
    context_f = problem.evaluate(context);
  }

  std::vector<GroupState> states;
  states.reserve(grouping.groups.size());
  for (const auto& g : grouping.groups) {
    GroupState st;
    st.vars = g;
    states.push_back(std::move(st));
  }

  Vec full = context;
  try {
    while (true) {
      for (GroupState& st : states) {
        const int gd = static_cast<int>(st.vars.size());
        const int n = group_pop_size(gd);
        double visit_best_f = std::numeric_limits<double>::infinity();
        Vec visit_best;

        full = context;
        if (!st.initialized) {
          st.members.reserve(n);
          st.fitness.reserve(n);
          for (int i = 0; i < n; ++i) {
            Vec m(gd);
            for (int k = 0; k < gd; ++k)
              m[k] = rng.uniform(bounds.lo[st.vars[k]], bounds.hi[st.vars[k]]);
            for (int k = 0; k < gd; ++k) full[st.vars[k]] = m[k];
            const double f = problem.evaluate(full);
            st.members.push_back(std::move(m));
            st.fitness.push_back(f);
            if (f < visit_best_f) {
              visit_best_f = f;
              visit_best = st.members.back();
            }
          }
          st.initialized = true;
        } else {
          int best = 0;
          for (int i = 1; i < n; ++i)
            if (st.fitness[i] < st.fitness[best]) best = i;

          for (int i = 0; i < n; ++i) {
            const bool rand1 = rng.uniform() < st.p_rand1;
            const bool normal_f = rng.uniform() < st.p_normal_f;
            double f;
            if (normal_f) {
              do f = rng.normal(0.5, 0.3); while (f <= 0.0);
            } else {
              do f = rng.cauchy(0.0, 1.0); while (f <= 0.0);
            }
            f = std::min(f, 1.0);
            const double cr = std::clamp(rng.normal(st.cr_mean, 0.1), 0.0, 1.0);

            Vec v(gd);
            if (rand1) {
              int r1, r2, r3;
              do r1 = rng.index(n); while (r1 == i);
              do r2 = rng.index(n); while (r2 == i || r2 == r1);
              do r3 = rng.index(n); while (r3 == i || r3 == r1 || r3 == r2);
              v = st.members[r1] + f * (st.members[r2] - st.members[r3]);
            } else {
              int r1, r2, r3, r4;
              do r1 = rng.index(n); while (r1 == i);
              do r2 = rng.index(n); while (r2 == i || r2 == r1);
              do r3 = rng.index(n); while (r3 == i || r3 == r1 || r3 == r2);
              do r4 = rng.index(n);
              while (r4 == i || r4 == r1 || r4 == r2 || r4 == r3);
              v = st.members[i] + f * (st.members[best] - st.members[i]) +
                  f * (st.members[r1] - st.members[r2]) +
                  f * (st.members[r3] - st.members[r4]);
            }

            const int j_rand = rng.index(gd);
            Vec u = st.members[i];
            for (int k = 0; k < gd; ++k)
              if (rng.uniform() < cr || k == j_rand)
                u[k] = std::clamp(v[k], bounds.lo[st.vars[k]],
                                  bounds.hi[st.vars[k]]);

            for (int k = 0; k < gd; ++k) full[st.vars[k]] = u[k];
            const double fu = problem.evaluate(full);
            for (int k = 0; k < gd; ++k) full[st.vars[k]] = context[st.vars[k]];

            const bool success = fu < st.fitness[i];
            if (fu < visit_best_f) {
              visit_best_f = fu;
              visit_best = u;
            }
            if (success) {
              st.cr_records.emplace_back(cr, st.fitness[i] - fu);
              st.members[i] = std::move(u);
              st.fitness[i] = fu;
              if (i == best || fu < st.fitness[best]) best = i;
            }
            if (rand1) {
              success ? ++st.ns1 : ++st.nf1;
            } else {
              success ? ++st.ns2 : ++st.nf2;
            }
            if (normal_f) {
              success ? ++st.fs1 : ++st.ff1;
            } else {
              success ? ++st.fs2 : ++st.ff2;
            }
          }

          ++st.generations;
          if (st.generations % 25 == 0 && !st.cr_records.empty()) {
            double num = 0.0, den = 0.0;
            for (const auto& [cr, w] : st.cr_records) {
              num += w * cr;
              den += w;
            }
            if (den > 0.0) st.cr_mean = num / den;
            st.cr_records.clear();
          }
          if (st.generations % 50 == 0) {
            st.p_rand1 = adapted_probability(st.ns1, st.nf1, st.ns2, st.nf2,
                                             st.p_rand1);
            st.p_normal_f = adapted_probability(st.fs1, st.ff1, st.fs2,
                                                st.ff2, st.p_normal_f);
            st.ns1 = st.nf1 = st.ns2 = st.nf2 = 0;
            st.fs1 = st.ff1 = st.fs2 = st.ff2 = 0;
          }
        }

        // sync: the context picks up the group's best found values
        if (visit_best_f < context_f) {
          for (int k = 0; k < gd; ++k)
            context[st.vars[k]] = visit_best[k];
          context_f = visit_best_f;
        }
      }
    }
  } catch (const BudgetExhausted&) {
    // clean termination
  }
  return {problem.best_f(), std::move(context), context_f};
}

void dg2_cc_run(Problem& problem, Rng& rng) {
  try {
    const Dg2Grouping grouping = dg2_group(problem);
    cc_optimize(problem, grouping, rng);
  } catch (const BudgetExhausted&) {
    // probes alone ate the budget
  }
}

}  // namespace lel
