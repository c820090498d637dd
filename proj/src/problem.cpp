#include "lel/problem.hpp"

#include <limits>
#include <utility>

#include "lel/rng.hpp"

namespace lel {

Vec clamp(Vec x, const Bounds& b) {
  for (int i = 0; i < x.size(); ++i) {
    if (x[i] < b.lo[i])
      x[i] = b.lo[i];
    else if (x[i] > b.hi[i])
      x[i] = b.hi[i];
  }
  return x;
}

Problem::Problem(std::string id, Bounds bounds, double f_star, long budget,
                 Objective objective, long trace_stride)
    : id_(std::move(id)),
      bounds_(std::move(bounds)),
      f_star_(f_star),
      budget_(budget),
      objective_(std::move(objective)),
      trace_stride_(trace_stride),
      best_f_(std::numeric_limits<double>::infinity()) {
  if (trace_stride_ > 0) trace_.reserve(static_cast<size_t>(budget_ / trace_stride_) + 1);
}

double Problem::evaluate(const Vec& x) {
  if (evals_used_ >= budget_) throw BudgetExhausted{};
  const Vec* point = &x;
  if (!bounds_.contains(x)) {
    scratch_ = clamp(x, bounds_);
    point = &scratch_;
  }
  const double f = objective_(*point);
  ++evals_used_;
  if (f < best_f_) {
    best_f_ = f;
    best_x_ = *point;
  }
  if (trace_stride_ > 0 && evals_used_ % trace_stride_ == 0)
    trace_.push_back({evals_used_, best_f_});
  return f;
}

Population init_population(Problem& problem, int n, Rng& rng) {
  if (n < 4) throw PopulationTooSmall("population size must be at least 4");
  const int d = problem.dim();
  const Bounds& b = problem.bounds();
  Population pop;
  pop.members.reserve(n);
  pop.fitness.reserve(n);
  for (int i = 0; i < n; ++i) {
    Vec x(d);
    for (int j = 0; j < d; ++j) x[j] = rng.uniform(b.lo[j], b.hi[j]);
    const double f = problem.evaluate(x);
    pop.members.push_back(std::move(x));
    pop.fitness.push_back(f);
  }
  return pop;
}

}  // namespace lel
