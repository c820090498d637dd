#pragma once

#include <Eigen/Core>

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "lel/errors.hpp"

namespace lel {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

struct Bounds {
  Vec lo;
  Vec hi;

  static Bounds uniform(int d, double lo_v, double hi_v) {
    Bounds b;
    b.lo = Vec::Constant(d, lo_v);
    b.hi = Vec::Constant(d, hi_v);
    return b;
  }

  int dim() const { return static_cast<int>(lo.size()); }

  bool contains(const Vec& x) const {
    return (x.array() >= lo.array()).all() && (x.array() <= hi.array()).all();
  }
};

// Project each coordinate onto [lo, hi].
Vec clamp(Vec x, const Bounds& b);

struct TracePoint {
  long eval;
  double best_f;
};

// Box-bounded minimization problem with budget accounting. All objective
// calls go through evaluate(), which counts them, tracks the incumbent and
// throws BudgetExhausted once the budget is spent. Single-owner within a
// trial; trials are independent.
class Problem {
 public:
  using Objective = std::function<double(const Vec&)>;

  Problem(std::string id, Bounds bounds, double f_star, long budget,
          Objective objective, long trace_stride = 0);

  // Counts one evaluation; clamps out-of-bounds points first.
  double evaluate(const Vec& x);

  const std::string& id() const { return id_; }
  int dim() const { return bounds_.dim(); }
  const Bounds& bounds() const { return bounds_; }
  double f_star() const { return f_star_; }
  long budget() const { return budget_; }
  long evals_used() const { return evals_used_; }
  long evals_left() const { return budget_ - evals_used_; }
  double best_f() const { return best_f_; }
  const Vec& best_x() const { return best_x_; }
  bool has_best() const { return best_x_.size() > 0; }
  const std::vector<TracePoint>& trace() const { return trace_; }

 private:
  std::string id_;
  Bounds bounds_;
  double f_star_;
  long budget_;
  Objective objective_;
  long trace_stride_;
  long evals_used_ = 0;
  double best_f_;
  Vec best_x_;
  Vec scratch_;
  std::vector<TracePoint> trace_;
};

struct Population {
  std::vector<Vec> members;
  std::vector<double> fitness;

  int size() const { return static_cast<int>(members.size()); }
};

class Rng;

// n members sampled uniformly within bounds, all evaluated (n evaluations).
Population init_population(Problem& problem, int n, Rng& rng);

}  // namespace lel
