#pragma once

#include <string>
#include <utility>
#include <vector>

#include "lel/errors.hpp"

namespace lel {

// log10(max(f_best - f_star, 0) + 1e-10). Throws NegativeGap when f_best
// undershoots the optimum by more than 1e-9, which signals a broken optimum
// constant rather than a good run.
double log_gap(double f_best, double f_star);

// Exact two-sided paired Wilcoxon signed-rank p-value. Zero differences are
// dropped, tied magnitudes get average ranks, and the null distribution is
// enumerated exactly over all sign assignments (as a rank-sum convolution).
// All-zero differences give p = 1 by convention. n is capped at 25.
double wilcoxon_exact_p(const std::vector<double>& diffs);

// Holm step-down adjustment, returned in input order.
std::vector<double> holm_adjust(const std::vector<double>& p_raw);

// Vargha-Delaney effect size: P(X > Y) + 0.5 P(X = Y) over all cross pairs.
double vargha_delaney_a12(const std::vector<double>& xs,
                          const std::vector<double>& ys);

// Median by the midpoint-of-middle-two convention; quartiles by linear
// interpolation between order statistics (h = (n-1)p), IQR = Q3 - Q1.
std::pair<double, double> median_iqr(std::vector<double> values);

double quantile_linear(std::vector<double> values, double p);

// Significance stars for an adjusted p: *** < 0.001, ** < 0.01, * < 0.05.
std::string significance_stars(double p);

// One row of the comparison table for a (function, budget) cell.
struct ComparisonResult {
  std::string function;
  std::string algorithm;
  long budget = 0;
  int n = 0;
  double median = 0.0;
  double iqr = 0.0;
  bool is_reference = false;
  bool best_median = false;
  double a12 = 0.0;     // vs reference; meaningless for the reference row
  double p_raw = 1.0;   // idem
  double p_holm = 1.0;  // idem
  std::string stars;
};

}  // namespace lel
