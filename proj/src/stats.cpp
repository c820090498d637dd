#include "lel/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace lel {

double log_gap(double f_best, double f_star) {
  if (f_best < f_star - 1e-9)
    throw NegativeGap("best objective undershoots the declared optimum");
  const double gap = std::max(f_best - f_star, 0.0);
  return std::log10(gap + 1e-10);
}

double wilcoxon_exact_p(const std::vector<double>& diffs) {
  std::vector<double> nonzero;
  for (double d : diffs)
    if (d != 0.0) nonzero.push_back(d);
  const int n = static_cast<int>(nonzero.size());
  if (n == 0) return 1.0;  // all-zero differences
  if (n > 25)
    throw std::invalid_argument("exact Wilcoxon limited to n <= 25");

  // average ranks over tied magnitudes; doubling makes them exact integers
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return std::abs(nonzero[a]) < std::abs(nonzero[b]);
  });
  std::vector<long> rank2(n);
  int i = 0;
  while (i < n) {
    int j = i;
    while (j + 1 < n &&
           std::abs(nonzero[order[j + 1]]) == std::abs(nonzero[order[i]]))
      ++j;
    const long doubled = (i + 1) + (j + 1);  // 2 * average of ranks i+1..j+1
    for (int k = i; k <= j; ++k) rank2[order[k]] = doubled;
    i = j + 1;
  }

  long w2_obs = 0;
  long w2_max = 0;
  for (int k = 0; k < n; ++k) {
    w2_max += rank2[k];
    if (nonzero[k] > 0.0) w2_obs += rank2[k];
  }

  // exact null distribution of the (doubled) positive rank sum by
  // convolution over sign assignments
  std::vector<double> count(static_cast<size_t>(w2_max) + 1, 0.0);
  count[0] = 1.0;
  long reach = 0;
  for (int k = 0; k < n; ++k) {
    const long r = rank2[k];
    for (long s = reach; s >= 0; --s)
      if (count[s] > 0.0) count[s + r] += count[s];
    reach += r;
  }
  const double total = std::pow(2.0, n);
  double le = 0.0, ge = 0.0;
  for (long s = 0; s <= w2_max; ++s) {
    if (s <= w2_obs) le += count[s];
    if (s >= w2_obs) ge += count[s];
  }
  return std::min(1.0, 2.0 * std::min(le, ge) / total);
}

std::vector<double> holm_adjust(const std::vector<double>& p_raw) {
  const int m = static_cast<int>(p_raw.size());
  std::vector<int> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return p_raw[a] < p_raw[b]; });
  std::vector<double> adjusted(m);
  double running = 0.0;
  for (int i = 0; i < m; ++i) {
    const double step = std::min(1.0, (m - i) * p_raw[order[i]]);
    running = std::max(running, step);
    adjusted[order[i]] = running;
  }
  return adjusted;
}

double vargha_delaney_a12(const std::vector<double>& xs,
                          const std::vector<double>& ys) {
  double score = 0.0;
  for (double x : xs)
    for (double y : ys) {
      if (x > y)
        score += 1.0;
      else if (x == y)
        score += 0.5;
    }
  return score / (static_cast<double>(xs.size()) * ys.size());
}

double quantile_linear(std::vector<double> values, double p) {
  std::sort(values.begin(), values.end());
  const int n = static_cast<int>(values.size());
  if (n == 1) return values[0];
  const double h = (n - 1) * p;
  const int lo = static_cast<int>(std::floor(h));
  const int hi = std::min(lo + 1, n - 1);
  const double frac = h - lo;
  return values[lo] + frac * (values[hi] - values[lo]);
}

std::pair<double, double> median_iqr(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const int n = static_cast<int>(values.size());
  const double median = n % 2 == 1
                            ? values[(n - 1) / 2]
                            : 0.5 * (values[n / 2 - 1] + values[n / 2]);
  const double iqr =
      quantile_linear(values, 0.75) - quantile_linear(values, 0.25);
  return {median, iqr};
}

std::string significance_stars(double p) {
  if (p < 0.001) return "***";
  if (p < 0.01) return "**";
  if (p < 0.05) return "*";
  return "";
}

}  // namespace lel
