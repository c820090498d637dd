#include "lel/linkage.hpp"

#include <algorithm>
#include <cmath>

namespace lel {

SuccessArchive::SuccessArchive(int capacity, int dim)
    : capacity_(capacity), dim_(dim), coactive_(Eigen::MatrixXi::Zero(dim, dim)) {}

void SuccessArchive::bump(const std::vector<int>& active, int delta) {
  for (size_t a = 0; a < active.size(); ++a)
    for (size_t b = a + 1; b < active.size(); ++b) {
      coactive_(active[a], active[b]) += delta;
      coactive_(active[b], active[a]) += delta;
    }
}

void SuccessArchive::record(const Vec& dx, double df, double tau) {
  if (df >= 0.0)
    throw NotAnImprovement("archive entries require an improvement (df < 0)");
  ArchiveEntry e;
  e.dx = dx;
  e.w = -df;
  e.active = active_support(dx, tau);
  bump(e.active, +1);
  entries_.push_back(std::move(e));
  ++total_;
  if (static_cast<int>(entries_.size()) > capacity_) {
    bump(entries_.front().active, -1);
    entries_.pop_front();
  }
}

std::vector<char> SuccessArchive::recent_inactive_mask(int k) const {
  std::vector<char> inactive(dim_, 1);
  const int m = size();
  const int start = m > k ? m - k : 0;
  for (int i = start; i < m; ++i)
    for (int v : entries_[i].active) inactive[v] = 0;
  return inactive;
}

std::vector<int> active_support(const Vec& dx, double tau) {
  std::vector<int> active;
  for (int i = 0; i < dx.size(); ++i)
    if (std::abs(dx[i]) > tau) active.push_back(i);
  return active;
}

double weighted_abs_corr(const SuccessArchive& arch, int u, int v,
                         double min_effective) {
  // correlation among active coordinates: only entries where the pair
  // actually co-moved carry evidence about their interaction
  const int m = arch.size();
  double sw = 0.0, sww = 0.0;
  double su = 0.0, sv = 0.0, suu = 0.0, svv = 0.0, suv = 0.0;
  for (int i = 0; i < m; ++i) {
    const ArchiveEntry& e = arch.entry(i);
    const double xu = e.dx[u];
    const double xv = e.dx[v];
    if (!std::binary_search(e.active.begin(), e.active.end(), u)) continue;
    if (!std::binary_search(e.active.begin(), e.active.end(), v)) continue;
    sw += e.w;
    sww += e.w * e.w;
    su += e.w * xu;
    sv += e.w * xv;
    suu += e.w * xu * xu;
    svv += e.w * xv * xv;
    suv += e.w * xu * xv;
  }
  // the improvement weights are heavy-tailed, so a plain entry count
  // overstates the evidence; gate on the effective sample size instead
  if (sw <= 0.0 || sw * sw < min_effective * sww) return 0.0;
  const double n_eff = sw * sw / sww;
  const double mu = su / sw;
  const double mv = sv / sw;
  const double cuu = suu / sw - mu * mu;
  const double cvv = svv / sw - mv * mv;
  if (cuu < 1e-24 || cvv < 1e-24) return 0.0;
  const double cuv = suv / sw - mu * mv;
  double corr = std::abs(cuv) / std::sqrt(cuu * cvv);
  if (corr > 1.0) corr = 1.0;
  // shrink by the small-sample noise floor E|r| ~ 0.8/sqrt(n): spurious
  // pairs score near zero while persistent strong correlations survive,
  // which keeps the interaction weights on the barrier scale
  corr -= 0.8 / std::sqrt(n_eff);
  return corr > 0.0 ? corr : 0.0;
}

void update_interactions(Mat& w, const SuccessArchive& arch, double rho,
                         long new_entries, int inactivity_window,
                         int min_coactive) {
  const int d = static_cast<int>(w.rows());
  const int m = arch.size();
  if (m == 0 || new_entries <= 0) return;
  const int fresh = static_cast<int>(std::min<long>(new_entries, m));

  std::vector<char> in_union(d, 0);
  for (int i = m - fresh; i < m; ++i)
    for (int v : arch.entry(i).active) in_union[v] = 1;
  std::vector<int> vars;
  for (int v = 0; v < d; ++v)
    if (in_union[v]) vars.push_back(v);

  for (size_t a = 0; a < vars.size(); ++a)
    for (size_t b = a + 1; b < vars.size(); ++b) {
      const int u = vars[a];
      const int v = vars[b];
      // thin co-activity scores as zero correlation, so the EMA pulls the
      // pair down instead of freezing a stale estimate
      const double c =
          arch.coactive_count(u, v) < min_coactive
              ? 0.0
              : weighted_abs_corr(arch, u, v,
                                  static_cast<double>(min_coactive));
      if (c == 0.0 && w(u, v) == 0.0) continue;
      const double score = (1.0 - rho) * w(u, v) + rho * c;
      w(u, v) = score;
      w(v, u) = score;
    }

  const double decay = 1.0 - 0.1 * rho;
  const std::vector<char> inactive = arch.recent_inactive_mask(inactivity_window);
  for (int v = 0; v < d; ++v)
    if (inactive[v]) {
      w.row(v) *= decay;
      w.col(v) *= decay;
    }

  w.diagonal().setZero();
}

Mat sparsify_symmetrize(const Mat& w, int k) {
  const int d = static_cast<int>(w.rows());
  Mat ws = Mat::Zero(d, d);
  std::vector<std::pair<double, int>> row;
  for (int i = 0; i < d; ++i) {
    row.clear();
    for (int j = 0; j < d; ++j)
      if (j != i && w(i, j) > 0.0) row.emplace_back(w(i, j), j);
    // ties broken toward the lower column index
    std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) {
      if (a.first != b.first) return a.first > b.first;
      return a.second < b.second;
    });
    const int keep = std::min<int>(k, static_cast<int>(row.size()));
    for (int t = 0; t < keep; ++t) ws(i, row[t].second) = row[t].first;
  }
  Mat a(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) a(i, j) = 0.5 * (ws(i, j) + ws(j, i));
  return a;
}

}  // namespace lel
