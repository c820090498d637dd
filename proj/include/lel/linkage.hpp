#pragma once

#include <deque>
#include <vector>

#include "lel/problem.hpp"

namespace lel {

// One successful step: the move, its improvement magnitude and the set of
// coordinates that actually moved.
struct ArchiveEntry {
  Vec dx;
  double w;                 // |df|, always > 0
  std::vector<int> active;  // {i : |dx_i| > tau}
};

// Rolling archive of the most recent successful steps. Keeps an incremental
// co-activity count per pair so update passes can filter cheaply.
class SuccessArchive {
 public:
  SuccessArchive(int capacity, int dim);

  // Appends an entry with w = |df|; evicts the oldest beyond capacity.
  // Throws NotAnImprovement unless df < 0.
  void record(const Vec& dx, double df, double tau);

  int size() const { return static_cast<int>(entries_.size()); }
  int capacity() const { return capacity_; }
  int dim() const { return dim_; }
  long total_recorded() const { return total_; }
  const ArchiveEntry& entry(int i) const { return entries_[i]; }  // 0 = oldest
  int coactive_count(int u, int v) const { return coactive_(u, v); }

  // Variables absent from every active support among the k most recent
  // entries (all variables if the archive is empty).
  std::vector<char> recent_inactive_mask(int k) const;

 private:
  int capacity_;
  int dim_;
  long total_ = 0;
  std::deque<ArchiveEntry> entries_;
  Eigen::MatrixXi coactive_;

  void bump(const std::vector<int>& active, int delta);
};

// {i : |dx_i| > tau}, strict inequality.
std::vector<int> active_support(const Vec& dx, double tau);

// Weighted absolute Pearson correlation of coordinates u and v over the
// archive entries where both moved, entry weights w_s. Returns 0 when the
// co-active evidence is thinner than `min_effective` entries (measured as
// the effective sample size of the weights) or either weighted variance
// falls below 1e-24.
double weighted_abs_corr(const SuccessArchive& arch, int u, int v,
                         double min_effective = 3.0);

// EMA update of the interaction score matrix. Pairs inside the union of
// active supports of the `new_entries` most recent entries, co-active in at
// least `min_coactive` entries, move toward |corr| at rate rho. Variables
// absent from all supports in the last `inactivity_window` entries have
// their row and column decayed by (1 - 0.1*rho). Diagonal stays zero.
void update_interactions(Mat& w, const SuccessArchive& arch, double rho,
                         long new_entries, int inactivity_window,
                         int min_coactive);

// Keep the k largest entries per row (ties broken toward the lower column
// index), then return the symmetrized matrix (Ws + Ws^T) / 2.
Mat sparsify_symmetrize(const Mat& w, int k);

}  // namespace lel
