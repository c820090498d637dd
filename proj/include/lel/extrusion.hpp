#pragma once

#include <utility>
#include <vector>

#include "lel/linkage.hpp"
#include "lel/rng.hpp"
#include "lel/seriation.hpp"

namespace lel {

// Learned boundary strengths over the seriated ordering plus per-position
// improvement credit. beta has d-1 entries in [0,1], initialized at 0.5;
// credit is a non-negative EMA of improvement magnitudes.
struct BarrierState {
  Vec beta;
  Vec credit;

  static BarrierState initial(int d) {
    BarrierState b;
    b.beta = Vec::Constant(d - 1, 0.5);
    b.credit = Vec::Zero(d);
    return b;
  }

  int dim() const { return static_cast<int>(credit.size()); }
};

// A growing interval in position space. l <= anchor <= r always; age counts
// iterations spent waiting in the overlap queue.
struct Extruder {
  int anchor;
  int l;
  int r;
  double utility = 0.0;
  int age = 0;

  int width() const { return r - l + 1; }
};

struct Span {
  int l;
  int r;
};

struct ResolvedBlocks {
  std::vector<Extruder> accepted;
  std::vector<Extruder> queue;
};

// Improvement-weighted evidence for boundary r (0-based): entries whose
// active positions lie on both sides of r count toward cross, the rest
// toward within.
std::pair<double, double> evidence_counts(const SuccessArchive& arch,
                                          const Ordering& ord, int r);

// All boundaries at once via a difference array; identical to calling
// evidence_counts per boundary.
void evidence_profile(const SuccessArchive& arch, const Ordering& ord,
                      Vec& cross, Vec& within);

// beta_r <- clamp01((1-eta)*beta_r + eta*sigmoid(kappa*(Ew-Ec)/(Ew+Ec+eps)))
void update_barriers(BarrierState& b, const SuccessArchive& arch,
                     const Ordering& ord, double eta, double kappa,
                     double eps);

// sigmoid(alpha * (gamma_r - beta_r))
double crossing_prob(double gamma_r, double beta_r, double alpha);

// Per-position anchor density: row sum of A at the variable seriated to that
// position, plus a small floor so sampling always has full support.
Vec anchor_density(const Mat& a, const Ordering& ord, double floor_value);

// One draw from an unnormalized weight vector.
int sample_weighted(const Vec& weights, Rng& rng);

// K anchor positions sampled with replacement proportional to density.
std::vector<int> sample_anchors(const Mat& a, const Ordering& ord, int k,
                                double floor_value, Rng& rng);

// Bidirectional growth from the anchor: the right end advances while the
// crossing draw succeeds and the half-window cap l_max is not hit, then the
// left end symmetrically. pcross[r] guards the boundary between positions
// r and r+1. Right side draws first.
Extruder extrude(int anchor, const Vec& pcross, int l_max, int d, Rng& rng);

// credit mass / sqrt(width) minus a tenth of the mean interior barrier.
double utility(const Extruder& e, const BarrierState& b);

// Greedy acceptance in decreasing utility order (ties by anchor, then left
// end). Overlapping candidates are re-queued with age + 1; candidates that
// already waited q_max iterations are shrunk to their largest free position
// run, or reseeded when no run is free: a reseeded extruder grows afresh
// from a density-sampled anchor under the current crossing probabilities.
ResolvedBlocks resolve(std::vector<Extruder> fresh,
                       std::vector<Extruder> queued, const BarrierState& b,
                       const Vec& density, const Vec& pcross, int l_max,
                       int q_max, Rng& rng);

// EMA credit deposit over a block's position span.
void add_credit(BarrierState& b, Span span, double magnitude, double rate);

}  // namespace lel
