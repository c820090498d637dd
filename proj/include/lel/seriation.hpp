#pragma once

#include <vector>

#include "lel/problem.hpp"

namespace lel {

// A seriated variable arrangement. pi maps position -> variable, inv maps
// variable -> position. fiedler stores the per-variable eigenvector entries
// used for the sort (zeros for singleton components and fallbacks); lambda2
// is the second-smallest eigenvalue of the largest component.
struct Ordering {
  std::vector<int> pi;
  std::vector<int> inv;
  Vec fiedler;
  double lambda2 = 0.0;
};

Ordering identity_ordering(int d);

// L = D - A with D the diagonal of row sums. Every row of L sums to zero.
Mat laplacian(const Mat& a);

// Spectral ordering by the Fiedler vector. Connected components of A are
// seriated independently (components ordered by size descending, then by
// smallest member index) and concatenated, which removes the eigenvector
// ambiguity a disconnected Laplacian would otherwise have. Within a
// component the eigenvector is oriented so its first entry above 1e-12 in
// magnitude is positive, and sort ties fall back to the variable index.
// Degenerate components (lambda3 - lambda2 < 1e-10) keep their relative
// order from `prev` when given, else index order; an all-zero A returns
// `prev` unchanged when given, else the identity ordering.
Ordering fiedler_order(const Mat& a, const Ordering* prev = nullptr);

// Cross-boundary strengths: gamma[r] = sum of A over variable pairs whose
// positions straddle the boundary between positions r and r+1 (0-based,
// r in [0, d-2]).
Vec cross_strength(const Mat& a, const Ordering& ord);

// Connected components of {edges with a_uv > threshold}, each sorted
// ascending; component list ordered by smallest member.
std::vector<std::vector<int>> threshold_components(const Mat& a,
                                                   double threshold);

}  // namespace lel
