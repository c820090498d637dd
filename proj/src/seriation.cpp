#include "lel/seriation.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <numeric>

namespace lel {

namespace {

constexpr double kDegenerateGap = 1e-10;
constexpr double kSignTol = 1e-12;

}  // namespace

Ordering identity_ordering(int d) {
  Ordering ord;
  ord.pi.resize(d);
  ord.inv.resize(d);
  std::iota(ord.pi.begin(), ord.pi.end(), 0);
  std::iota(ord.inv.begin(), ord.inv.end(), 0);
  ord.fiedler = Vec::Zero(d);
  return ord;
}

Mat laplacian(const Mat& a) {
  Mat l = -a;
  for (int i = 0; i < a.rows(); ++i) l(i, i) = a.row(i).sum() - a(i, i);
  return l;
}

std::vector<std::vector<int>> threshold_components(const Mat& a,
                                                   double threshold) {
  const int d = static_cast<int>(a.rows());
  std::vector<int> comp(d, -1);
  std::vector<std::vector<int>> out;
  std::vector<int> stack;
  for (int s = 0; s < d; ++s) {
    if (comp[s] >= 0) continue;
    const int c = static_cast<int>(out.size());
    out.emplace_back();
    stack.push_back(s);
    comp[s] = c;
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      out[c].push_back(u);
      for (int v = 0; v < d; ++v)
        if (v != u && comp[v] < 0 && a(u, v) > threshold) {
          comp[v] = c;
          stack.push_back(v);
        }
    }
    std::sort(out[c].begin(), out[c].end());
  }
  // seeds are scanned in ascending order, so the list is already ordered by
  // smallest member
  return out;
}

Ordering fiedler_order(const Mat& a, const Ordering* prev) {
  const int d = static_cast<int>(a.rows());
  bool any_edge = false;
  for (int i = 0; i < d && !any_edge; ++i)
    for (int j = i + 1; j < d; ++j)
      if (a(i, j) > 0.0) {
        any_edge = true;
        break;
      }
  if (!any_edge) return prev ? *prev : identity_ordering(d);

  auto components = threshold_components(a, 0.0);
  std::stable_sort(components.begin(), components.end(),
                   [](const auto& x, const auto& y) {
                     if (x.size() != y.size()) return x.size() > y.size();
                     return x.front() < y.front();
                   });

  Ordering ord;
  ord.pi.reserve(d);
  ord.fiedler = Vec::Zero(d);
  bool lambda2_set = false;

  for (const auto& comp : components) {
    const int m = static_cast<int>(comp.size());
    if (m == 1) {
      ord.pi.push_back(comp[0]);
      continue;
    }
    Mat sub(m, m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) sub(i, j) = a(comp[i], comp[j]);
    Eigen::SelfAdjointEigenSolver<Mat> es(laplacian(sub));
    const Vec& ev = es.eigenvalues();
    if (!lambda2_set) {
      ord.lambda2 = ev[1];
      lambda2_set = true;
    }
    const bool degenerate = m >= 3 && ev[2] - ev[1] < kDegenerateGap;
    std::vector<int> local(comp);
    if (degenerate || es.info() != Eigen::Success) {
      // ambiguous eigenvector: keep the previous relative order
      if (prev)
        std::sort(local.begin(), local.end(), [&](int x, int y) {
          return prev->inv[x] < prev->inv[y];
        });
    } else {
      Vec v2 = es.eigenvectors().col(1);
      for (int i = 0; i < m; ++i)
        if (std::abs(v2[i]) > kSignTol) {
          if (v2[i] < 0.0) v2 = -v2;
          break;
        }
      std::vector<int> idx(m);
      std::iota(idx.begin(), idx.end(), 0);
      std::sort(idx.begin(), idx.end(), [&](int x, int y) {
        if (v2[x] != v2[y]) return v2[x] < v2[y];
        return comp[x] < comp[y];
      });
      for (int i = 0; i < m; ++i) {
        local[i] = comp[idx[i]];
        ord.fiedler[comp[idx[i]]] = v2[idx[i]];
      }
    }
    for (int v : local) ord.pi.push_back(v);
  }

  ord.inv.assign(d, 0);
  for (int p = 0; p < d; ++p) ord.inv[ord.pi[p]] = p;
  return ord;
}

Vec cross_strength(const Mat& a, const Ordering& ord) {
  const int d = static_cast<int>(a.rows());
  Vec gamma = Vec::Zero(d - 1);
  for (int u = 0; u < d; ++u)
    for (int v = u + 1; v < d; ++v) {
      const double weight = a(u, v);
      if (weight <= 0.0) continue;
      int pl = ord.inv[u];
      int pr = ord.inv[v];
      if (pl > pr) std::swap(pl, pr);
      for (int r = pl; r < pr; ++r) gamma[r] += weight;
    }
  return gamma;
}

}  // namespace lel
