#include "lel/extrusion.hpp"

#include <algorithm>
#include <cmath>

namespace lel {

namespace {

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

}  // namespace

std::pair<double, double> evidence_counts(const SuccessArchive& arch,
                                          const Ordering& ord, int r) {
  double cross = 0.0, within = 0.0;
  for (int i = 0; i < arch.size(); ++i) {
    const ArchiveEntry& e = arch.entry(i);
    if (e.active.empty()) {
      within += e.w;
      continue;
    }
    int lo = ord.inv[e.active.front()];
    int hi = lo;
    for (int v : e.active) {
      const int p = ord.inv[v];
      lo = std::min(lo, p);
      hi = std::max(hi, p);
    }
    if (lo <= r && r < hi)
      cross += e.w;
    else
      within += e.w;
  }
  return {cross, within};
}

void evidence_profile(const SuccessArchive& arch, const Ordering& ord,
                      Vec& cross, Vec& within) {
  const int d = static_cast<int>(ord.pi.size());
  cross = Vec::Zero(d - 1);
  double total = 0.0;
  // difference array over boundaries: entry spanning positions [lo, hi]
  // crosses boundaries lo .. hi-1
  Vec diff = Vec::Zero(d);
  for (int i = 0; i < arch.size(); ++i) {
    const ArchiveEntry& e = arch.entry(i);
    total += e.w;
    if (e.active.empty()) continue;
    int lo = ord.inv[e.active.front()];
    int hi = lo;
    for (int v : e.active) {
      const int p = ord.inv[v];
      lo = std::min(lo, p);
      hi = std::max(hi, p);
    }
    if (lo < hi) {
      diff[lo] += e.w;
      diff[hi] -= e.w;
    }
  }
  double run = 0.0;
  within = Vec::Zero(d - 1);
  for (int r = 0; r + 1 < d; ++r) {
    run += diff[r];
    cross[r] = run;
    within[r] = total - run;
  }
}

void update_barriers(BarrierState& b, const SuccessArchive& arch,
                     const Ordering& ord, double eta, double kappa,
                     double eps) {
  Vec cross, within;
  evidence_profile(arch, ord, cross, within);
  for (int r = 0; r < b.beta.size(); ++r) {
    const double target =
        sigmoid(kappa * (within[r] - cross[r]) / (within[r] + cross[r] + eps));
    const double next = (1.0 - eta) * b.beta[r] + eta * target;
    b.beta[r] = std::clamp(next, 0.0, 1.0);
  }
}

double crossing_prob(double gamma_r, double beta_r, double alpha) {
  return sigmoid(alpha * (gamma_r - beta_r));
}

Vec anchor_density(const Mat& a, const Ordering& ord, double floor_value) {
  const int d = static_cast<int>(ord.pi.size());
  Vec density(d);
  for (int p = 0; p < d; ++p)
    density[p] = a.row(ord.pi[p]).sum() + floor_value;
  return density;
}

int sample_weighted(const Vec& weights, Rng& rng) {
  const double total = weights.sum();
  double u = rng.uniform() * total;
  for (int i = 0; i < weights.size(); ++i) {
    u -= weights[i];
    if (u < 0.0) return i;
  }
  return static_cast<int>(weights.size()) - 1;
}

std::vector<int> sample_anchors(const Mat& a, const Ordering& ord, int k,
                                double floor_value, Rng& rng) {
  const Vec density = anchor_density(a, ord, floor_value);
  std::vector<int> anchors(k);
  for (int i = 0; i < k; ++i) anchors[i] = sample_weighted(density, rng);
  return anchors;
}

Extruder extrude(int anchor, const Vec& pcross, int l_max, int d, Rng& rng) {
  Extruder e{anchor, anchor, anchor, 0.0, 0};
  while (e.r + 1 < d && e.r - anchor < l_max && rng.uniform() < pcross[e.r])
    ++e.r;
  while (e.l > 0 && anchor - e.l < l_max && rng.uniform() < pcross[e.l - 1])
    --e.l;
  return e;
}

double utility(const Extruder& e, const BarrierState& b) {
  double mass = 0.0;
  for (int p = e.l; p <= e.r; ++p) mass += b.credit[p];
  double barrier_mean = 0.0;
  if (e.r > e.l) {
    for (int p = e.l; p < e.r; ++p) barrier_mean += b.beta[p];
    barrier_mean /= static_cast<double>(e.r - e.l);
  }
  return mass / std::sqrt(static_cast<double>(e.width())) -
         0.1 * barrier_mean;
}

ResolvedBlocks resolve(std::vector<Extruder> fresh,
                       std::vector<Extruder> queued, const BarrierState& b,
                       const Vec& density, const Vec& pcross, int l_max,
                       int q_max, Rng& rng) {
  const int d = b.dim();
  std::vector<Extruder> cand = std::move(fresh);
  cand.insert(cand.end(), queued.begin(), queued.end());
  for (auto& e : cand) e.utility = utility(e, b);
  std::sort(cand.begin(), cand.end(), [](const Extruder& x, const Extruder& y) {
    if (x.utility != y.utility) return x.utility > y.utility;
    if (x.anchor != y.anchor) return x.anchor < y.anchor;
    if (x.l != y.l) return x.l < y.l;
    return x.r < y.r;
  });

  ResolvedBlocks out;
  std::vector<char> occupied(d, 0);
  auto free_span = [&](int l, int r) {
    for (int p = l; p <= r; ++p)
      if (occupied[p]) return false;
    return true;
  };
  auto take = [&](const Extruder& e) {
    for (int p = e.l; p <= e.r; ++p) occupied[p] = 1;
    out.accepted.push_back(e);
  };

  for (auto& e : cand) {
    if (free_span(e.l, e.r)) {
      take(e);
      continue;
    }
    if (e.age < q_max) {
      e.age += 1;
      out.queue.push_back(e);
      continue;
    }
    // waited too long: shrink to the largest free run inside the interval
    int best_l = -1, best_r = -2;
    int run_l = -1;
    for (int p = e.l; p <= e.r + 1; ++p) {
      const bool free_here = p <= e.r && !occupied[p];
      if (free_here && run_l < 0) run_l = p;
      if (!free_here && run_l >= 0) {
        if (p - 1 - run_l > best_r - best_l) {
          best_l = run_l;
          best_r = p - 1;
        }
        run_l = -1;
      }
    }
    if (best_l >= 0) {
      Extruder shrunk{std::clamp(e.anchor, best_l, best_r), best_l, best_r,
                      e.utility, 0};
      take(shrunk);
      continue;
    }
    // nothing left of the interval: reseed and grow a fresh extruder
    const int a = sample_weighted(density, rng);
    Extruder seeded = extrude(a, pcross, l_max, d, rng);
    seeded.utility = utility(seeded, b);
    if (free_span(seeded.l, seeded.r))
      take(seeded);
    else {
      seeded.age = 1;
      out.queue.push_back(seeded);
    }
  }
  return out;
}

void add_credit(BarrierState& b, Span span, double magnitude, double rate) {
  for (int p = span.l; p <= span.r; ++p)
    b.credit[p] = (1.0 - rate) * b.credit[p] + rate * magnitude;
}

}  // namespace lel
