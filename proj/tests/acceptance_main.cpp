// End-to-end acceptance suite: runs the full default experiment matrix
// (6 functions x reference algorithm sets x budgets {1e4, 5e4} x seeds 1-15),
// evaluates the numeric/directional targets from the reference results and
// a battery of property checks, and prints one PASS/FAIL line per criterion.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "lel/dg2cc.hpp"
#include "lel/harness.hpp"
#include "lel/jso.hpp"

using namespace lel;

namespace {

struct Criteria {
  int failures = 0;
  void report(const std::string& id, bool pass, const std::string& detail) {
    std::printf("%-4s %-4s %s\n", pass ? "PASS" : "FAIL", id.c_str(),
                detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
  }
};

struct CellStats {
  std::map<std::string, ComparisonResult> by_alg;
};

std::string key(const std::string& fn, long budget) {
  return fn + "@" + std::to_string(budget);
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

double median_of(const std::map<std::string, CellStats>& cells,
                 const std::string& fn, long budget, const std::string& alg) {
  return cells.at(key(fn, budget)).by_alg.at(alg).median;
}

double holm_of(const std::map<std::string, CellStats>& cells,
               const std::string& fn, long budget, const std::string& alg) {
  return cells.at(key(fn, budget)).by_alg.at(alg).p_holm;
}

bool is_best(const std::map<std::string, CellStats>& cells,
             const std::string& fn, long budget, const std::string& alg) {
  const auto& cell = cells.at(key(fn, budget));
  const double m = cell.by_alg.at(alg).median;
  for (const auto& [other, row] : cell.by_alg)
    if (row.median < m) return false;
  return true;
}

// ---- property blocks (criteria 9-13) ----

double oracle_wilcoxon(const std::vector<double>& diffs) {
  std::vector<double> nz;
  for (double d : diffs)
    if (d != 0.0) nz.push_back(d);
  const int n = static_cast<int>(nz.size());
  if (n == 0) return 1.0;
  std::vector<double> rank(n);
  for (int i = 0; i < n; ++i) {
    int below = 0, equal = 0;
    for (int j = 0; j < n; ++j) {
      if (std::abs(nz[j]) < std::abs(nz[i])) ++below;
      if (std::abs(nz[j]) == std::abs(nz[i])) ++equal;
    }
    rank[i] = below + 0.5 * (equal + 1);
  }
  double w_obs = 0.0;
  for (int i = 0; i < n; ++i)
    if (nz[i] > 0.0) w_obs += rank[i];
  long le = 0, ge = 0;
  const long total = 1L << n;
  for (long mask = 0; mask < total; ++mask) {
    double w = 0.0;
    for (int i = 0; i < n; ++i)
      if (mask & (1L << i)) w += rank[i];
    if (w <= w_obs + 1e-9) ++le;
    if (w >= w_obs - 1e-9) ++ge;
  }
  return std::min(1.0, 2.0 * std::min(le, ge) / static_cast<double>(total));
}

bool check_wilcoxon_oracle(std::string& detail) {
  const double alphabet[] = {-2.0, -1.0, 0.0, 1.0, 2.0};
  long checked = 0;
  for (int n = 1; n <= 8; ++n) {
    long combos = 1;
    for (int i = 0; i < n; ++i) combos *= 5;
    for (long code = 0; code < combos; ++code) {
      long c = code;
      std::vector<double> diffs(n);
      for (int i = 0; i < n; ++i) {
        diffs[i] = alphabet[c % 5];
        c /= 5;
      }
      if (wilcoxon_exact_p(diffs) != oracle_wilcoxon(diffs)) {
        detail = "mismatch at n=" + std::to_string(n) +
                 " code=" + std::to_string(code);
        return false;
      }
      ++checked;
    }
  }
  detail = "exact match on " + std::to_string(checked) +
           " sign/tie patterns (n <= 8)";
  return true;
}

bool check_planted_recovery(std::string& detail) {
  Rng rng = rng_stream({"acceptance", "planted"}, 10);
  int good = 0;
  const int instances = 100;
  for (int inst = 0; inst < instances; ++inst) {
    const int d = 96;
    Mat a = Mat::Zero(d, d);
    for (int b = 0; b < 12; ++b)
      for (int i = 8 * b; i < 8 * (b + 1); ++i)
        for (int j = i + 1; j < 8 * (b + 1); ++j)
          a(i, j) = a(j, i) = std::max(0.0, 1.0 + 0.05 * rng.normal());
    const Ordering ord = fiedler_order(a);
    bool contiguous = true;
    for (int b = 0; b < 12 && contiguous; ++b) {
      int lo = ord.inv[8 * b], hi = lo;
      for (int i = 8 * b; i < 8 * (b + 1); ++i) {
        lo = std::min(lo, ord.inv[i]);
        hi = std::max(hi, ord.inv[i]);
      }
      if (hi - lo + 1 != 8) contiguous = false;
    }
    if (contiguous) ++good;
  }
  detail = std::to_string(good) + "/" + std::to_string(instances) +
           " instances fully contiguous (need >= 95)";
  return good >= 95;
}

bool check_invariant_battery(std::string& detail) {
  std::vector<std::string> problems;

  // beta stays in [0,1] under random evidence
  {
    Rng rng = rng_stream({"acceptance", "beta"}, 1);
    const int d = 24;
    const Ordering id = identity_ordering(d);
    SuccessArchive arch(50, d);
    BarrierState b = BarrierState::initial(d);
    for (int it = 0; it < 500; ++it) {
      Vec dx = Vec::Zero(d);
      const int k = 1 + rng.index(8);
      for (int j = 0; j < k; ++j) dx[rng.index(d)] = rng.uniform(-1.0, 1.0);
      arch.record(dx, -rng.uniform(1e-8, 10.0), 1e-8);
      update_barriers(b, arch, id, 0.15, 3.0, 1e-10);
      for (int r = 0; r + 1 < d; ++r)
        if (b.beta[r] < 0.0 || b.beta[r] > 1.0) problems.push_back("beta");
    }
  }
  // W diagonal zero, A symmetric bitwise under random updates
  {
    Rng rng = rng_stream({"acceptance", "wsym"}, 2);
    const int d = 16;
    SuccessArchive arch(40, d);
    Mat w = Mat::Zero(d, d);
    for (int it = 0; it < 300; ++it) {
      Vec dx = Vec::Zero(d);
      const int k = 1 + rng.index(d);
      for (int j = 0; j < k; ++j) dx[rng.index(d)] = rng.uniform(-1.0, 1.0);
      arch.record(dx, -rng.uniform(0.01, 1.0), 1e-8);
      update_interactions(w, arch, 0.3, 1, 20, 3);
    }
    for (int i = 0; i < d; ++i) {
      if (w(i, i) != 0.0) problems.push_back("w-diag");
      for (int j = 0; j < d; ++j)
        if (w(i, j) < 0.0 || w(i, j) > 1.0) problems.push_back("w-range");
    }
    const Mat a = sparsify_symmetrize(w, 5);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        if (a(i, j) != a(j, i)) problems.push_back("a-sym");
  }
  // blockwise trials never touch off-block coordinates
  {
    Rng rng = rng_stream({"acceptance", "block"}, 3);
    const Bounds bounds = Bounds::uniform(12, -5.0, 5.0);
    Config cfg;
    Population pop;
    for (int i = 0; i < 10; ++i) {
      Vec x(12);
      for (int j = 0; j < 12; ++j) x[j] = rng.uniform(-5.0, 5.0);
      pop.members.push_back(x);
      pop.fitness.push_back(x.squaredNorm());
    }
    for (int t = 0; t < 200; ++t) {
      std::vector<int> block;
      for (int j = 0; j < 12; ++j)
        if (rng.uniform() < 0.3) block.push_back(j);
      if (block.empty()) block.push_back(0);
      const int target = rng.index(10);
      const Vec before = pop.members[target];
      const Vec y = blockwise_trial(pop, target, block, cfg, bounds, rng);
      for (int j = 0; j < 12; ++j)
        if (std::find(block.begin(), block.end(), j) == block.end() &&
            y[j] != before[j])
          problems.push_back("off-block");
    }
  }
  // budget exactness and bitwise replay across the whole family
  {
    Config cfg;
    for (Alg alg : {Alg::FullLel, Alg::A1GraphOnly, Alg::A2RandomOrder,
                    Alg::A3NoBarriers, Alg::A4NoQueueing, Alg::A5RandIntervals,
                    Alg::Jso, Alg::Dg2Cc}) {
      const TrialSpec spec{Fn::S2BlockRosen, alg, 6000, 5};
      const TrialRecord a = run_trial(spec, cfg, 32, nullptr);
      const TrialRecord b = run_trial(spec, cfg, 32, nullptr);
      if (a.evals_used != 6000) problems.push_back("budget");
      if (a.best_f != b.best_f) problems.push_back("replay");
    }
  }

  if (problems.empty()) {
    detail = "beta range, W/A structure, off-block isolation, budget "
             "exactness, bitwise replay";
    return true;
  }
  detail = "violations: ";
  for (const auto& p : problems) detail += p + " ";
  return false;
}

bool check_dg2_structures(std::string& detail) {
  bool ok = true;
  std::string parts;
  {
    Problem p = make_problem(Fn::S1Sphere, 96, 10000);
    const auto g = dg2_group(p);
    const bool singles =
        g.groups.size() == 96 &&
        std::all_of(g.groups.begin(), g.groups.end(),
                    [](const auto& grp) { return grp.size() == 1; });
    ok = ok && singles;
    parts += "s1:" + std::to_string(g.groups.size()) + " groups ";
  }
  {
    Problem p = make_problem(Fn::S2BlockRosen, 96, 10000);
    const auto g = dg2_group(p);
    bool blocks = g.groups.size() == 12;
    if (blocks)
      for (int b = 0; b < 12; ++b) {
        std::vector<int> expected;
        for (int i = 8 * b; i < 8 * (b + 1); ++i) expected.push_back(i);
        if (g.groups[b] != expected) blocks = false;
      }
    ok = ok && blocks;
    parts += "s2:" + std::to_string(g.groups.size()) + " groups ";
  }
  {
    Problem p = make_problem(Fn::S6RotEllipsoid, 96, 10000);
    const auto g = dg2_group(p);
    ok = ok && g.groups.size() == 1 && g.groups[0].size() == 96;
    parts += "s6:" + std::to_string(g.groups.size()) + " group";
  }
  detail = parts;
  return ok;
}

bool check_stats_hand_examples(std::string& detail) {
  bool ok = true;
  const auto h = holm_adjust({0.01, 0.02, 0.04});
  ok = ok && std::abs(h[0] - 0.03) < 1e-12 && std::abs(h[1] - 0.04) < 1e-12 &&
       std::abs(h[2] - 0.04) < 1e-12;
  const auto h2 = holm_adjust({0.5, 0.5});
  ok = ok && h2[0] == 1.0 && h2[1] == 1.0;
  ok = ok && holm_adjust({0.2})[0] == 0.2;
  ok = ok && vargha_delaney_a12({5, 6, 7}, {1, 2, 3}) == 1.0;
  ok = ok && vargha_delaney_a12({1, 2, 3}, {1, 2, 3}) == 0.5;
  ok = ok && std::abs(vargha_delaney_a12({1, 2}, {1, 3}) - 0.375) == 0.0;
  detail = ok ? "holm and a12 hand examples exact" : "hand example mismatch";
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  std::string workdir = "acceptance_out";
  std::string results_path;
  int jobs = 0;
  for (int i = 1; i < argc; ++i) {
    if (!std::strcmp(argv[i], "--workdir") && i + 1 < argc)
      workdir = argv[++i];
    else if (!std::strcmp(argv[i], "--results") && i + 1 < argc)
      results_path = argv[++i];
    else if (!std::strcmp(argv[i], "--jobs") && i + 1 < argc)
      jobs = std::atoi(argv[++i]);
  }

  std::filesystem::create_directories(workdir);

  // ---- run (or load) the full reference matrix ----
  std::vector<TrialRecord> records;
  if (results_path.empty()) {
    ExperimentPlan plan;
    plan.jobs = jobs;
    plan.out_csv = workdir + "/results.csv";
    plan.traces_csv = workdir + "/traces.csv";
    std::printf("running the full experiment matrix (%zu trials) ...\n",
                plan.expand().size());
    std::fflush(stdout);
    run_plan(plan);
    records = read_results_csv(plan.out_csv);
  } else {
    records = read_results_csv(results_path);
  }

  const auto rows = stats_report(records, "full_lel");
  write_stats_csv(workdir + "/stats.csv", rows);
  {
    std::ofstream table(workdir + "/stats_table.txt");
    table << render_stats_table(rows);
  }

  std::map<std::string, CellStats> cells;
  for (const auto& r : rows) cells[key(r.function, r.budget)].by_alg[r.algorithm] = r;

  Criteria cr;

  // 1. absolute medians of the full pipeline on the block functions
  {
    const double s2 = median_of(cells, "s2_block_rosen", 10000, "full_lel");
    const double s3 = median_of(cells, "s3_perm_rosen", 10000, "full_lel");
    cr.report("1", std::abs(s2 - 2.4920) <= 0.75 && std::abs(s3 - 2.4875) <= 0.75,
              "full_lel medians s2@1e4=" + fmt(s2) + " (target 2.4920+-0.75), s3@1e4=" +
                  fmt(s3) + " (target 2.4875+-0.75)");
  }
  // 2. separable sphere at the large budget
  {
    const double dg2 = median_of(cells, "s1_sphere", 50000, "dg2_cc");
    const double jso = median_of(cells, "s1_sphere", 50000, "jso");
    cr.report("2", dg2 <= -5.0 && std::abs(jso - (-0.4425)) <= 0.75,
              "s1@5e4 dg2_cc=" + fmt(dg2) + " (need <= -5), jso=" + fmt(jso) +
                  " (target -0.4425+-0.75)");
  }
  // 3. rotated ellipsoid at the large budget
  {
    const double jso = median_of(cells, "s6_rot_ellipsoid", 50000, "jso");
    cr.report("3", std::abs(jso - 2.4879) <= 0.75,
              "s6@5e4 jso=" + fmt(jso) + " (target 2.4879+-0.75)");
  }
  // 4. full pipeline dominance at the small budget with significance
  {
    bool ok = true;
    std::string detail;
    for (const std::string fn : {"s2_block_rosen", "s3_perm_rosen"}) {
      const double full = median_of(cells, fn, 10000, "full_lel");
      for (const std::string other :
           {"a1_graphonly", "a2_randomorder", "a3_nobarriers",
            "a5_randintervals", "jso", "dg2_cc"}) {
        if (!(full < median_of(cells, fn, 10000, other))) {
          ok = false;
          detail += fn + " not below " + other + "; ";
        }
      }
      for (const std::string ab : {"a1_graphonly", "a2_randomorder"}) {
        if (!(holm_of(cells, fn, 10000, ab) < 0.05)) {
          ok = false;
          detail += fn + " vs " + ab + " not significant; ";
        }
      }
    }
    if (ok)
      detail = "full_lel strictly best on s2/s3 @1e4; a1/a2 comparisons significant";
    cr.report("4", ok, detail);
  }
  // 5. graph-only ablation stagnates across budgets
  {
    const double s2a = median_of(cells, "s2_block_rosen", 10000, "a1_graphonly");
    const double s2b = median_of(cells, "s2_block_rosen", 50000, "a1_graphonly");
    const double s3a = median_of(cells, "s3_perm_rosen", 10000, "a1_graphonly");
    const double s3b = median_of(cells, "s3_perm_rosen", 50000, "a1_graphonly");
    cr.report("5", std::abs(s2b - s2a) < 0.3 && std::abs(s3b - s3a) < 0.3,
              "a1 medians s2: " + fmt(s2a) + " -> " + fmt(s2b) + ", s3: " +
                  fmt(s3a) + " -> " + fmt(s3b) + " (|delta| < 0.3)");
  }
  // 6. fixed windows overtake the barriers at the large budget
  {
    const double a3s2 = median_of(cells, "s2_block_rosen", 50000, "a3_nobarriers");
    const double fs2 = median_of(cells, "s2_block_rosen", 50000, "full_lel");
    const double a3s3 = median_of(cells, "s3_perm_rosen", 50000, "a3_nobarriers");
    const double fs3 = median_of(cells, "s3_perm_rosen", 50000, "full_lel");
    const double a3s5 = median_of(cells, "s5_banded_quad", 50000, "a3_nobarriers");
    const double a5s5 = median_of(cells, "s5_banded_quad", 50000, "a5_randintervals");
    const double fs5 = median_of(cells, "s5_banded_quad", 50000, "full_lel");
    const bool ok = a3s2 < fs2 && a3s3 < fs3 && (fs5 - a3s5) >= 0.3 &&
                    (fs5 - a5s5) >= 0.3;
    cr.report("6", ok,
              "@5e4 a3 vs full: s2 " + fmt(a3s2) + "<" + fmt(fs2) + ", s3 " +
                  fmt(a3s3) + "<" + fmt(fs3) + "; s5 a3=" + fmt(a3s5) +
                  " a5=" + fmt(a5s5) + " full=" + fmt(fs5) + " (margin 0.3)");
  }
  // 7. decomposition baseline wins where grouping is decisive
  {
    const bool s5 = is_best(cells, "s5_banded_quad", 50000, "dg2_cc");
    const bool s4a = is_best(cells, "s4_overlap_rosen", 10000, "dg2_cc");
    const bool s4b = is_best(cells, "s4_overlap_rosen", 50000, "dg2_cc");
    cr.report("7", s5 && s4a && s4b,
              std::string("dg2_cc best median: s5@5e4=") + (s5 ? "yes" : "no") +
                  ", s4@1e4=" + (s4a ? "yes" : "no") + ", s4@5e4=" +
                  (s4b ? "yes" : "no"));
  }
  // 8. queueing indistinguishable from union merge on the overlap function
  {
    const double p = holm_of(cells, "s4_overlap_rosen", 10000, "a4_noqueueing");
    cr.report("8", p > 0.05,
              "s4@1e4 full_lel vs a4 adjusted p=" + fmt(p) + " (need > 0.05)");
  }
  // 9-13. property blocks
  {
    std::string detail;
    const bool ok = check_wilcoxon_oracle(detail);
    cr.report("9", ok, detail);
  }
  {
    std::string detail;
    const bool ok = check_planted_recovery(detail);
    cr.report("10", ok, detail);
  }
  {
    std::string detail;
    const bool ok = check_invariant_battery(detail);
    cr.report("11", ok, detail);
  }
  {
    std::string detail;
    const bool ok = check_dg2_structures(detail);
    cr.report("12", ok, detail);
  }
  {
    std::string detail;
    const bool ok = check_stats_hand_examples(detail);
    cr.report("13", ok, detail);
  }

  if (cr.failures > 0) {
    std::printf("%d criterion(s) failed\n", cr.failures);
    return 1;
  }
  std::printf("all 13 criteria passed\n");
  return 0;
}
