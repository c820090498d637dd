#include "doctest.h"

#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "lel/harness.hpp"

using namespace lel;

namespace {

namespace fs = std::filesystem;

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("lel_test_" + std::to_string(::getpid()) + "_" +
            std::to_string(counter()++));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  std::string file(const std::string& name) const {
    return (path / name).string();
  }
  static int& counter() {
    static int c = 0;
    return c;
  }
};

ExperimentPlan tiny_plan(const TempDir& dir) {
  ExperimentPlan plan;
  plan.dim = 16;
  plan.functions = {Fn::S1Sphere};
  plan.algs_override = {Alg::FullLel, Alg::Jso};
  plan.budgets = {1500};
  plan.seeds = {1, 2, 3};
  plan.jobs = 2;
  plan.out_csv = dir.file("results.csv");
  plan.traces_csv = dir.file("traces.csv");
  return plan;
}

}  // namespace

TEST_CASE("algorithm ids round trip") {
  for (Alg a : {Alg::FullLel, Alg::A1GraphOnly, Alg::A2RandomOrder,
                Alg::A3NoBarriers, Alg::A4NoQueueing, Alg::A5RandIntervals,
                Alg::Jso, Alg::Dg2Cc}) {
    const auto back = alg_from_id(alg_id(a));
    REQUIRE(back.has_value());
    CHECK(*back == a);
  }
  CHECK(!alg_from_id("bogus").has_value());
}

TEST_CASE("the default plan mirrors the reference experiment matrix") {
  ExperimentPlan plan;
  CHECK(plan.dim == 96);
  CHECK(plan.budgets == std::vector<long>{10000, 50000});
  CHECK(plan.seeds.size() == 15);
  CHECK(plan.seeds.front() == 1);
  CHECK(plan.seeds.back() == 15);
  // per-function algorithm sets
  CHECK(paper_algorithms(Fn::S1Sphere).size() == 3);
  CHECK(paper_algorithms(Fn::S2BlockRosen).size() == 7);
  CHECK(paper_algorithms(Fn::S3PermRosen).size() == 7);
  CHECK(paper_algorithms(Fn::S4OverlapRosen).size() == 5);
  CHECK(paper_algorithms(Fn::S5BandedQuad).size() == 7);
  CHECK(paper_algorithms(Fn::S6RotEllipsoid).size() == 3);
  // (3+7+7+5+7+3) cells * 2 budgets * 15 seeds
  CHECK(plan.expand().size() == 32 * 2 * 15);
  // A4 only on S4; A2 absent from S4
  const auto s4 = paper_algorithms(Fn::S4OverlapRosen);
  CHECK(std::count(s4.begin(), s4.end(), Alg::A4NoQueueing) == 1);
  CHECK(std::count(s4.begin(), s4.end(), Alg::A2RandomOrder) == 0);
  for (Fn f : {Fn::S1Sphere, Fn::S2BlockRosen, Fn::S3PermRosen,
               Fn::S5BandedQuad, Fn::S6RotEllipsoid}) {
    const auto algs = paper_algorithms(f);
    CHECK(std::count(algs.begin(), algs.end(), Alg::A4NoQueueing) == 0);
  }
}

TEST_CASE("single trial runs replay bitwise") {
  const TrialSpec spec{Fn::S1Sphere, Alg::FullLel, 1200, 1};
  Config cfg;
  const TrialRecord a = run_trial(spec, cfg, 16, nullptr);
  const TrialRecord b = run_trial(spec, cfg, 16, nullptr);
  CHECK(a.best_f == b.best_f);
  CHECK(a.log_gap == b.log_gap);
  CHECK(a.evals_used == b.evals_used);
  CHECK(a.evals_used == 1200);
}

TEST_CASE("trial records carry a consistent log gap") {
  const TrialSpec spec{Fn::S5BandedQuad, Alg::Jso, 1000, 3};
  Config cfg;
  const TrialRecord r = run_trial(spec, cfg, 16, nullptr);
  CHECK(r.log_gap == doctest::Approx(log_gap(r.best_f, 0.0)).epsilon(1e-15));
  CHECK(r.evals_used <= r.budget);
}

TEST_CASE("results csv round trips") {
  TempDir dir;
  std::vector<TrialRecord> records;
  TrialRecord r;
  r.function = "s1_sphere";
  r.algorithm = "jso";
  r.budget = 1000;
  r.seed = 7;
  r.evals_used = 1000;
  r.best_f = 0.12345678901234567;
  r.log_gap = -0.908;
  r.runtime_ms = 12.5;
  records.push_back(r);
  write_results_csv(dir.file("x.csv"), records);
  const auto back = read_results_csv(dir.file("x.csv"));
  REQUIRE(back.size() == 1);
  CHECK(back[0].function == "s1_sphere");
  CHECK(back[0].best_f == r.best_f);  // %.17g survives the round trip
  CHECK(back[0].seed == 7);
}

TEST_CASE("run_plan executes, resumes and stays deterministic") {
  TempDir dir;
  ExperimentPlan plan = tiny_plan(dir);

  const int executed = run_plan(plan);
  CHECK(executed == 6);
  const auto first = read_results_csv(plan.out_csv);
  REQUIRE(first.size() == 6);

  // identical rerun: everything skipped, file unchanged
  const int again = run_plan(plan);
  CHECK(again == 0);
  const auto second = read_results_csv(plan.out_csv);
  REQUIRE(second.size() == 6);
  for (size_t i = 0; i < 6; ++i) {
    CHECK(second[i].best_f == first[i].best_f);
    CHECK(second[i].log_gap == first[i].log_gap);
    CHECK(second[i].seed == first[i].seed);
  }

  // a fresh directory replays the same results modulo runtime
  ExperimentPlan plan2 = tiny_plan(dir);
  plan2.out_csv = dir.file("results2.csv");
  plan2.traces_csv = dir.file("traces2.csv");
  run_plan(plan2);
  const auto third = read_results_csv(plan2.out_csv);
  REQUIRE(third.size() == 6);
  for (size_t i = 0; i < 6; ++i) {
    CHECK(third[i].function == second[i].function);
    CHECK(third[i].algorithm == second[i].algorithm);
    CHECK(third[i].best_f == second[i].best_f);
    CHECK(third[i].log_gap == second[i].log_gap);
  }

  // partial file: drop half the rows, rerun, get the same final file
  auto partial = first;
  partial.resize(3);
  write_results_csv(plan.out_csv, partial);
  const int resumed = run_plan(plan);
  CHECK(resumed == 3);
  const auto fourth = read_results_csv(plan.out_csv);
  REQUIRE(fourth.size() == 6);
  for (size_t i = 0; i < 6; ++i)
    CHECK(fourth[i].best_f == first[i].best_f);
}

TEST_CASE("traces follow the stride and end at the final incumbent") {
  TempDir dir;
  ExperimentPlan plan = tiny_plan(dir);
  plan.algs_override = {Alg::Jso};
  plan.seeds = {1};
  plan.budgets = {1500};
  run_plan(plan);
  const auto traces = read_traces_csv(plan.traces_csv);
  REQUIRE(traces.size() == 15);  // budget 1500 / stride 100
  for (size_t i = 1; i < traces.size(); ++i) {
    CHECK(traces[i].eval == traces[i - 1].eval + 100);
    CHECK(traces[i].best_f <= traces[i - 1].best_f);
  }
  const auto results = read_results_csv(plan.out_csv);
  REQUIRE(results.size() == 1);
  CHECK(traces.back().best_f == results[0].best_f);

  // trace export validates and normalizes
  export_traces(plan.traces_csv, dir.file("plot.csv"));
  const auto plot = read_traces_csv(dir.file("plot.csv"));
  CHECK(plot.size() == traces.size());
}

TEST_CASE("stats report flags dominance and excludes the reference row") {
  std::vector<TrialRecord> records;
  auto add = [&](const char* alg, std::uint64_t seed, double gap) {
    TrialRecord r;
    r.function = "s1_sphere";
    r.algorithm = alg;
    r.budget = 1000;
    r.seed = seed;
    r.evals_used = 1000;
    r.best_f = std::pow(10.0, gap);
    r.log_gap = gap;
    records.push_back(r);
  };
  for (std::uint64_t s = 1; s <= 15; ++s) {
    add("full_lel", s, 1.0 + 0.01 * s);
    add("worse", s, 2.0 + 0.01 * s);   // dominated by the reference
    add("better", s, 0.5 + 0.01 * s);  // dominates the reference
  }
  const auto rows = stats_report(records, "full_lel");
  REQUIRE(rows.size() == 3);
  const auto& ref = rows[0];
  CHECK(ref.is_reference);
  CHECK(ref.algorithm == "full_lel");
  CHECK(!ref.best_median);
  const auto& worse = rows[1];
  CHECK(worse.a12 == 1.0);
  CHECK(worse.p_raw == doctest::Approx(2.0 / 32768.0));
  CHECK(worse.p_holm == doctest::Approx(2.0 * 2.0 / 32768.0));
  CHECK(worse.stars == "***");
  const auto& better = rows[2];
  CHECK(better.a12 == 0.0);
  CHECK(better.best_median);
}

TEST_CASE("stats report rejects unpaired seed sets") {
  std::vector<TrialRecord> records;
  auto add = [&](const char* alg, std::uint64_t seed) {
    TrialRecord r;
    r.function = "s1_sphere";
    r.algorithm = alg;
    r.budget = 1000;
    r.seed = seed;
    r.log_gap = 1.0;
    r.best_f = 10.0;
    records.push_back(r);
  };
  add("full_lel", 1);
  add("full_lel", 2);
  add("jso", 1);
  CHECK_THROWS_AS(stats_report(records, "full_lel"), MissingPairs);
  // and a missing reference in a cell
  std::vector<TrialRecord> no_ref;
  add("jso", 2);
  no_ref.push_back(records.back());
  CHECK_THROWS_AS(stats_report(no_ref, "full_lel"), MissingPairs);
}

TEST_CASE("stats csv and table render without error") {
  std::vector<TrialRecord> records;
  for (std::uint64_t s = 1; s <= 5; ++s)
    for (const char* alg : {"full_lel", "jso"}) {
      TrialRecord r;
      r.function = "s2_block_rosen";
      r.algorithm = alg;
      r.budget = 10000;
      r.seed = s;
      r.best_f = 100.0 + s;
      r.log_gap = 2.0 + 0.01 * s + (alg == std::string("jso") ? 0.5 : 0.0);
      records.push_back(r);
    }
  const auto rows = stats_report(records, "full_lel");
  TempDir dir;
  write_stats_csv(dir.file("stats.csv"), rows);
  std::ifstream in(dir.file("stats.csv"));
  std::string header;
  std::getline(in, header);
  CHECK(header ==
        "function,budget,algorithm,n,median_log_gap,iqr,a12_vs_reference,"
        "p_raw,p_holm,stars,best");
  const std::string table = render_stats_table(rows);
  CHECK(table.find("full_lel") != std::string::npos);
  CHECK(table.find("> ") != std::string::npos);  // best-median marker
}
