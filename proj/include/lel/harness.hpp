#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lel/config.hpp"
#include "lel/diagnostics.hpp"
#include "lel/optimizer.hpp"
#include "lel/stats.hpp"

namespace lel {

enum class Alg {
  FullLel,
  A1GraphOnly,
  A2RandomOrder,
  A3NoBarriers,
  A4NoQueueing,
  A5RandIntervals,
  Jso,
  Dg2Cc,
};

const char* alg_id(Alg a);
std::optional<Alg> alg_from_id(std::string_view id);
bool alg_is_lel(Alg a);
Mode alg_mode(Alg a);  // valid only for the LEL family

// The algorithms reported for each function in the reference experiment.
std::vector<Alg> paper_algorithms(Fn f);

// The unit of persistence: one optimizer run.
struct TrialRecord {
  std::string function;
  std::string algorithm;
  long budget = 0;
  std::uint64_t seed = 0;
  long evals_used = 0;
  double best_f = 0.0;
  double log_gap = 0.0;
  double runtime_ms = 0.0;
};

struct TraceRow {
  std::string function;
  std::string algorithm;
  long budget = 0;
  std::uint64_t seed = 0;
  long eval = 0;
  double best_f = 0.0;
};

struct TrialSpec {
  Fn fn;
  Alg alg;
  long budget;
  std::uint64_t seed;
};

struct ExperimentPlan {
  int dim = 96;
  std::vector<Fn> functions = all_functions();
  std::vector<Alg> algs_override;  // empty = per-function reference sets
  std::vector<long> budgets = {10000, 50000};
  std::vector<std::uint64_t> seeds;  // default 1..15
  int jobs = 0;                      // 0 = hardware concurrency
  std::string out_csv = "results.csv";
  std::string traces_csv;  // empty = traces disabled
  std::string debug_dump;  // per-trial CSV dumps; single-trial plans only
  Config config;

  ExperimentPlan();
  std::vector<TrialSpec> expand() const;
  std::vector<Alg> algorithms_for(Fn f) const;
};

// Runs one trial. The stream is derived from (function, algorithm, budget,
// seed) only, so records replay bitwise.
TrialRecord run_trial(const TrialSpec& spec, const Config& cfg, int dim,
                      std::vector<TraceRow>* traces,
                      const std::string& debug_dump = {});

// Executes the plan with a bounded worker pool, appending records to the
// output CSV as they finish and rewriting it in plan order at the end.
// Trials already present in the output file are skipped. Returns the number
// of freshly executed trials.
int run_plan(const ExperimentPlan& plan);

// results CSV io (fixed header:
// function,algorithm,budget,seed,evals_used,best_f,log_gap,runtime_ms)
void write_results_csv(const std::string& path,
                       const std::vector<TrialRecord>& records);
std::vector<TrialRecord> read_results_csv(const std::string& path);

void write_traces_csv(const std::string& path,
                      const std::vector<TraceRow>& rows);
std::vector<TraceRow> read_traces_csv(const std::string& path);

// Per-cell comparisons against the reference algorithm: median, IQR, effect
// size, exact Wilcoxon p and its Holm adjustment over the cell family.
// Throws MissingPairs when seed sets differ within a cell.
std::vector<ComparisonResult> stats_report(
    const std::vector<TrialRecord>& records, const std::string& reference);

void write_stats_csv(const std::string& path,
                     const std::vector<ComparisonResult>& rows);
std::string render_stats_table(const std::vector<ComparisonResult>& rows);

// Canonically sorted, validated copy of a trace file for plotting.
void export_traces(const std::string& in_path, const std::string& out_path);

}  // namespace lel
