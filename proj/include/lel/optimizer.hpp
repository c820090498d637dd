#pragma once

#include <memory>
#include <string>
#include <vector>

#include "lel/config.hpp"
#include "lel/extrusion.hpp"
#include "lel/linkage.hpp"
#include "lel/seriation.hpp"
#include "lel/variation.hpp"

namespace lel {

// Full pipeline plus the five single-component ablations.
enum class Mode {
  Full,
  A1GraphOnly,      // connected components of the thresholded graph
  A2RandomOrder,    // frozen random ordering instead of spectral seriation
  A3NoBarriers,     // fixed non-overlapping windows, no barrier learning
  A4NoQueueing,     // overlapping extrusions merged by set union
  A5RandIntervals,  // random intervals of matched expected length
};

const char* mode_id(Mode m);

struct LelCounters {
  long warmup_generations = 0;
  long structured_iterations = 0;
  long global_fallback_iterations = 0;
  long barrier_updates = 0;
  long fiedler_calls = 0;
  long extrude_calls = 0;
  long reseriations = 0;
  long blocks_processed = 0;
  long trial_evaluations = 0;  // excludes population initialization
};

// One block of variables to vary together. span is the position interval it
// came from (absent for graph-only blocks, which have no position space).
struct Block {
  std::vector<int> vars;
  Span span{-1, -1};
  bool has_span = false;
};

// Optional per-trial CSV dumps for inspection.
struct DebugSink;

// The structure-learning optimizer. One instance per trial, single
// threaded; all randomness comes from the trial stream handed in here.
class LelOptimizer {
 public:
  LelOptimizer(Mode mode, Config cfg, std::uint64_t stream_seed);
  LelOptimizer(Mode mode, Config cfg, Rng rng);
  ~LelOptimizer();

  // init + steps until the budget runs out.
  void run(Problem& problem);

  // Exposed for tests: population init plus mode-specific setup.
  void init(Problem& problem);
  // One iteration; throws BudgetExhausted when the budget dies mid-step.
  void step(Problem& problem);

  // Blocks the current state would search, per mode. Advances `rng`.
  std::vector<Block> make_blocks(Rng& rng);

  // Mean over variables of their strongest sparsified edge.
  double structure_confidence() const;

  const LelCounters& counters() const { return counters_; }
  const Population& population() const { return pop_; }
  const Mat& interaction() const { return w_; }
  const Mat& adjacency() const { return adjacency_; }
  const Ordering& ordering() const { return ordering_; }
  const BarrierState& barriers() const { return barriers_; }
  const SuccessArchive& archive() const { return *archive_; }
  const std::vector<Extruder>& queue() const { return queue_; }
  Mode mode() const { return mode_; }
  bool in_warmup() const;

  void enable_dumps(const std::string& path_prefix);

 private:
  void refresh_structure();
  void global_generation(Problem& problem);
  void run_block_trials(Problem& problem, const Block& block);
  void post_update();

  Mode mode_;
  Config cfg_;
  Rng rng_;
  int d_ = 0;
  Bounds bounds_;
  Population pop_;
  std::unique_ptr<SuccessArchive> archive_;
  Mat w_;
  Mat adjacency_;
  Ordering ordering_;
  Vec gamma_;
  BarrierState barriers_;
  std::vector<Extruder> queue_;
  bool have_ordering_ = false;
  bool w_updated_ = false;
  long last_update_mark_ = 0;
  long cadence_ = 0;
  long iter_ = 0;
  LelCounters counters_;
  std::unique_ptr<DebugSink> dumps_;
};

// Mean over variables of the largest sparsified edge weight.
double structure_confidence(const Mat& adjacency);

}  // namespace lel
