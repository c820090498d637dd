#include "lel/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

namespace lel {

const char* mode_id(Mode m) {
  switch (m) {
    case Mode::Full: return "full_lel";
    case Mode::A1GraphOnly: return "a1_graphonly";
    case Mode::A2RandomOrder: return "a2_randomorder";
    case Mode::A3NoBarriers: return "a3_nobarriers";
    case Mode::A4NoQueueing: return "a4_noqueueing";
    case Mode::A5RandIntervals: return "a5_randintervals";
  }
  return "?";
}

struct DebugSink {
  std::ofstream ordering;
  std::ofstream barriers;
  std::ofstream blocks;
  std::string prefix;

  explicit DebugSink(const std::string& path_prefix) : prefix(path_prefix) {
    ordering.open(prefix + "_ordering.csv");
    ordering << "iteration,positions\n";
    barriers.open(prefix + "_barriers.csv");
    barriers << "iteration,beta\n";
    blocks.open(prefix + "_blocks.csv");
    blocks << "iteration,l,r,width\n";
  }

  void dump_matrix(const std::string& name, const Mat& m) const {
    std::ofstream out(prefix + "_" + name + ".csv");
    for (int i = 0; i < m.rows(); ++i) {
      for (int j = 0; j < m.cols(); ++j)
        out << (j ? "," : "") << m(i, j);
      out << "\n";
    }
  }
};

double structure_confidence(const Mat& adjacency) {
  const int d = static_cast<int>(adjacency.rows());
  if (d == 0) return 0.0;
  double sum = 0.0;
  for (int i = 0; i < d; ++i) sum += adjacency.row(i).maxCoeff();
  return sum / d;
}

LelOptimizer::LelOptimizer(Mode mode, Config cfg, std::uint64_t stream_seed)
    : LelOptimizer(mode, std::move(cfg), Rng(stream_seed)) {}

LelOptimizer::LelOptimizer(Mode mode, Config cfg, Rng rng)
    : mode_(mode), cfg_(std::move(cfg)), rng_(rng) {
  cfg_.validate();
}

LelOptimizer::~LelOptimizer() = default;

void LelOptimizer::enable_dumps(const std::string& path_prefix) {
  dumps_ = std::make_unique<DebugSink>(path_prefix);
}

bool LelOptimizer::in_warmup() const {
  // fewer than 3 recorded successes, or no interaction update yet
  return archive_->size() < 3 || !w_updated_;
}

void LelOptimizer::init(Problem& problem) {
  d_ = problem.dim();
  bounds_ = problem.bounds();
  w_ = Mat::Zero(d_, d_);
  adjacency_ = Mat::Zero(d_, d_);
  barriers_ = BarrierState::initial(d_);
  archive_ = std::make_unique<SuccessArchive>(cfg_.n_archive, d_);
  queue_.clear();
  pop_ = init_population(problem, cfg_.n_pop, rng_);
  if (mode_ == Mode::A2RandomOrder) {
    // frozen random ordering, sampled once from the trial stream
    Ordering ord;
    ord.pi = random_permutation(d_, rng_);
    ord.inv.assign(d_, 0);
    for (int p = 0; p < d_; ++p) ord.inv[ord.pi[p]] = p;
    ord.fiedler = Vec::Zero(d_);
    ordering_ = std::move(ord);
    have_ordering_ = true;
  }
}

void LelOptimizer::run(Problem& problem) {
  try {
    init(problem);
    while (problem.evals_used() < problem.budget()) step(problem);
  } catch (const BudgetExhausted&) {
    // clean termination
  }
  if (dumps_) {
    dumps_->dump_matrix("w", w_);
    dumps_->dump_matrix("a", adjacency_);
  }
}

void LelOptimizer::global_generation(Problem& problem) {
  for (int i = 0; i < pop_.size(); ++i) {
    const double f = rng_.uniform(cfg_.f_min, cfg_.f_max);
    const Vec y = de_rand_1_bin(pop_, i, f, cfg_.cr, bounds_, rng_);
    const double fy = problem.evaluate(y);
    ++counters_.trial_evaluations;
    const Selection sel = greedy_select(pop_, i, y, fy);
    if (sel.improved) archive_->record(sel.dx, sel.df, cfg_.tau_active);
  }
}

void LelOptimizer::post_update() {
  const long fresh = archive_->total_recorded() - last_update_mark_;
  if (archive_->size() >= 3 && fresh > 0) {
    update_interactions(w_, *archive_, cfg_.rho, fresh,
                        cfg_.inactivity_window, cfg_.min_coactive);
    w_updated_ = true;
    last_update_mark_ = archive_->total_recorded();
  }
}

void LelOptimizer::refresh_structure() {
  adjacency_ = sparsify_symmetrize(w_, cfg_.k_sparse);
  if (mode_ == Mode::A1GraphOnly) return;  // no position space at all
  if (mode_ != Mode::A2RandomOrder) {
    ordering_ = fiedler_order(adjacency_, have_ordering_ ? &ordering_ : nullptr);
    have_ordering_ = true;
    ++counters_.fiedler_calls;
  }
  gamma_ = cross_strength(adjacency_, ordering_);
  ++counters_.reseriations;
  if (dumps_) {
    dumps_->ordering << iter_;
    for (int p : ordering_.pi) dumps_->ordering << "," << p;
    dumps_->ordering << "\n";
  }
}

std::vector<Block> LelOptimizer::make_blocks(Rng& rng) {
  std::vector<Block> blocks;
  auto push_span = [&](int l, int r) {
    Block blk;
    blk.span = {l, r};
    blk.has_span = true;
    blk.vars.reserve(r - l + 1);
    for (int p = l; p <= r; ++p) blk.vars.push_back(ordering_.pi[p]);
    blocks.push_back(std::move(blk));
  };

  switch (mode_) {
    case Mode::A1GraphOnly: {
      for (auto& comp :
           threshold_components(adjacency_, cfg_.component_edge_threshold)) {
        Block blk;
        blk.vars = std::move(comp);
        blocks.push_back(std::move(blk));
      }
      break;
    }
    case Mode::A3NoBarriers: {
      for (int l = 0; l < d_; l += cfg_.l_max)
        push_span(l, std::min(l + cfg_.l_max - 1, d_ - 1));
      break;
    }
    case Mode::Full:
    case Mode::A2RandomOrder:
    case Mode::A4NoQueueing:
    case Mode::A5RandIntervals: {
      const int k = cfg_.extruders_for(d_);
      // growth bias: with neutral evidence (saturated strength against a
      // converged barrier) extruders should still sweep mid-scale
      // intervals rather than stall, so the sigmoid carries a constant
      // offset; confident zero-strength boundaries still arrest growth
      Vec pcross(d_ - 1);
      for (int r = 0; r + 1 < d_; ++r) {
        const double g = gamma_[r] < 1.0 ? gamma_[r] : 1.0;
        pcross[r] = 1.0 / (1.0 + std::exp(-(cfg_.alpha * (g - barriers_.beta[r]) +
                                            cfg_.growth_bias)));
      }
      const Vec density = anchor_density(adjacency_, ordering_, cfg_.anchor_floor);

      std::vector<Extruder> fresh;
      fresh.reserve(k);
      if (mode_ == Mode::A5RandIntervals) {
        for (int i = 0; i < k; ++i) {
          const int anchor = rng.index(d_);
          const int h = 1 + rng.index(cfg_.l_max);
          fresh.push_back(Extruder{anchor, std::max(0, anchor - h),
                                   std::min(d_ - 1, anchor + h), 0.0, 0});
        }
      } else {
        for (int i = 0; i < k; ++i) {
          const int anchor = sample_weighted(density, rng);
          fresh.push_back(extrude(anchor, pcross, cfg_.l_max, d_, rng));
          ++counters_.extrude_calls;
        }
      }

      if (mode_ == Mode::A4NoQueueing) {
        // merge overlapping intervals by set union
        std::sort(fresh.begin(), fresh.end(),
                  [](const Extruder& a, const Extruder& b) {
                    if (a.l != b.l) return a.l < b.l;
                    return a.r < b.r;
                  });
        int cur_l = fresh.front().l, cur_r = fresh.front().r;
        for (size_t i = 1; i < fresh.size(); ++i) {
          if (fresh[i].l <= cur_r) {
            cur_r = std::max(cur_r, fresh[i].r);
          } else {
            push_span(cur_l, cur_r);
            cur_l = fresh[i].l;
            cur_r = fresh[i].r;
          }
        }
        push_span(cur_l, cur_r);
      } else {
        ResolvedBlocks resolved =
            resolve(std::move(fresh), std::move(queue_), barriers_, density,
                    pcross, cfg_.l_max, cfg_.q_max, rng);
        queue_ = std::move(resolved.queue);
        for (const Extruder& e : resolved.accepted) push_span(e.l, e.r);
      }
      break;
    }
  }
  return blocks;
}

double LelOptimizer::structure_confidence() const {
  return lel::structure_confidence(adjacency_);
}

void LelOptimizer::run_block_trials(Problem& problem, const Block& block) {
  const int n = pop_.size();
  // width-proportional allocation: every covered coordinate receives the
  // same expected variation effort no matter how the space was carved up
  const int width = static_cast<int>(block.vars.size());
  const int budgeted = static_cast<int>(
      std::lround(cfg_.trials_per_block * width / 16.0));
  const int trials = std::min(std::clamp(budgeted, 1, 3 * cfg_.trials_per_block),
                              n);
  std::vector<int> targets(trials);
  for (int t = 0; t < trials; ++t) {
    int candidate;
    bool dup;
    do {
      candidate = rng_.index(n);
      dup = false;
      for (int s = 0; s < t; ++s)
        if (targets[s] == candidate) dup = true;
    } while (dup);
    targets[t] = candidate;
  }
  for (int t = 0; t < trials; ++t) {
    const int target = targets[t];
    const Vec y = blockwise_trial(pop_, target, block.vars, cfg_, bounds_, rng_);
    const double fy = problem.evaluate(y);
    ++counters_.trial_evaluations;
    const Selection sel = greedy_select(pop_, target, y, fy);
    if (sel.improved) {
      archive_->record(sel.dx, sel.df, cfg_.tau_active);
      if (block.has_span)
        add_credit(barriers_, block.span, -sel.df, cfg_.credit_rate);
    }
  }
}

void LelOptimizer::step(Problem& problem) {
  ++iter_;
  if (in_warmup()) {
    ++counters_.warmup_generations;
    global_generation(problem);
    post_update();
    return;
  }

  if (cadence_ % cfg_.t_reorder == 0) refresh_structure();
  ++cadence_;

  if (mode_ != Mode::A3NoBarriers && mode_ != Mode::A1GraphOnly) {
    update_barriers(barriers_, *archive_, ordering_, cfg_.eta_beta, cfg_.kappa,
                    cfg_.epsilon);
    ++counters_.barrier_updates;
    if (dumps_) {
      dumps_->barriers << iter_;
      for (int r = 0; r < barriers_.beta.size(); ++r)
        dumps_->barriers << "," << barriers_.beta[r];
      dumps_->barriers << "\n";
    }
  }

  if (structure_confidence() < cfg_.confidence_threshold) {
    ++counters_.global_fallback_iterations;
    global_generation(problem);
    post_update();
    return;
  }

  const std::vector<Block> blocks = make_blocks(rng_);
  ++counters_.structured_iterations;
  for (const Block& block : blocks) {
    ++counters_.blocks_processed;
    if (dumps_ && block.has_span)
      dumps_->blocks << iter_ << "," << block.span.l << "," << block.span.r
                     << "," << (block.span.r - block.span.l + 1) << "\n";
    run_block_trials(problem, block);
  }
  post_update();
}

}  // namespace lel
