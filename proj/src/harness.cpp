#include "lel/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "lel/dg2cc.hpp"
#include "lel/jso.hpp"

namespace lel {

const char* alg_id(Alg a) {
  switch (a) {
    case Alg::FullLel: return "full_lel";
    case Alg::A1GraphOnly: return "a1_graphonly";
    case Alg::A2RandomOrder: return "a2_randomorder";
    case Alg::A3NoBarriers: return "a3_nobarriers";
    case Alg::A4NoQueueing: return "a4_noqueueing";
    case Alg::A5RandIntervals: return "a5_randintervals";
    case Alg::Jso: return "jso";
    case Alg::Dg2Cc: return "dg2_cc";
  }
  return "?";
}

std::optional<Alg> alg_from_id(std::string_view id) {
  for (Alg a : {Alg::FullLel, Alg::A1GraphOnly, Alg::A2RandomOrder,
                Alg::A3NoBarriers, Alg::A4NoQueueing, Alg::A5RandIntervals,
                Alg::Jso, Alg::Dg2Cc})
    if (id == alg_id(a)) return a;
  return std::nullopt;
}

bool alg_is_lel(Alg a) { return a != Alg::Jso && a != Alg::Dg2Cc; }

Mode alg_mode(Alg a) {
  switch (a) {
    case Alg::FullLel: return Mode::Full;
    case Alg::A1GraphOnly: return Mode::A1GraphOnly;
    case Alg::A2RandomOrder: return Mode::A2RandomOrder;
    case Alg::A3NoBarriers: return Mode::A3NoBarriers;
    case Alg::A4NoQueueing: return Mode::A4NoQueueing;
    case Alg::A5RandIntervals: return Mode::A5RandIntervals;
    default: throw std::invalid_argument("not a LEL-family algorithm");
  }
}

std::vector<Alg> paper_algorithms(Fn f) {
  switch (f) {
    case Fn::S1Sphere:
    case Fn::S6RotEllipsoid:
      return {Alg::FullLel, Alg::Jso, Alg::Dg2Cc};
    case Fn::S2BlockRosen:
    case Fn::S3PermRosen:
    case Fn::S5BandedQuad:
      return {Alg::FullLel, Alg::A1GraphOnly, Alg::A2RandomOrder,
              Alg::A3NoBarriers, Alg::A5RandIntervals, Alg::Jso, Alg::Dg2Cc};
    case Fn::S4OverlapRosen:
      return {Alg::FullLel, Alg::A1GraphOnly, Alg::A4NoQueueing, Alg::Jso,
              Alg::Dg2Cc};
  }
  return {};
}

ExperimentPlan::ExperimentPlan() {
  seeds.resize(15);
  for (int s = 0; s < 15; ++s) seeds[s] = static_cast<std::uint64_t>(s + 1);
}

std::vector<Alg> ExperimentPlan::algorithms_for(Fn f) const {
  return algs_override.empty() ? paper_algorithms(f) : algs_override;
}

std::vector<TrialSpec> ExperimentPlan::expand() const {
  std::vector<TrialSpec> specs;
  for (Fn f : functions)
    for (Alg a : algorithms_for(f))
      for (long b : budgets)
        for (std::uint64_t s : seeds) specs.push_back({f, a, b, s});
  return specs;
}

TrialRecord run_trial(const TrialSpec& spec, const Config& cfg, int dim,
                      std::vector<TraceRow>* traces,
                      const std::string& debug_dump) {
  const long stride = traces ? cfg.trace_stride : 0;
  Problem problem = make_problem(spec.fn, dim, spec.budget, stride);
  Rng rng = rng_stream(
      {fn_id(spec.fn), alg_id(spec.alg), std::to_string(spec.budget)},
      spec.seed);

  const auto start = std::chrono::steady_clock::now();
  if (alg_is_lel(spec.alg)) {
    LelOptimizer opt(alg_mode(spec.alg), cfg, rng);
    if (!debug_dump.empty()) opt.enable_dumps(debug_dump);
    opt.run(problem);
  } else if (spec.alg == Alg::Jso) {
    jso_run(problem, rng);
  } else {
    dg2_cc_run(problem, rng);
  }
  const auto stop = std::chrono::steady_clock::now();

  TrialRecord rec;
  rec.function = fn_id(spec.fn);
  rec.algorithm = alg_id(spec.alg);
  rec.budget = spec.budget;
  rec.seed = spec.seed;
  rec.evals_used = problem.evals_used();
  rec.best_f = problem.best_f();
  rec.log_gap = log_gap(problem.best_f(), problem.f_star());
  rec.runtime_ms =
      std::chrono::duration<double, std::milli>(stop - start).count();
  if (traces)
    for (const TracePoint& t : problem.trace())
      traces->push_back({rec.function, rec.algorithm, rec.budget, rec.seed,
                         t.eval, t.best_f});
  return rec;
}

namespace {

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string trial_key(const std::string& fn, const std::string& alg,
                      long budget, std::uint64_t seed) {
  std::ostringstream os;
  os << fn << '|' << alg << '|' << budget << '|' << seed;
  return os.str();
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  fields.push_back(cur);
  return fields;
}

constexpr const char* kResultsHeader =
    "function,algorithm,budget,seed,evals_used,best_f,log_gap,runtime_ms";
constexpr const char* kTracesHeader =
    "function,algorithm,budget,seed,eval,best_f";

std::string record_line(const TrialRecord& r) {
  std::ostringstream os;
  os << r.function << ',' << r.algorithm << ',' << r.budget << ',' << r.seed
     << ',' << r.evals_used << ',' << fmt_double(r.best_f) << ','
     << fmt_double(r.log_gap) << ',' << fmt_double(r.runtime_ms);
  return os.str();
}

std::string trace_line(const TraceRow& t) {
  std::ostringstream os;
  os << t.function << ',' << t.algorithm << ',' << t.budget << ',' << t.seed
     << ',' << t.eval << ',' << fmt_double(t.best_f);
  return os.str();
}

}  // namespace

void write_results_csv(const std::string& path,
                       const std::vector<TrialRecord>& records) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << kResultsHeader << "\n";
  for (const auto& r : records) out << record_line(r) << "\n";
}

std::vector<TrialRecord> read_results_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::vector<TrialRecord> records;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (first) {
      first = false;
      continue;
    }
    const auto f = split_csv_line(line);
    if (f.size() != 8) continue;
    TrialRecord r;
    r.function = f[0];
    r.algorithm = f[1];
    r.budget = std::stol(f[2]);
    r.seed = std::stoull(f[3]);
    r.evals_used = std::stol(f[4]);
    r.best_f = std::stod(f[5]);
    r.log_gap = std::stod(f[6]);
    r.runtime_ms = std::stod(f[7]);
    records.push_back(std::move(r));
  }
  return records;
}

void write_traces_csv(const std::string& path,
                      const std::vector<TraceRow>& rows) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << kTracesHeader << "\n";
  for (const auto& t : rows) out << trace_line(t) << "\n";
}

std::vector<TraceRow> read_traces_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::vector<TraceRow> rows;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (first) {
      first = false;
      continue;
    }
    const auto f = split_csv_line(line);
    if (f.size() != 6) continue;
    TraceRow t;
    t.function = f[0];
    t.algorithm = f[1];
    t.budget = std::stol(f[2]);
    t.seed = std::stoull(f[3]);
    t.eval = std::stol(f[4]);
    t.best_f = std::stod(f[5]);
    rows.push_back(std::move(t));
  }
  return rows;
}

int run_plan(const ExperimentPlan& plan) {
  plan.config.validate();
  const std::vector<TrialSpec> specs = plan.expand();
  if (!plan.debug_dump.empty() && specs.size() != 1)
    throw std::runtime_error("--debug-dump requires a single-trial plan");

  // resume: anything already in the output file is kept as-is
  std::map<std::string, TrialRecord> done;
  {
    std::ifstream probe(plan.out_csv);
    if (probe.good()) {
      probe.close();
      for (auto& r : read_results_csv(plan.out_csv))
        done.emplace(trial_key(r.function, r.algorithm, r.budget, r.seed),
                     std::move(r));
    }
  }
  std::vector<TraceRow> kept_traces;
  if (!plan.traces_csv.empty()) {
    std::ifstream probe(plan.traces_csv);
    if (probe.good()) {
      probe.close();
      for (auto& t : read_traces_csv(plan.traces_csv)) {
        if (done.count(trial_key(t.function, t.algorithm, t.budget, t.seed)))
          kept_traces.push_back(std::move(t));
      }
    }
  }

  std::vector<const TrialSpec*> pending;
  for (const auto& s : specs) {
    const std::string key =
        trial_key(fn_id(s.fn), alg_id(s.alg), s.budget, s.seed);
    if (!done.count(key)) pending.push_back(&s);
  }

  // incremental flush so an interrupted run resumes
  std::ofstream inc(plan.out_csv);
  if (!inc) throw std::runtime_error("cannot write " + plan.out_csv);
  inc << kResultsHeader << "\n";
  for (const auto& [key, r] : done) inc << record_line(r) << "\n";
  inc.flush();

  std::mutex io_mutex;
  std::atomic<size_t> next{0};
  std::atomic<int> executed{0};
  std::vector<TraceRow> fresh_traces;
  std::vector<std::pair<std::string, TrialRecord>> fresh_records;

  const unsigned hw = std::thread::hardware_concurrency();
  int jobs = plan.jobs > 0 ? plan.jobs : static_cast<int>(hw ? hw : 1);
  jobs = std::max(1, std::min<int>(jobs, static_cast<int>(pending.size())));

  auto worker = [&]() {
    std::vector<TraceRow> local_traces;
    while (true) {
      const size_t i = next.fetch_add(1);
      if (i >= pending.size()) break;
      const TrialSpec& spec = *pending[i];
      local_traces.clear();
      TrialRecord rec;
      try {
        rec = run_trial(spec, plan.config, plan.dim,
                        plan.traces_csv.empty() ? nullptr : &local_traces,
                        plan.debug_dump);
      } catch (const std::exception& ex) {
        rec.function = fn_id(spec.fn);
        rec.algorithm = alg_id(spec.alg);
        rec.budget = spec.budget;
        rec.seed = spec.seed;
        rec.evals_used = 0;
        rec.best_f = std::nan("");
        rec.log_gap = std::nan("");
        rec.runtime_ms = 0.0;
        std::lock_guard<std::mutex> lock(io_mutex);
        std::cerr << "trial error [" << rec.function << " " << rec.algorithm
                  << " b=" << rec.budget << " s=" << rec.seed
                  << "]: " << ex.what() << "\n";
      }
      std::lock_guard<std::mutex> lock(io_mutex);
      inc << record_line(rec) << "\n";
      inc.flush();
      fresh_records.emplace_back(
          trial_key(rec.function, rec.algorithm, rec.budget, rec.seed),
          std::move(rec));
      for (auto& t : local_traces) fresh_traces.push_back(std::move(t));
      ++executed;
    }
  };

  std::vector<std::thread> threads;
  for (int t = 0; t < jobs; ++t) threads.emplace_back(worker);
  for (auto& t : threads) t.join();
  inc.close();

  for (auto& [key, rec] : fresh_records) done[key] = std::move(rec);

  // canonical rewrite in plan order
  std::vector<TrialRecord> ordered;
  ordered.reserve(specs.size());
  for (const auto& s : specs) {
    const auto it =
        done.find(trial_key(fn_id(s.fn), alg_id(s.alg), s.budget, s.seed));
    if (it != done.end()) ordered.push_back(it->second);
  }
  write_results_csv(plan.out_csv, ordered);

  if (!plan.traces_csv.empty()) {
    for (auto& t : fresh_traces) kept_traces.push_back(std::move(t));
    // canonical order: plan order, then eval index
    std::map<std::string, size_t> spec_rank;
    for (size_t i = 0; i < specs.size(); ++i)
      spec_rank[trial_key(fn_id(specs[i].fn), alg_id(specs[i].alg),
                          specs[i].budget, specs[i].seed)] = i;
    std::stable_sort(kept_traces.begin(), kept_traces.end(),
                     [&](const TraceRow& a, const TraceRow& b) {
                       const size_t ra = spec_rank[trial_key(
                           a.function, a.algorithm, a.budget, a.seed)];
                       const size_t rb = spec_rank[trial_key(
                           b.function, b.algorithm, b.budget, b.seed)];
                       if (ra != rb) return ra < rb;
                       return a.eval < b.eval;
                     });
    write_traces_csv(plan.traces_csv, kept_traces);
  }
  return executed.load();
}

std::vector<ComparisonResult> stats_report(
    const std::vector<TrialRecord>& records, const std::string& reference) {
  // cells keyed by (function, budget) in first-appearance order
  std::vector<std::pair<std::string, long>> cells;
  std::map<std::pair<std::string, long>,
           std::map<std::string, std::map<std::uint64_t, double>>>
      table;
  std::map<std::pair<std::string, long>, std::vector<std::string>> alg_order;
  for (const auto& r : records) {
    if (!std::isfinite(r.log_gap)) continue;  // errored trials are excluded
    const auto cell = std::make_pair(r.function, r.budget);
    if (!table.count(cell)) cells.push_back(cell);
    auto& algs = table[cell];
    if (!algs.count(r.algorithm)) alg_order[cell].push_back(r.algorithm);
    algs[r.algorithm][r.seed] = r.log_gap;
  }

  std::vector<ComparisonResult> out;
  for (const auto& cell : cells) {
    auto& algs = table[cell];
    const auto ref_it = algs.find(reference);
    if (ref_it == algs.end())
      throw MissingPairs("reference algorithm '" + reference +
                         "' missing from cell " + cell.first + " @ " +
                         std::to_string(cell.second));
    const auto& ref_map = ref_it->second;
    std::vector<double> ref_values;
    for (const auto& [seed, v] : ref_map) ref_values.push_back(v);

    struct Cmp {
      std::string alg;
      double p_raw;
      double a12;
    };
    std::vector<Cmp> comparisons;
    std::vector<ComparisonResult> rows;

    for (const std::string& alg : alg_order[cell]) {
      const auto& seed_map = algs[alg];
      std::vector<double> values;
      for (const auto& [seed, v] : seed_map) values.push_back(v);
      ComparisonResult row;
      row.function = cell.first;
      row.budget = cell.second;
      row.algorithm = alg;
      row.n = static_cast<int>(values.size());
      std::tie(row.median, row.iqr) = median_iqr(values);
      row.is_reference = (alg == reference);
      if (!row.is_reference) {
        if (seed_map.size() != ref_map.size())
          throw MissingPairs("seed sets differ for " + alg + " vs " +
                             reference + " in cell " + cell.first);
        std::vector<double> diffs;
        for (const auto& [seed, v] : seed_map) {
          const auto rv = ref_map.find(seed);
          if (rv == ref_map.end())
            throw MissingPairs("seed sets differ for " + alg + " vs " +
                               reference + " in cell " + cell.first);
          diffs.push_back(v - rv->second);
        }
        row.p_raw = wilcoxon_exact_p(diffs);
        row.a12 = vargha_delaney_a12(values, ref_values);
        comparisons.push_back({alg, row.p_raw, row.a12});
      }
      rows.push_back(std::move(row));
    }

    std::vector<double> p_raws;
    for (const auto& c : comparisons) p_raws.push_back(c.p_raw);
    const std::vector<double> p_holms = holm_adjust(p_raws);
    size_t ci = 0;
    double best = rows.front().median;
    for (const auto& r : rows) best = std::min(best, r.median);
    for (auto& r : rows) {
      if (!r.is_reference) {
        r.p_holm = p_holms[ci];
        r.stars = significance_stars(r.p_holm);
        ++ci;
      }
      r.best_median = (r.median == best);
      out.push_back(std::move(r));
    }
  }
  return out;
}

void write_stats_csv(const std::string& path,
                     const std::vector<ComparisonResult>& rows) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "function,budget,algorithm,n,median_log_gap,iqr,a12_vs_reference,"
         "p_raw,p_holm,stars,best\n";
  for (const auto& r : rows) {
    out << r.function << ',' << r.budget << ',' << r.algorithm << ',' << r.n
        << ',' << fmt_double(r.median) << ',' << fmt_double(r.iqr) << ',';
    if (r.is_reference)
      out << ",,,";
    else
      out << fmt_double(r.a12) << ',' << fmt_double(r.p_raw) << ','
          << fmt_double(r.p_holm) << ',';
    out << r.stars << ',' << (r.best_median ? 1 : 0) << "\n";
  }
}

std::string render_stats_table(const std::vector<ComparisonResult>& rows) {
  std::ostringstream os;
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-18s %6s  %-18s %9s %8s %6s %10s %s\n",
                "function", "budget", "algorithm", "med_gap", "iqr", "a12",
                "p_holm", "sig");
  os << buf;
  std::string last_cell;
  for (const auto& r : rows) {
    const std::string cell = r.function + "@" + std::to_string(r.budget);
    if (!last_cell.empty() && cell != last_cell) os << "\n";
    last_cell = cell;
    const std::string name =
        (r.best_median ? "> " : "  ") + r.algorithm;
    if (r.is_reference) {
      std::snprintf(buf, sizeof buf, "%-18s %6ld  %-18s %9.4f %8.4f %6s %10s %s\n",
                    r.function.c_str(), r.budget, name.c_str(), r.median,
                    r.iqr, "-", "-", "");
    } else {
      std::snprintf(buf, sizeof buf,
                    "%-18s %6ld  %-18s %9.4f %8.4f %6.2f %10.4g %s\n",
                    r.function.c_str(), r.budget, name.c_str(), r.median,
                    r.iqr, r.a12, r.p_holm, r.stars.c_str());
    }
    os << buf;
  }
  return os.str();
}

void export_traces(const std::string& in_path, const std::string& out_path) {
  std::vector<TraceRow> rows = read_traces_csv(in_path);
  std::stable_sort(rows.begin(), rows.end(),
                   [](const TraceRow& a, const TraceRow& b) {
                     if (a.function != b.function) return a.function < b.function;
                     if (a.algorithm != b.algorithm)
                       return a.algorithm < b.algorithm;
                     if (a.budget != b.budget) return a.budget < b.budget;
                     if (a.seed != b.seed) return a.seed < b.seed;
                     return a.eval < b.eval;
                   });
  // sanity: the incumbent can only improve along a trace
  for (size_t i = 1; i < rows.size(); ++i) {
    const TraceRow& p = rows[i - 1];
    const TraceRow& c = rows[i];
    if (p.function == c.function && p.algorithm == c.algorithm &&
        p.budget == c.budget && p.seed == c.seed && c.best_f > p.best_f)
      throw std::runtime_error("trace not monotone for " + c.function + "/" +
                               c.algorithm);
  }
  write_traces_csv(out_path, rows);
}

}  // namespace lel
