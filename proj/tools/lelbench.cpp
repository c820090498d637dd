#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lel/harness.hpp"

namespace {

using namespace lel;

std::vector<long> parse_longs(const std::string& text) {
  std::vector<long> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::stol(tok));
  return out;
}

// "1..15" or "1,2,7"
std::vector<std::uint64_t> parse_seeds(const std::string& text) {
  std::vector<std::uint64_t> out;
  const auto dots = text.find("..");
  if (dots != std::string::npos) {
    const std::uint64_t lo = std::stoull(text.substr(0, dots));
    const std::uint64_t hi = std::stoull(text.substr(dots + 2));
    for (std::uint64_t s = lo; s <= hi; ++s) out.push_back(s);
    return out;
  }
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::stoull(tok));
  return out;
}

void add_config_flags(CLI::App* cmd, Config& cfg) {
  cmd->add_option("--rho", cfg.rho, "interaction EMA rate");
  cmd->add_option("--k-sparse", cfg.k_sparse, "neighbors kept per variable");
  cmd->add_option("--tau-active", cfg.tau_active, "active support threshold");
  cmd->add_option("--n-archive", cfg.n_archive, "success archive capacity");
  cmd->add_option("--min-coactive", cfg.min_coactive,
                  "co-activity needed before scoring a pair");
  cmd->add_option("--inactivity-window", cfg.inactivity_window,
                  "recent entries scanned for the decay rule");
  cmd->add_option("--t-reorder", cfg.t_reorder, "iterations between reorders");
  cmd->add_option("--eta-beta", cfg.eta_beta, "barrier learning rate");
  cmd->add_option("--kappa", cfg.kappa, "evidence scaling");
  cmd->add_option("--epsilon", cfg.epsilon, "evidence ratio guard");
  cmd->add_option("--alpha", cfg.alpha, "crossing probability scale");
  cmd->add_option("--l-max", cfg.l_max, "maximum half-window size");
  cmd->add_option("--q-max", cfg.q_max, "queue age cap");
  cmd->add_option("--k-extruders", cfg.k_extruders,
                  "extruders per iteration (0 = max(4, d/8))");
  cmd->add_option("--anchor-floor", cfg.anchor_floor, "anchor density floor");
  cmd->add_option("--credit-rate", cfg.credit_rate, "credit EMA rate");
  cmd->add_option("--lambda1", cfg.lambda1, "elite attraction weight");
  cmd->add_option("--lambda2", cfg.lambda2, "differential weight");
  cmd->add_option("--lambda3", cfg.lambda3, "noise weight");
  cmd->add_option("--elite-fraction", cfg.elite_fraction, "elite fraction");
  cmd->add_option("--sigma-floor", cfg.sigma_floor, "elite stddev floor");
  cmd->add_option("--n-pop", cfg.n_pop, "population size");
  cmd->add_option("--f-min", cfg.f_min, "global DE scale factor lower end");
  cmd->add_option("--f-max", cfg.f_max, "global DE scale factor upper end");
  cmd->add_option("--cr", cfg.cr, "global DE crossover rate");
  cmd->add_option("--trials-per-block", cfg.trials_per_block,
                  "trials per block per iteration");
  cmd->add_option("--confidence-threshold", cfg.confidence_threshold,
                  "structure confidence needed for blockwise search");
  cmd->add_option("--component-edge-threshold", cfg.component_edge_threshold,
                  "edge threshold of the graph-only ablation");
  cmd->add_option("--trace-stride", cfg.trace_stride,
                  "evaluations between trace checkpoints");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Loop-extrusion linkage optimizer benchmark harness"};
  app.require_subcommand(1);

  // ---- run ----
  auto* run = app.add_subcommand("run", "execute an experiment plan");
  std::string suite = "synthetic";
  std::string budgets_text = "10000,50000";
  std::string seeds_text = "1..15";
  std::string algs_text = "paper";
  std::string functions_text;
  std::string config_path;
  ExperimentPlan plan;
  run->add_option("--suite", suite, "benchmark suite (synthetic)");
  run->add_option("--dim", plan.dim, "problem dimensionality");
  run->add_option("--budgets", budgets_text, "comma list of budgets");
  run->add_option("--seeds", seeds_text, "seed list: a..b or comma list");
  run->add_option("--algs", algs_text,
                  "'paper' or comma list of algorithm ids");
  run->add_option("--functions", functions_text,
                  "comma list of function ids (default: all)");
  run->add_option("--out", plan.out_csv, "results CSV path");
  run->add_option("--traces", plan.traces_csv, "convergence trace CSV path");
  run->add_option("--jobs", plan.jobs, "parallel trials (0 = hardware)");
  run->add_option("--config", config_path, "JSON config file");
  run->add_option("--debug-dump", plan.debug_dump,
                  "path prefix for per-trial state dumps (single trial only)");
  Config cli_cfg;
  add_config_flags(run, cli_cfg);

  // ---- stats ----
  auto* stats = app.add_subcommand("stats", "comparison table from results");
  std::string stats_in, stats_out = "stats.csv", reference = "full_lel";
  bool print_table = false;
  stats->add_option("--in", stats_in, "results CSV")->required();
  stats->add_option("--reference", reference, "reference algorithm id");
  stats->add_option("--out", stats_out, "stats CSV path");
  stats->add_flag("--table", print_table, "print the aligned text table");

  // ---- traces ----
  auto* traces = app.add_subcommand("traces", "normalize a trace file");
  std::string traces_in, traces_out = "plot.csv";
  traces->add_option("--in", traces_in, "raw trace CSV")->required();
  traces->add_option("--out", traces_out, "plot-ready CSV path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      if (suite != "synthetic") {
        std::cerr << "unknown suite: " << suite << "\n";
        return 1;
      }
      plan.config = config_path.empty() ? Config{} : Config::from_json_file(config_path);
      // explicit CLI flags override the config file
      {
        Config merged = plan.config;
        auto maybe = [&](const char* name, auto member) {
          if (run->count(name) > 0) merged.*member = cli_cfg.*member;
        };
        maybe("--rho", &Config::rho);
        maybe("--k-sparse", &Config::k_sparse);
        maybe("--tau-active", &Config::tau_active);
        maybe("--n-archive", &Config::n_archive);
        maybe("--min-coactive", &Config::min_coactive);
        maybe("--inactivity-window", &Config::inactivity_window);
        maybe("--t-reorder", &Config::t_reorder);
        maybe("--eta-beta", &Config::eta_beta);
        maybe("--kappa", &Config::kappa);
        maybe("--epsilon", &Config::epsilon);
        maybe("--alpha", &Config::alpha);
        maybe("--l-max", &Config::l_max);
        maybe("--q-max", &Config::q_max);
        maybe("--k-extruders", &Config::k_extruders);
        maybe("--anchor-floor", &Config::anchor_floor);
        maybe("--credit-rate", &Config::credit_rate);
        maybe("--lambda1", &Config::lambda1);
        maybe("--lambda2", &Config::lambda2);
        maybe("--lambda3", &Config::lambda3);
        maybe("--elite-fraction", &Config::elite_fraction);
        maybe("--sigma-floor", &Config::sigma_floor);
        maybe("--n-pop", &Config::n_pop);
        maybe("--f-min", &Config::f_min);
        maybe("--f-max", &Config::f_max);
        maybe("--cr", &Config::cr);
        maybe("--trials-per-block", &Config::trials_per_block);
        maybe("--confidence-threshold", &Config::confidence_threshold);
        maybe("--component-edge-threshold", &Config::component_edge_threshold);
        maybe("--trace-stride", &Config::trace_stride);
        plan.config = merged;
      }
      plan.config.validate();
      plan.budgets = parse_longs(budgets_text);
      plan.seeds = parse_seeds(seeds_text);
      if (!functions_text.empty()) {
        plan.functions.clear();
        std::stringstream ss(functions_text);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
          const auto f = fn_from_id(tok);
          if (!f) {
            std::cerr << "unknown function id: " << tok << "\n";
            return 1;
          }
          plan.functions.push_back(*f);
        }
      }
      if (algs_text != "paper") {
        std::stringstream ss(algs_text);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
          const auto a = alg_from_id(tok);
          if (!a) {
            std::cerr << "unknown algorithm id: " << tok << "\n";
            return 1;
          }
          plan.algs_override.push_back(*a);
        }
      }
      const int executed = run_plan(plan);
      std::cout << "executed " << executed << " trials ("
                << plan.expand().size() << " total in plan) -> "
                << plan.out_csv << "\n";
      return 0;
    }
    if (stats->parsed()) {
      const auto records = read_results_csv(stats_in);
      const auto rows = stats_report(records, reference);
      write_stats_csv(stats_out, rows);
      if (print_table) std::cout << render_stats_table(rows);
      std::cout << "wrote " << rows.size() << " rows -> " << stats_out << "\n";
      return 0;
    }
    if (traces->parsed()) {
      export_traces(traces_in, traces_out);
      std::cout << "wrote " << traces_out << "\n";
      return 0;
    }
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 1;
  }
  return 0;
}
