#pragma once

#include <string>

namespace lel {

// All tunables of the optimizer family in one place. Values mirror the JSON
// configuration file one-to-one and every field has a CLI override.
struct Config {
  // interaction graph
  double rho = 0.3;           // interaction EMA rate
  int k_sparse = 10;          // strongest neighbors kept per variable
  double tau_active = 1e-8;   // |dx| threshold for the active support
  int n_archive = 200;        // success archive capacity
  int min_coactive = 3;       // co-activity required before a pair is scored
  int inactivity_window = 20; // recent entries scanned for the decay rule

  // seriation
  int t_reorder = 5;          // iterations between ordering refreshes

  // barriers
  double eta_beta = 0.15;     // barrier learning rate
  double kappa = 3.0;         // evidence scaling inside the sigmoid
  double epsilon = 1e-10;     // division guard in the evidence ratio
  double alpha = 5.0;         // crossing-probability scale

  // extrusion
  int l_max = 24;             // maximum half-window size
  int q_max = 3;              // queue age cap
  int k_extruders = 0;        // 0 = max(4, d/8)
  double anchor_floor = 1.0;  // density floor for anchor sampling
  double growth_bias = 0.8;  // crossing-probability offset; see extrusion
  double credit_rate = 0.2;   // improvement-credit EMA rate

  // blockwise variation
  double lambda1 = 0.4;       // elite attraction weight
  double lambda2 = 0.5;       // differential weight
  double lambda3 = 0.1;       // Gaussian noise weight
  double elite_fraction = 0.3;
  double sigma_floor = 1e-12; // floor on elite std-dev entries

  // population / global fallback
  int n_pop = 50;
  double f_min = 0.5;         // global DE scale factor range
  double f_max = 0.8;
  double cr = 0.9;

  // orchestration
  int trials_per_block = 4;
  double confidence_threshold = 0.02;
  double component_edge_threshold = 0.1;  // graph-only ablation

  // bookkeeping
  long trace_stride = 100;

  int extruders_for(int d) const {
    return k_extruders > 0 ? k_extruders : (d / 8 > 4 ? d / 8 : 4);
  }

  // Throws std::invalid_argument with the offending field on bad values.
  void validate() const;

  static Config from_json_file(const std::string& path);
  void apply_json_text(const std::string& text);
  std::string to_json_text() const;
};

}  // namespace lel
