#include "lel/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace lel {

namespace {

using nlohmann::json;

void require(bool ok, const char* message) {
  if (!ok) throw std::invalid_argument(message);
}

template <typename T>
void pick(const json& j, const char* key, T& out) {
  if (auto it = j.find(key); it != j.end()) out = it->get<T>();
}

}  // namespace

void Config::validate() const {
  require(rho > 0.0 && rho <= 1.0, "rho must be in (0, 1]");
  require(k_sparse >= 1, "k_sparse must be >= 1");
  require(tau_active > 0.0, "tau_active must be positive");
  require(n_archive >= 1, "n_archive must be >= 1");
  require(min_coactive >= 1, "min_coactive must be >= 1");
  require(inactivity_window >= 1, "inactivity_window must be >= 1");
  require(t_reorder >= 1, "t_reorder must be >= 1");
  require(eta_beta > 0.0 && eta_beta <= 1.0, "eta_beta must be in (0, 1]");
  require(kappa > 0.0, "kappa must be positive");
  require(epsilon > 0.0, "epsilon must be positive");
  require(alpha > 0.0, "alpha must be positive");
  require(l_max >= 1, "l_max must be >= 1");
  require(q_max >= 1, "q_max must be >= 1");
  require(k_extruders == 0 || k_extruders >= 4, "k_extruders must be 0 or >= 4");
  require(anchor_floor > 0.0, "anchor_floor must be positive");
  require(growth_bias >= 0.0, "growth_bias must be >= 0");
  require(credit_rate > 0.0 && credit_rate <= 1.0, "credit_rate must be in (0, 1]");
  require(lambda1 >= 0.0 && lambda1 <= 1.0, "lambda1 must be in [0, 1]");
  require(lambda2 >= 0.0 && lambda2 <= 1.0, "lambda2 must be in [0, 1]");
  require(lambda3 >= 0.0 && lambda3 <= 1.0, "lambda3 must be in [0, 1]");
  require(elite_fraction > 0.0 && elite_fraction <= 1.0,
          "elite_fraction must be in (0, 1]");
  require(sigma_floor > 0.0, "sigma_floor must be positive");
  require(n_pop >= 4, "n_pop must be >= 4");
  require(f_min > 0.0 && f_min <= f_max, "need 0 < f_min <= f_max");
  require(cr >= 0.0 && cr <= 1.0, "cr must be in [0, 1]");
  require(trials_per_block >= 1, "trials_per_block must be >= 1");
  require(confidence_threshold >= 0.0, "confidence_threshold must be >= 0");
  require(component_edge_threshold >= 0.0,
          "component_edge_threshold must be >= 0");
  require(trace_stride >= 0, "trace_stride must be >= 0");
}

void Config::apply_json_text(const std::string& text) {
  const json j = json::parse(text);
  pick(j, "rho", rho);
  pick(j, "k_sparse", k_sparse);
  pick(j, "tau_active", tau_active);
  pick(j, "n_archive", n_archive);
  pick(j, "min_coactive", min_coactive);
  pick(j, "inactivity_window", inactivity_window);
  pick(j, "t_reorder", t_reorder);
  pick(j, "eta_beta", eta_beta);
  pick(j, "kappa", kappa);
  pick(j, "epsilon", epsilon);
  pick(j, "alpha", alpha);
  pick(j, "l_max", l_max);
  pick(j, "q_max", q_max);
  pick(j, "k_extruders", k_extruders);
  pick(j, "anchor_floor", anchor_floor);
  pick(j, "growth_bias", growth_bias);
  pick(j, "credit_rate", credit_rate);
  pick(j, "lambda1", lambda1);
  pick(j, "lambda2", lambda2);
  pick(j, "lambda3", lambda3);
  pick(j, "elite_fraction", elite_fraction);
  pick(j, "sigma_floor", sigma_floor);
  pick(j, "n_pop", n_pop);
  pick(j, "f_min", f_min);
  pick(j, "f_max", f_max);
  pick(j, "cr", cr);
  pick(j, "trials_per_block", trials_per_block);
  pick(j, "confidence_threshold", confidence_threshold);
  pick(j, "component_edge_threshold", component_edge_threshold);
  pick(j, "trace_stride", trace_stride);
  validate();
}

Config Config::from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  Config cfg;
  cfg.apply_json_text(buf.str());
  return cfg;
}

std::string Config::to_json_text() const {
  json j;
  j["rho"] = rho;
  j["k_sparse"] = k_sparse;
  j["tau_active"] = tau_active;
  j["n_archive"] = n_archive;
  j["min_coactive"] = min_coactive;
  j["inactivity_window"] = inactivity_window;
  j["t_reorder"] = t_reorder;
  j["eta_beta"] = eta_beta;
  j["kappa"] = kappa;
  j["epsilon"] = epsilon;
  j["alpha"] = alpha;
  j["l_max"] = l_max;
  j["q_max"] = q_max;
  j["k_extruders"] = k_extruders;
  j["anchor_floor"] = anchor_floor;
  j["growth_bias"] = growth_bias;
  j["credit_rate"] = credit_rate;
  j["lambda1"] = lambda1;
  j["lambda2"] = lambda2;
  j["lambda3"] = lambda3;
  j["elite_fraction"] = elite_fraction;
  j["sigma_floor"] = sigma_floor;
  j["n_pop"] = n_pop;
  j["f_min"] = f_min;
  j["f_max"] = f_max;
  j["cr"] = cr;
  j["trials_per_block"] = trials_per_block;
  j["confidence_threshold"] = confidence_threshold;
  j["component_edge_threshold"] = component_edge_threshold;
  j["trace_stride"] = trace_stride;
  return j.dump(2);
}

}  // namespace lel
