#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "gmax/bounds.hpp"

namespace gmax {

enum class ExperimentKind { Comparison, Anticonc, Cmclt, Gumbel, Stein, Maximal };

std::string_view kind_name(ExperimentKind kind) noexcept;

struct ExperimentConfig {
  std::string experiment_id;
  ExperimentKind kind = ExperimentKind::Comparison;
  nlohmann::json parameters = nlohmann::json::object();
  std::uint64_t master_seed = 0;
  unsigned parallelism = 1;

  // Throws ConfigInvalid.
  static ExperimentConfig from_json(const nlohmann::json& j);
  // Excludes `parallelism`, which never affects results.
  nlohmann::json to_json() const;
};

// One empirical quantity at one grid point. The record passes when
// empirical <= bound + allowance; records with enforced == false are reported
// but never fail a run. The bound can be re-evaluated from (formula, formula_inputs).
struct Record {
  std::size_t grid_index = 0;
  std::string label;
  std::string quantity;
  std::uint64_t seed = 0;
  double empirical = 0.0;
  std::optional<double> bound;
  double se = 0.0;
  double allowance = 0.0;
  bool enforced = true;
  bool pass = true;
  std::optional<FormulaId> formula;
  std::map<std::string, double> formula_inputs;
  nlohmann::json extras = nlohmann::json::object();

  double margin() const noexcept;
};

// Whole-grid assertions (trends, thresholds).
struct Check {
  std::string name;
  std::string kind;  // "trend" or "threshold"
  bool pass = true;
  std::string detail;
};

struct RunResult {
  ExperimentConfig config;
  std::vector<Record> records;
  std::vector<Check> checks;
  std::map<std::string, double> calibrated;
  double wall_seconds = 0.0;
  unsigned workers = 1;

  bool passed() const noexcept;
  // With include_runtime == false the output is a pure function of the config
  // and seed, byte for byte.
  nlohmann::json to_json(bool include_runtime = true) const;
};

// Seed of replicate stream `rep` at grid point `grid`.
std::uint64_t task_seed(std::uint64_t master_seed, std::string_view experiment_id,
                        std::size_t grid, std::size_t rep) noexcept;

RunResult run_comparison_experiment(const ExperimentConfig& cfg);
RunResult run_anticonc_experiment(const ExperimentConfig& cfg);
RunResult run_cmclt_experiment(const ExperimentConfig& cfg);
RunResult run_stein_check(const ExperimentConfig& cfg);
RunResult run_gumbel_experiment(const ExperimentConfig& cfg);
RunResult run_maximal_experiment(const ExperimentConfig& cfg);
RunResult run_experiment(const ExperimentConfig& cfg);

// Formulas with a free constant c.
bool is_calibratable(FormulaId id) noexcept;

// Log grid 10^{-3 + k/20}, k = 0..120.
std::vector<double> calibration_grid();

// Smallest grid c such that bound(c) + 3 se >= empirical for every record of
// `formula`. Throws NoDominatingConstant when the grid is exhausted and
// InvalidArgument when the formula has no free constant.
double calibrate_constant(const RunResult& result, FormulaId formula);
double calibrate_constant(const ExperimentConfig& cfg, FormulaId formula);

// Experiments behind the acceptance gate, at their stated sizes.
std::vector<ExperimentConfig> default_suite(std::uint64_t master_seed);

}  // namespace gmax
