// gauss-maxima: command-line front end for the gmax library.
//
// Exit codes: 0 pass, 1 bound violation, 2 configuration or input error.

#include <algorithm>
#include <cerrno>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gmax/acceptance.hpp"
#include "gmax/bootstrap.hpp"
#include "gmax/bounds.hpp"
#include "gmax/error.hpp"
#include "gmax/harness.hpp"
#include "gmax/parallel.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitViolation = 1;
constexpr int kExitConfig = 2;

std::optional<std::uint64_t> env_seed() {
  const char* s = std::getenv("GAUSS_MAXIMA_SEED");
  if (!s || !*s) return std::nullopt;
  char* end = nullptr;
  errno = 0;
  const unsigned long long v = std::strtoull(s, &end, 10);
  if (errno != 0 || *end != '\0' || s[0] == '-') {
    throw gmax::Error(gmax::Errc::ConfigInvalid, "GAUSS_MAXIMA_SEED must be an unsigned integer");
  }
  return v;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string num(const json& v) { return v.is_null() ? "" : v.dump(); }

void write_records_csv(std::ostream& out, const json& result, bool header) {
  if (header) out << "experiment_id,grid_index,label,quantity,empirical,bound,allowance,margin,se,enforced,pass,formula,seed\n";
  const std::string id = result["config"]["experiment_id"].get<std::string>();
  for (const auto& r : result["records"]) {
    out << csv_field(id) << ',' << r["grid_index"].dump() << ',' << csv_field(r["label"].get<std::string>()) << ','
        << csv_field(r["quantity"].get<std::string>()) << ',' << num(r["empirical"]) << ',' << num(r["bound"]) << ','
        << num(r["allowance"]) << ',' << num(r["margin"]) << ',' << num(r["se"]) << ','
        << (r["enforced"].get<bool>() ? 1 : 0) << ',' << (r["pass"].get<bool>() ? 1 : 0) << ','
        << (r["formula"].is_null() ? "" : r["formula"].get<std::string>()) << ',' << r["seed"].dump() << '\n';
  }
}

void dump_violations(const gmax::RunResult& res) {
  for (const auto& r : res.records) {
    if (r.enforced && !r.pass) {
      std::cerr << "violation: " << res.config.experiment_id << " grid " << r.grid_index << " (" << r.label << ") "
                << r.quantity << " = " << r.empirical << " > " << r.bound.value_or(0.0) << " + " << r.allowance
                << ", seed " << r.seed << "\n";
    }
  }
  for (const auto& c : res.checks) {
    if (!c.pass) std::cerr << "failed check: " << res.config.experiment_id << " " << c.name << ": " << c.detail << "\n";
  }
}

int cmd_run(const std::string& config_path, const std::string& out_dir, unsigned workers, bool force) {
  std::ifstream in(config_path);
  if (!in) throw gmax::Error(gmax::Errc::IoError, "cannot open " + config_path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw gmax::Error(gmax::Errc::ConfigInvalid, config_path + ": " + e.what());
  }
  std::vector<gmax::ExperimentConfig> configs;
  if (j.is_array()) {
    for (const auto& e : j) configs.push_back(gmax::ExperimentConfig::from_json(e));
  } else {
    configs.push_back(gmax::ExperimentConfig::from_json(j));
  }
  const auto seed = env_seed();
  bool all_pass = true;
  for (auto& cfg : configs) {
    if (seed) cfg.master_seed = *seed;
    if (workers > 0) cfg.parallelism = workers;
    fs::path dir;
    if (!out_dir.empty()) {
      dir = fs::path(out_dir) / cfg.experiment_id;
      if (fs::exists(dir / "result.json") && !force) {
        throw gmax::Error(gmax::Errc::ConfigInvalid,
                          "experiment '" + cfg.experiment_id + "' already has results in " + out_dir);
      }
    }
    const gmax::RunResult res = gmax::run_experiment(cfg);
    const json out = res.to_json(true);
    if (!dir.empty()) {
      fs::create_directories(dir);
      std::ofstream(dir / "result.json") << out.dump(2) << '\n';
      std::ofstream csv(dir / "records.csv");
      write_records_csv(csv, out, true);
    }
    std::cout << cfg.experiment_id << ": " << (res.passed() ? "pass" : "FAIL") << " (" << res.records.size()
              << " records, " << res.wall_seconds << " s)\n";
    for (const auto& [name, c] : res.calibrated) std::cout << "  calibrated " << name << " c = " << c << "\n";
    if (!res.passed()) {
      dump_violations(res);
      all_pass = false;
    }
  }
  return all_pass ? kExitPass : kExitViolation;
}

int cmd_bound(const std::string& id, const std::string& inputs) {
  const auto formula = gmax::parse_formula_id(id);
  if (!formula) {
    std::string names;
    for (auto f : gmax::all_formulas()) names += " " + std::string(gmax::formula_name(f));
    throw gmax::Error(gmax::Errc::InvalidArgument, "unknown formula '" + id + "'; known:" + names);
  }
  std::cout << gmax::to_json(gmax::evaluate_bound(*formula, gmax::parse_inputs(inputs))).dump(2) << '\n';
  return kExitPass;
}

int cmd_bootstrap(const std::string& data, std::size_t replicates, const std::vector<double>& alphas,
                  const std::string& reference, std::optional<std::uint64_t> seed_opt, const std::string& out_dir,
                  const std::string& path, unsigned workers) {
  const gmax::Dataset ds = gmax::load_dataset(data);
  const std::uint64_t seed = seed_opt ? *seed_opt : env_seed().value_or(gmax::kDefaultMasterSeed);
  const auto rpath = path == "multiplier" ? gmax::ReplicatePath::Multiplier : gmax::ReplicatePath::Covariance;
  const unsigned w = workers > 0 ? workers : gmax::default_workers();
  gmax::BootstrapSeeds seeds{gmax::derive_seed(seed, 0), std::nullopt};
  gmax::SampleSet reps = gmax::multiplier_replicates(ds, replicates, seeds.multiplier, rpath, w);
  std::optional<gmax::SampleSet> analog;
  std::optional<double> dh;
  if (!reference.empty()) {
    const gmax::CovarianceSpec cov = gmax::build_covariance(gmax::read_matrix_csv(reference));
    seeds.analog = gmax::derive_seed(seed, 1);
    analog = gmax::gaussian_analog_replicates(cov, replicates, *seeds.analog, w);
    dh = gmax::delta_hat(ds, cov.entries());
  }
  const gmax::BootstrapRun run{std::move(reps), std::move(analog), dh, seeds};

  json out;
  out["n"] = ds.n();
  out["p"] = ds.p();
  out["replicates"] = replicates;
  out["seed"] = seed;
  out["statistic"] = gmax::normalized_sum(ds).maxCoeff();
  out["quantiles"] = json::array();
  for (double a : alphas) out["quantiles"].push_back({{"alpha", a}, {"value", gmax::bootstrap_quantile(run, a)}});
  if (dh) {
    out["delta_hat"] = *dh;
    out["ks_to_analog"] = gmax::kolmogorov_distance(run.replicates, *run.gaussian_analog);
  }
  std::cout << out.dump(2) << '\n';
  if (!out_dir.empty()) gmax::write_bootstrap_run(out_dir, run, alphas);
  return kExitPass;
}

int cmd_verify(const std::string& suite) {
  const auto results = gmax::run_acceptance({suite}, env_seed().value_or(gmax::kDefaultMasterSeed), std::cout);
  for (const auto& r : results) {
    if (!r.pass) return kExitViolation;
  }
  return kExitPass;
}

int cmd_report(const std::string& run_dir) {
  std::vector<fs::path> files;
  if (fs::is_regular_file(run_dir)) {
    files.push_back(run_dir);
  } else if (fs::exists(fs::path(run_dir) / "result.json")) {
    files.push_back(fs::path(run_dir) / "result.json");
  } else if (fs::is_directory(run_dir)) {
    for (const auto& e : fs::directory_iterator(run_dir)) {
      if (fs::exists(e.path() / "result.json")) files.push_back(e.path() / "result.json");
    }
    std::sort(files.begin(), files.end());
  }
  if (files.empty()) throw gmax::Error(gmax::Errc::IoError, "no result.json under " + run_dir);
  bool header = true;
  for (const auto& f : files) {
    std::ifstream in(f);
    json j;
    try {
      j = json::parse(in);
    } catch (const json::exception& e) {
      throw gmax::Error(gmax::Errc::ParseError, f.string() + ": " + e.what());
    }
    write_records_csv(std::cout, j, header);
    header = false;
  }
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gaussian maxima: bound evaluators, bootstrap and Monte Carlo harness"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "run an experiment config (object or array)");
  std::string config_path, out_dir;
  unsigned workers = 0;
  bool force = false;
  run->add_option("config", config_path, "experiment config JSON")->required();
  run->add_option("--out", out_dir, "output directory");
  run->add_option("--workers", workers, "worker threads (default: config)");
  run->add_flag("--force", force, "overwrite existing results");

  auto* bound = app.add_subcommand("bound", "evaluate one bound formula");
  std::string formula, inputs;
  bound->add_option("formula_id", formula, "formula id, e.g. kolmogorov_explicit")->required();
  bound->add_option("--inputs", inputs, "comma-separated key=value pairs");

  auto* boot = app.add_subcommand("bootstrap", "multiplier bootstrap quantiles for a dataset");
  std::string data, reference, path = "covariance";
  std::size_t replicates = 1000;
  std::vector<double> alphas;
  std::optional<std::uint64_t> boot_seed;
  boot->add_option("data", data, "CSV or GMAX1 binary observation matrix")->required();
  boot->add_option("--replicates", replicates, "bootstrap replicates")->check(CLI::PositiveNumber);
  boot->add_option("--alpha", alphas, "quantile levels")->check(CLI::Range(0.0, 1.0));
  boot->add_option("--reference", reference, "population covariance CSV for the analog law");
  boot->add_option("--seed", boot_seed, "seed (default: GAUSS_MAXIMA_SEED or built-in)");
  boot->add_option("--out", out_dir, "write replicates and manifest here");
  boot->add_option("--path", path, "covariance | multiplier")->check(CLI::IsMember({"covariance", "multiplier"}));
  boot->add_option("--workers", workers, "worker threads");

  auto* verify = app.add_subcommand("verify", "run acceptance criteria");
  std::string suite = "all";
  verify->add_option("suite", suite, "suite name")->check(CLI::IsMember(gmax::acceptance_suite_names()));

  auto* report = app.add_subcommand("report", "per-record CSV from a run directory");
  std::string run_dir;
  report->add_option("run_dir", run_dir, "directory written by `run --out`")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitPass : kExitConfig;
  }

  try {
    if (*run) return cmd_run(config_path, out_dir, workers, force);
    if (*bound) return cmd_bound(formula, inputs);
    if (*boot) {
      if (alphas.empty()) alphas = {0.05};
      return cmd_bootstrap(data, replicates, alphas, reference, boot_seed, out_dir, path, workers);
    }
    if (*verify) return cmd_verify(suite);
    if (*report) return cmd_report(run_dir);
  } catch (const gmax::Error& e) {
    std::cerr << "error " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitConfig;
}
