#include "gmax/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <ostream>
#include <set>
#include <vector>

#include "gmax/error.hpp"
#include "gmax/harness.hpp"
#include "gmax/maxlaw.hpp"
#include "gmax/random.hpp"
#include "gmax/smoothmax.hpp"

namespace gmax {

namespace {

using Clock = std::chrono::steady_clock;

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

struct Outcome {
  bool pass;
  std::string detail;
};

// ---------------------------------------------------------------- A1

Outcome smooth_max_sandwich() {
  Rng rng(derive_seed(kDefaultMasterSeed, 1));
  std::size_t violations = 0;
  std::size_t trials = 0;
  for (std::size_t p : {1, 2, 50, 1000}) {
    std::vector<double> z(p);
    for (int t = 0; t < 10000; ++t) {
      // beta log-uniform on [1e-3, 1e3], coordinates on scales up to 1e3.
      const double beta = std::pow(10.0, -3.0 + 6.0 * rng.uniform());
      const double scale = std::pow(10.0, -3.0 + 6.0 * rng.uniform());
      for (double& v : z) v = scale * rng.normal();
      const SmoothMaxEval e = smooth_max(z, beta);
      const double gap = e.value - *std::max_element(z.begin(), z.end());
      if (!(gap >= 0.0 && gap <= std::log(static_cast<double>(p)) / beta)) ++violations;
      ++trials;
    }
  }
  return {violations == 0, std::to_string(violations) + " violations in " + std::to_string(trials)};
}

// ---------------------------------------------------------------- A2

Outcome derivative_fidelity() {
  Rng rng(derive_seed(kDefaultMasterSeed, 2));
  double grad_err = 0.0;
  double hess_err = 0.0;
  double comp_err = 0.0;
  const double h = 1e-5;
  for (std::size_t p : {2, 5, 50}) {
    for (int t = 0; t < 20; ++t) {
      const double beta = 0.5 + 4.0 * rng.uniform();
      std::vector<double> z(p);
      // Centered so F lands inside (0, 1) where g0 bends.
      for (double& v : z) v = 0.1 + 0.3 * rng.normal();
      const SmoothMaxEval e = smooth_max(z, beta);
      const Matrix comp = composite_hessian(e, smoother_g0_derivative(e.value),
                                            smoother_g0_second_derivative(e.value));
      for (std::size_t k = 0; k < p; ++k) {
        auto zp = z;
        auto zm = z;
        zp[k] += h;
        zm[k] -= h;
        const SmoothMaxEval ep = smooth_max(zp, beta);
        const SmoothMaxEval em = smooth_max(zm, beta);
        grad_err = std::max(grad_err, std::abs((ep.value - em.value) / (2 * h) - e.weights[k]));
        for (std::size_t j = 0; j < p; ++j) {
          const double fd = (ep.weights[j] - em.weights[j]) / (2 * h);
          hess_err = std::max(hess_err, std::abs(fd - beta * e.hessian_entry(j, k)));
          const double gp = smoother_g0_derivative(ep.value) * ep.weights[j];
          const double gm = smoother_g0_derivative(em.value) * em.weights[j];
          comp_err = std::max(comp_err, std::abs((gp - gm) / (2 * h) - comp(static_cast<Eigen::Index>(j),
                                                                             static_cast<Eigen::Index>(k))));
        }
      }
    }
  }
  const bool pass = grad_err <= 1e-6 && hess_err <= 1e-4 && comp_err <= 1e-4;
  return {pass, "gradient " + fmt(grad_err) + " (1e-6), hessian " + fmt(hess_err) + " (1e-4), composite " +
                    fmt(comp_err) + " (1e-4)"};
}

// ---------------------------------------------------------------- A8

Outcome oracle_equivalences() {
  double density = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double x = -8.0 + 16.0 * i / 999.0;
    density = std::max(density, std::abs(max_density_bivariate(x, 0.0) - iid_max_pdf(x, 2.0)));
  }
  // Composite Simpson over a range holding all the mass.
  double integral_err = 0.0;
  for (double p : {1.0, 2.0, 100.0, 1e6}) {
    const double a = -12.0;
    const double b = 12.0;
    const int m = 48000;
    const double h = (b - a) / m;
    double s = iid_max_pdf(a, p) + iid_max_pdf(b, p);
    for (int i = 1; i < m; ++i) s += (i % 2 == 1 ? 4.0 : 2.0) * iid_max_pdf(a + i * h, p);
    integral_err = std::max(integral_err, std::abs(s * h / 3.0 - 1.0));
  }
  Rng rng(derive_seed(kDefaultMasterSeed, 8));
  std::vector<double> draws(1000);
  for (double& v : draws) v = rng.normal();
  const SampleSet a(draws);
  const double ks_self = kolmogorov_distance(a, a);
  const double levy_point = levy_concentration(SampleSet(std::vector<double>(100, 1.5)), 1e-6);
  const bool pass = density <= 1e-12 && integral_err <= 1e-6 && ks_self == 0.0 && levy_point == 1.0;
  return {pass, "density gap " + fmt(density) + ", integral error " + fmt(integral_err) + ", KS(A,A) " +
                    fmt(ks_self) + ", point-mass L " + fmt(levy_point)};
}

// ---------------------------------------------------------------- harness-backed

std::string failures(const RunResult& res) {
  std::string out;
  for (const auto& r : res.records) {
    if (r.enforced && !r.pass) {
      out += r.label + " " + r.quantity + " " + fmt(r.empirical) + " > " + fmt(r.bound.value_or(0.0)) + "+" +
             fmt(r.allowance) + " (seed " + std::to_string(r.seed) + "); ";
    }
  }
  for (const auto& c : res.checks) {
    if (!c.pass) out += c.name + ": " + c.detail + "; ";
  }
  return out;
}

Outcome verdict(const RunResult& res, const std::string& ok) {
  if (res.passed()) return {true, ok};
  return {false, failures(res)};
}

const ExperimentConfig& suite_config(const std::vector<ExperimentConfig>& suite, ExperimentKind kind) {
  for (const auto& c : suite) {
    if (c.kind == kind) return c;
  }
  throw Error(Errc::InvalidArgument, "default suite lacks a config");
}

const Record* find_record(const RunResult& res, std::string_view quantity,
                          std::optional<FormulaId> formula = std::nullopt) {
  for (const auto& r : res.records) {
    if (r.quantity == quantity && (!formula || r.formula == formula)) return &r;
  }
  return nullptr;
}

Outcome comparison_verdict(const RunResult& res) {
  double worst = 0.0;
  for (const auto& r : res.records) {
    if (r.formula == FormulaId::KolmogorovExplicit) worst = std::max(worst, r.empirical / *r.bound);
  }
  return verdict(res, "max distance/explicit ratio " + fmt(worst) + ", calibrated shape c " +
                          (res.calibrated.count("kolmogorov_shape") ? fmt(res.calibrated.at("kolmogorov_shape"))
                                                                     : std::string("n/a")));
}

Outcome gumbel_verdict(const RunResult& res) {
  std::string detail;
  bool pass = true;
  for (const auto& r : res.records) {
    if (!r.enforced) continue;
    detail += r.label + " " + r.quantity + " " + fmt(r.empirical) + " (limit " + fmt(*r.bound) + "); ";
    pass = pass && r.pass;
  }
  for (const auto& c : res.checks) {
    if (!c.pass) detail += c.name + ": " + c.detail;
    pass = pass && c.pass;
  }
  return {pass, detail};
}

Outcome bootstrap_verdict(const RunResult& res) {
  const Record* dist = find_record(res, "bootstrap_ks_distance", std::nullopt);
  const Record* cov = find_record(res, "coverage_error");
  const Check* trend = nullptr;
  for (const auto& c : res.checks) {
    if (c.name.rfind("case_a ", 0) == 0) trend = &c;
  }
  if (!dist || !cov || !trend) return {false, "bootstrap study missing from the run"};
  const bool pass = dist->pass && cov->pass && trend->pass;
  return {pass, "distance " + fmt(dist->empirical) + " (<= " + fmt(*dist->bound) + "), coverage " +
                    fmt(cov->extras.at("coverage").get<double>()) + " (95% +- 2%), case (a) trend " +
                    (trend->pass ? "decreasing" : trend->detail)};
}

}  // namespace

std::vector<std::string> acceptance_suite_names() {
  return {"smoothmax", "stein", "anticonc", "comparison", "gumbel", "bootstrap", "oracles", "determinism", "all"};
}

std::vector<CriterionResult> run_acceptance(const std::vector<std::string>& suites, std::uint64_t master_seed,
                                            std::ostream& log) {
  const auto known = acceptance_suite_names();
  std::set<std::string> want;
  for (const auto& s : suites) {
    if (std::find(known.begin(), known.end(), s) == known.end()) {
      throw Error(Errc::InvalidArgument, "unknown acceptance suite '" + s + "'");
    }
    if (s == "all") {
      want.insert(known.begin(), known.end() - 1);
    } else {
      want.insert(s);
    }
  }

  std::vector<ExperimentConfig> suite = default_suite(master_seed);
  for (auto& c : suite) c.parallelism = 1;
  std::map<std::string, std::string> serial_json;
  const auto run_serial = [&](const ExperimentConfig& cfg) {
    RunResult res = run_experiment(cfg);
    serial_json[cfg.experiment_id] = res.to_json(false).dump();
    return res;
  };

  std::vector<CriterionResult> results;
  const auto criterion = [&](std::string id, std::string summary, double limit,
                             const std::function<Outcome()>& body) {
    CriterionResult cr{std::move(id), std::move(summary), false, 0.0, limit, ""};
    const auto t0 = Clock::now();
    try {
      const Outcome o = body();
      cr.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
      cr.pass = o.pass && (limit <= 0.0 || cr.seconds <= limit);
      cr.detail = o.detail;
      if (limit > 0.0 && cr.seconds > limit) cr.detail += "; over the time limit";
    } catch (const std::exception& e) {
      cr.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
      cr.detail = std::string("error: ") + e.what();
    }
    char timing[64];
    if (limit > 0.0) {
      std::snprintf(timing, sizeof timing, "%.2f s / %.0f s", cr.seconds, limit);
    } else {
      std::snprintf(timing, sizeof timing, "%.2f s", cr.seconds);
    }
    log << (cr.pass ? "[PASS] " : "[FAIL] ") << cr.id << " " << cr.summary << " (" << timing << "): " << cr.detail
        << std::endl;
    results.push_back(cr);
  };

  if (want.count("smoothmax")) {
    criterion("A1", "smooth-max sandwich", 5.0, smooth_max_sandwich);
    criterion("A2", "derivative fidelity", 10.0, derivative_fidelity);
  }
  if (want.count("stein")) {
    criterion("A3", "Stein identity", 60.0, [&] {
      return verdict(run_serial(suite_config(suite, ExperimentKind::Stein)), "all residuals within 5 SE");
    });
  }
  if (want.count("anticonc")) {
    criterion("A4", "anti-concentration", 120.0, [&] {
      return verdict(run_serial(suite_config(suite, ExperimentKind::Anticonc)),
                     "all Levy estimates within 3 SE of their bounds, tightness floor met");
    });
  }
  if (want.count("comparison")) {
    criterion("A5", "comparison / Kolmogorov", 300.0,
              [&] { return comparison_verdict(run_serial(suite_config(suite, ExperimentKind::Comparison))); });
  }
  if (want.count("gumbel")) {
    criterion("A6", "Gumbel calibration", 120.0,
              [&] { return gumbel_verdict(run_serial(suite_config(suite, ExperimentKind::Gumbel))); });
  }
  if (want.count("bootstrap")) {
    criterion("A7", "multiplier bootstrap", 600.0,
              [&] { return bootstrap_verdict(run_serial(suite_config(suite, ExperimentKind::Cmclt))); });
  }
  if (want.count("oracles")) criterion("A8", "oracle equivalences", 5.0, oracle_equivalences);
  if (want.count("determinism")) {
    criterion("A9", "determinism across workers {1, 4, 16}", 0.0, [&]() -> Outcome {
      std::string mismatches;
      for (const auto& cfg : suite) {
        if (!serial_json.count(cfg.experiment_id)) run_serial(cfg);
        for (unsigned w : {4u, 16u}) {
          ExperimentConfig par = cfg;
          par.parallelism = w;
          if (run_experiment(par).to_json(false).dump() != serial_json.at(cfg.experiment_id)) {
            mismatches += cfg.experiment_id + "@" + std::to_string(w) + " ";
          }
        }
      }
      if (mismatches.empty()) return {true, std::to_string(suite.size()) + " experiments byte-identical"};
      return {false, "differs: " + mismatches};
    });
  }
  return results;
}

}  // namespace gmax
