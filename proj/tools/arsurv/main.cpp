// arsurv: classification, coefficients, simulation, fitting, bounds and the
// acceptance suite for survival probabilities of AR processes.
//
// Exit codes: 0 ok, 1 verification failure, 2 malformed input,
// 3 invalid configuration, 4 simulation marked invalid.

#include <cmath>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "arsurv/asymptotics.hpp"
#include "arsurv/bounds.hpp"
#include "arsurv/coeffs.hpp"
#include "arsurv/errors.hpp"
#include "arsurv/mc.hpp"
#include "arsurv/regions.hpp"
#include "arsurv/serialization.hpp"
#include "arsurv/verification.hpp"

namespace {

using namespace arsurv;

constexpr int kExitOk = 0;
constexpr int kExitVerify = 1;
constexpr int kExitInput = 2;
constexpr int kExitConfig = 3;
constexpr int kExitInvalidRun = 4;

struct ExitCode {
  int code;
};

void print(const Json& j) { std::cout << j.dump(2) << '\n'; }

InnovationSpec innovation_arg(const std::string& text) {
  try {
    return parse_innovation(text);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    throw ExitCode{kExitInput};
  }
}

ARParams coeffs_arg(const std::string& text) {
  try {
    return parse_coefficients(text);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    throw ExitCode{kExitInput};
  }
}

void require_finite(double v, const char* name) {
  if (!std::isfinite(v)) {
    std::cerr << "error: " << name << " must be finite\n";
    throw ExitCode{kExitInput};
  }
}

int cmd_classify(double a1, double a2, const std::string& innovation, double x) {
  require_finite(a1, "a1");
  require_finite(a2, "a2");
  require_finite(x, "x");
  const InnovationSpec spec = innovation_arg(innovation);
  const Prediction pred = predict(a1, a2, spec, x);
  Json out{{"schema_version", kSchemaVersion}, {"a1", a1}, {"a2", a2}};
  out.update(region_to_json(pred.region));
  out["limit_class"] = limit_class_to_json(coeff_limit_class(a1, a2));
  const Json prediction = prediction_to_json(pred);
  for (const auto& [k, v] : prediction.items()) {
    if (k != "region" && k != "sub") out[k] = v;
  }
  out["innovation"] = innovation_to_json(spec);
  print(out);
  return kExitOk;
}

int cmd_coeffs(const std::string& a_text, int n_max) {
  const ARParams params = coeffs_arg(a_text);
  if (n_max < 0) {
    std::cerr << "error: --n must be >= 0\n";
    return kExitInput;
  }
  Json out{{"schema_version", kSchemaVersion}};
  out["a"] = Json::array();
  for (double a : params.coeffs()) out["a"].push_back(a);
  out["values"] = coeff_recursion(params, n_max).values;
  Json roots = Json::array();
  for (const auto& r : charpoly_roots(params)) roots.push_back({r.real(), r.imag()});
  out["roots"] = roots;
  out["in_delta_p"] = in_delta_p(params);
  if (params.order() == 2) {
    out["closed_form"] = coeff_solution_to_json(ar2_closed_form(params.a(1), params.a(2)));
    out["limit_class"] = limit_class_to_json(coeff_limit_class(params.a(1), params.a(2)));
  }
  print(out);
  return kExitOk;
}

int cmd_region_grid(double lo, double hi, int steps) {
  require_finite(lo, "lo");
  require_finite(hi, "hi");
  if (steps < 2 || !(lo < hi)) {
    std::cerr << "error: need --steps >= 2 and --lo < --hi\n";
    return kExitInput;
  }
  std::cout << "a1,a2,region,sub\n";
  for (int i = 0; i < steps; ++i) {
    for (int j = 0; j < steps; ++j) {
      const double a1 = lo + (hi - lo) * i / (steps - 1);
      const double a2 = lo + (hi - lo) * j / (steps - 1);
      const RegionLabel label = classify_ar2(a1, a2);
      std::cout << format_double(a1) << ',' << format_double(a2) << ','
                << to_string(label.major) << ',' << (label.sub ? to_string(*label.sub) : "")
                << '\n';
    }
  }
  return kExitOk;
}

int cmd_simulate(const std::string& config_path, unsigned workers) {
  RunConfig cfg;
  try {
    cfg = run_config_from_json(read_json_file(config_path));
  } catch (const ConfigError& e) {
    std::cerr << "error: invalid config: " << e.what() << '\n';
    return kExitConfig;
  }
  const SurvivalCurve curve = estimate_survival(cfg.params, cfg.spec, cfg.x, cfg.grid,
                                                cfg.paths, cfg.seed, {workers});
  const std::filesystem::path out(cfg.out);
  const std::filesystem::path csv = out.string() + ".csv";
  const std::filesystem::path json = out.string() + ".json";
  const std::filesystem::path gp = out.string() + ".gp";
  if (out.has_parent_path()) std::filesystem::create_directories(out.parent_path());
  write_file_atomic(csv, curve_to_csv(curve));
  write_file_atomic(json, curve_to_json(curve).dump(2) + "\n");
  write_file_atomic(gp, gnuplot_script(curve, csv.filename().string()));

  Json summary{{"schema_version", kSchemaVersion},
               {"csv", csv.string()},
               {"json", json.string()},
               {"gnuplot", gp.string()},
               {"paths", curve.paths},
               {"non_finite", curve.non_finite},
               {"valid", curve.valid}};
  print(summary);
  if (!curve.valid) {
    std::cerr << "error: simulation invalid: " << curve.non_finite << " non-finite paths\n";
    return kExitInvalidRun;
  }
  return kExitOk;
}

int cmd_fit(const std::string& curve_path) {
  SurvivalCurve curve;
  try {
    curve = curve_from_json(read_json_file(curve_path));
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
  Json out{{"schema_version", kSchemaVersion}, {"fit", fit_to_json(fit_decay(curve))}};
  if (curve.params.order() == 2) {
    out["prediction"] =
        prediction_to_json(predict(curve.params.a(1), curve.params.a(2), curve.spec, curve.x));
  }
  print(out);
  return kExitOk;
}

int cmd_bounds(const std::string& a_text, const std::string& innovation) {
  const ARParams params = coeffs_arg(a_text);
  const InnovationSpec spec = innovation_arg(innovation);
  Json out{{"schema_version", kSchemaVersion}};
  out["a"] = Json::array();
  for (double a : params.coeffs()) out["a"].push_back(a);
  out["innovation"] = innovation_to_json(spec);
  if (params.abs_sum() < 1.0) {
    out["lower_bound"] = lower_bound_to_json(exp_lower_bound(params, spec));
  } else {
    out["lower_bound"] = nullptr;
    out["notes"].push_back("exponential lower bound needs sum |a_k| < 1");
  }
  if (params.order() == 2) {
    const double a1 = params.a(1);
    const double a2 = params.a(2);
    if (in_region_e1(a1, a2)) out["e1_rate_bound"] = e1_rate_bound(a1, a2);
    if (in_region_e3(a1, a2)) {
      out["e3_sign_change_index"] = e3_sign_change_index(a1, a2);
      out["e3_sign_change_cap"] = e3_sign_change_cap(a1, a2);
    }
  }
  Json integrated = Json::array();
  for (double b : integrate_params(params).coeffs()) integrated.push_back(b);
  out["integrated"] = integrated;
  print(out);
  return kExitOk;
}

int cmd_reduce(const std::string& a_text, const std::string& kind, const std::string& innovation,
               std::uint64_t paths, std::int64_t n, std::uint64_t seed) {
  const ARParams params = coeffs_arg(a_text);
  const InnovationSpec spec = innovation_arg(innovation);
  ReductionKind rk{};
  try {
    rk = reduction_from_string(kind);
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
  Json out{{"schema_version", kSchemaVersion}};
  out.update(reduction_to_json(pathwise_reduction_check(params, spec, rk, paths, n, seed)));
  print(out);
  return out["violations"].get<std::uint64_t>() == 0 ? kExitOk : kExitVerify;
}

int cmd_verify(const std::string& suite, unsigned workers) {
  std::vector<CriterionResult> results;
  try {
    results = run_suite(suite, {.quick = false, .workers = workers});
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
  bool all = true;
  for (const auto& r : results) {
    all = all && r.passed;
    std::cout << (r.passed ? "PASS " : "FAIL ") << r.id << "  " << r.title << '\n';
    for (const auto& d : r.details) std::cout << "       " << d << '\n';
  }
  std::cout << (all ? "all criteria passed" : "some criteria failed") << '\n';
  return all ? kExitOk : kExitVerify;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Survival probabilities of autoregressive processes"};
  app.require_subcommand(1);
  unsigned workers = arsurv::default_workers();

  double a1 = 0.0, a2 = 0.0, x = 0.0;
  std::string innovation = "gaussian";
  auto* classify = app.add_subcommand("classify", "region, limit class and predicted decay");
  classify->add_option("--a1", a1, "lag-one coefficient")->required();
  classify->add_option("--a2", a2, "lag-two coefficient")->required();
  classify->add_option("--innovation", innovation, "innovation law, e.g. gaussian:0,1");
  classify->add_option("--x", x, "barrier");

  std::string a_text;
  int n_max = 20;
  auto* coeffs = app.add_subcommand("coeffs", "coefficient sequence and characteristic roots");
  coeffs->add_option("--a", a_text, "coefficients, comma separated")->required();
  coeffs->add_option("--n", n_max, "last index");

  double lo = -3.0, hi = 3.0;
  int steps = 201;
  auto* grid = app.add_subcommand("region-grid", "CSV of region labels on a square grid");
  grid->add_option("--lo", lo);
  grid->add_option("--hi", hi);
  grid->add_option("--steps", steps);

  std::string path;
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo survival curve from a config");
  simulate->add_option("config", path, "run configuration JSON")->required();
  simulate->add_option("--workers", workers, "worker threads (output does not depend on it)");

  auto* fit = app.add_subcommand("fit", "decay fit of a survival curve JSON");
  fit->add_option("curve", path, "curve JSON")->required();

  auto* bounds = app.add_subcommand("bounds", "exponential lower bound and related constants");
  bounds->add_option("--a", a_text, "coefficients, comma separated")->required();
  bounds->add_option("--innovation", innovation, "innovation law");

  std::string kind;
  std::uint64_t paths = 1000, seed = 1;
  std::int64_t n = 1000;
  auto* reduce = app.add_subcommand("reduce", "pathwise check of a reduction identity");
  reduce->add_option("--a", a_text, "coefficients, comma separated")->required();
  reduce->add_option("--kind", kind, "north_west, ar1, random_walk or integration")->required();
  reduce->add_option("--innovation", innovation, "innovation law");
  reduce->add_option("--paths", paths);
  reduce->add_option("--n", n);
  reduce->add_option("--seed", seed);

  std::string suite = "quick";
  auto* verify = app.add_subcommand("verify", "run the acceptance suite");
  verify->add_option("--suite", suite, "quick or full");
  verify->add_option("--workers", workers);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*classify) return cmd_classify(a1, a2, innovation, x);
    if (*coeffs) return cmd_coeffs(a_text, n_max);
    if (*grid) return cmd_region_grid(lo, hi, steps);
    if (*simulate) return cmd_simulate(path, std::max(1u, workers));
    if (*fit) return cmd_fit(path);
    if (*bounds) return cmd_bounds(a_text, innovation);
    if (*reduce) return cmd_reduce(a_text, kind, innovation, paths, n, seed);
    if (*verify) return cmd_verify(suite, std::max(1u, workers));
  } catch (const ExitCode& e) {
    return e.code;
  } catch (const arsurv::PreconditionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const arsurv::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitInput;
}
