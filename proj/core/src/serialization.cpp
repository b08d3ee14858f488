#include "arsurv/serialization.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <system_error>

#include "arsurv/errors.hpp"

namespace arsurv {
namespace {

void check_keys(const Json& j, std::initializer_list<const char*> allowed, const char* what) {
  if (!j.is_object()) throw ConfigError(std::string(what) + ": expected an object");
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& item : j.items()) {
    if (!ok.contains(item.key())) {
      throw ConfigError(std::string(what) + ": unknown key '" + item.key() + "'");
    }
  }
}

const Json& require(const Json& j, const char* key, const char* what) {
  auto it = j.find(key);
  if (it == j.end()) throw ConfigError(std::string(what) + ": missing key '" + key + "'");
  return *it;
}

double as_double(const Json& j, const char* what) {
  if (!j.is_number()) throw ConfigError(std::string(what) + ": expected a number");
  return j.get<double>();
}

std::uint64_t as_count(const Json& j, const char* what) {
  if (j.is_number_unsigned()) return j.get<std::uint64_t>();
  if (j.is_number_integer()) {
    const auto v = j.get<std::int64_t>();
    if (v >= 0) return static_cast<std::uint64_t>(v);
  } else if (j.is_number_float()) {
    const double v = j.get<double>();
    if (v >= 0.0 && v < 1.8e19 && std::floor(v) == v) return static_cast<std::uint64_t>(v);
  }
  throw ConfigError(std::string(what) + ": expected a non-negative integer");
}

double param_or(const Json& params, const char* key, double fallback) {
  auto it = params.find(key);
  return it == params.end() ? fallback : as_double(*it, key);
}

std::vector<double> split_numbers(const std::string& text, const char* what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const char* b = item.data();
    const char* e = b + item.size();
    while (b < e && *b == ' ') ++b;
    while (e > b && e[-1] == ' ') --e;
    if (b < e && *b == '+') ++b;
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(b, e, v);
    if (ec != std::errc() || ptr != e || b == e) {
      throw ConfigError(std::string(what) + ": cannot parse number '" + item + "'");
    }
    out.push_back(v);
  }
  if (!text.empty() && text.back() == ',') {
    throw ConfigError(std::string(what) + ": trailing comma");
  }
  return out;
}

template <class F>
auto wrap_precondition(F&& f) {
  try {
    return f();
  } catch (const PreconditionError& e) {
    throw ConfigError(e.what());
  }
}

}  // namespace

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

Json innovation_to_json(const InnovationSpec& spec) {
  Json params = Json::object();
  std::visit(
      [&params](const auto& k) {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, Gaussian>) {
          params["mu"] = k.mu;
          params["sigma"] = k.sigma;
        } else if constexpr (std::is_same_v<K, TwoPoint>) {
          params["y"] = k.y;
        } else if constexpr (std::is_same_v<K, Uniform>) {
          params["lo"] = k.lo;
          params["hi"] = k.hi;
        } else if constexpr (std::is_same_v<K, CenteredExponential>) {
          params["rate"] = k.rate;
        }
      },
      spec.kind());
  return Json{{"kind", spec.kind_name()}, {"params", params}};
}

InnovationSpec innovation_from_json(const Json& j) {
  check_keys(j, {"kind", "params"}, "innovation");
  const Json& kind_j = require(j, "kind", "innovation");
  if (!kind_j.is_string()) throw ConfigError("innovation: kind must be a string");
  const std::string kind = kind_j.get<std::string>();
  const Json params = j.contains("params") ? j.at("params") : Json::object();
  return wrap_precondition([&] {
    if (kind == "gaussian") {
      check_keys(params, {"mu", "sigma"}, "gaussian params");
      return InnovationSpec::gaussian(param_or(params, "mu", 0.0), param_or(params, "sigma", 1.0));
    }
    if (kind == "rademacher") {
      check_keys(params, {}, "rademacher params");
      return InnovationSpec::rademacher();
    }
    if (kind == "two_point") {
      check_keys(params, {"y"}, "two_point params");
      return InnovationSpec::two_point(as_double(require(params, "y", "two_point"), "y"));
    }
    if (kind == "uniform") {
      check_keys(params, {"lo", "hi"}, "uniform params");
      return InnovationSpec::uniform(as_double(require(params, "lo", "uniform"), "lo"),
                                     as_double(require(params, "hi", "uniform"), "hi"));
    }
    if (kind == "exponential_centered") {
      check_keys(params, {"rate"}, "exponential_centered params");
      return InnovationSpec::centered_exponential(
          as_double(require(params, "rate", "exponential_centered"), "rate"));
    }
    throw ConfigError("innovation: unknown kind '" + kind + "'");
  });
}

InnovationSpec parse_innovation(const std::string& text) {
  const auto colon = text.find(':');
  const std::string kind = text.substr(0, colon);
  const std::vector<double> args =
      colon == std::string::npos ? std::vector<double>{}
                                 : split_numbers(text.substr(colon + 1), "innovation");
  auto need = [&](std::size_t lo, std::size_t hi) {
    if (args.size() < lo || args.size() > hi) {
      throw ConfigError("innovation '" + text + "': wrong number of parameters");
    }
  };
  return wrap_precondition([&] {
    if (kind == "gaussian") {
      if (args.size() == 1) throw ConfigError("gaussian needs MU,SIGMA or no parameters");
      need(0, 2);
      return args.empty() ? InnovationSpec::gaussian() : InnovationSpec::gaussian(args[0], args[1]);
    }
    if (kind == "rademacher") {
      need(0, 0);
      return InnovationSpec::rademacher();
    }
    if (kind == "two_point") {
      need(1, 1);
      return InnovationSpec::two_point(args[0]);
    }
    if (kind == "uniform") {
      need(2, 2);
      return InnovationSpec::uniform(args[0], args[1]);
    }
    if (kind == "exponential_centered") {
      need(1, 1);
      return InnovationSpec::centered_exponential(args[0]);
    }
    throw ConfigError("unknown innovation kind '" + kind + "'");
  });
}

ARParams parse_coefficients(const std::string& text) {
  auto values = split_numbers(text, "coefficients");
  return wrap_precondition([&] { return ARParams(std::move(values)); });
}

Json region_to_json(const RegionLabel& label) {
  Json j{{"region", to_string(label.major)}};
  if (label.sub) j["sub"] = to_string(*label.sub);
  return j;
}

Json limit_class_to_json(const LimitClass& limit) {
  Json j{{"kind", to_string(limit.kind)}};
  if (limit.kind == LimitKind::ConvergesNonzero) j["limit"] = limit.limit;
  return j;
}

Json coeff_solution_to_json(const CoeffSolution& sol) {
  auto cplx = [](std::complex<double> z) { return Json::array({z.real(), z.imag()}); };
  Json j{{"a1", sol.a1},
         {"a2", sol.a2},
         {"branch", to_string(sol.branch)},
         {"s1", cplx(sol.s1)},
         {"s2", cplx(sol.s2)},
         {"h", cplx(sol.h)}};
  if (sol.branch == RootBranch::ComplexPair) {
    j["h_tilde"] = sol.h_tilde;
    j["phi"] = sol.phi;
    j["modulus"] = sol.modulus;
  }
  return j;
}

Json fit_to_json(const DecayFit& fit) {
  auto interval = [](const Interval& i) { return Json::array({i.lo, i.hi}); };
  Json j{{"class", to_string(fit.cls)}};
  switch (fit.cls) {
    case DecayClass::Polynomial:
      j["theta"] = fit.theta;
      j["ci"] = interval(fit.theta_ci);
      break;
    case DecayClass::Exponential:
      j["lambda"] = fit.lambda;
      j["ci"] = interval(fit.lambda_ci);
      j["log_corrected_plausible"] = fit.log_corrected_plausible;
      break;
    case DecayClass::PositiveLimit:
      j["p_inf"] = fit.p_inf;
      j["ci"] = interval(fit.p_inf_ci);
      break;
    case DecayClass::Inconclusive:
      break;
  }
  j["r2_loglog"] = fit.r2_loglog;
  j["r2_semilog"] = fit.r2_semilog;
  j["r2_log_corrected"] = fit.r2_log_corrected;
  j["plateau_stat"] = std::isfinite(fit.plateau_stat) ? Json(fit.plateau_stat) : Json(nullptr);
  j["window"] = Json::array({fit.window_lo, fit.window_hi});
  j["usable_points"] = fit.usable_points;
  j["censored"] = fit.censored;
  return j;
}

Json prediction_to_json(const Prediction& prediction) {
  Json j = region_to_json(prediction.region);
  j["predicted"] = to_string(prediction.cls);
  if (prediction.theta) j["theta"] = *prediction.theta;
  if (prediction.rate_lower_bound) j["rate_lower_bound"] = *prediction.rate_lower_bound;
  if (prediction.rate_upper_bound) j["rate_upper_bound"] = *prediction.rate_upper_bound;
  if (prediction.cls == DecayClass::Exponential) j["log_corrected"] = prediction.log_corrected;
  if (prediction.theorem) j["theorem"] = to_string(*prediction.theorem);
  Json h{{"satisfied", prediction.hypotheses.satisfied},
         {"violated", prediction.hypotheses.violated}};
  if (!prediction.hypotheses.note.empty()) h["note"] = prediction.hypotheses.note;
  j["hypotheses"] = h;
  j["notes"] = prediction.notes;
  return j;
}

Json lower_bound_to_json(const LowerBoundResult& bound) {
  return Json{{"c", bound.c},           {"alpha_star", bound.alpha_star},
              {"a_plus", bound.a_plus}, {"a_minus", bound.a_minus},
              {"A", bound.A},           {"method", to_string(bound.method)}};
}

Json reduction_to_json(const ReductionReport& report) {
  Json j{{"kind", to_string(report.kind)},
         {"violations", report.violations},
         {"checks", report.checks},
         {"max_relative_error", report.max_relative_error}};
  if (report.rho) j["rho"] = *report.rho;
  return j;
}

Json curve_to_json(const SurvivalCurve& curve) {
  Json zero = Json::array();
  for (bool z : curve.zero_flag) zero.push_back(z);
  return Json{{"schema_version", kSchemaVersion},
              {"a", std::vector<double>(curve.params.coeffs().begin(), curve.params.coeffs().end())},
              {"innovation", innovation_to_json(curve.spec)},
              {"x", curve.x},
              {"paths", curve.paths},
              {"seed", curve.seed},
              {"non_finite", curve.non_finite},
              {"valid", curve.valid},
              {"grid", curve.grid},
              {"survivors", curve.survivors},
              {"p_hat", curve.p_hat},
              {"stderr", curve.std_err},
              {"zero_flag", zero},
              {"upper_bound", curve.upper_bound}};
}

SurvivalCurve curve_from_json(const Json& j) {
  check_keys(j,
             {"schema_version", "a", "innovation", "x", "paths", "seed", "non_finite", "valid",
              "grid", "survivors", "p_hat", "stderr", "zero_flag", "upper_bound"},
             "curve");
  if (j.contains("schema_version") && j.at("schema_version") != kSchemaVersion) {
    throw ConfigError("curve: unsupported schema_version");
  }
  SurvivalCurve curve;
  try {
    if (j.contains("a")) {
      curve.params = wrap_precondition([&] { return ARParams(j.at("a").get<std::vector<double>>()); });
    }
    if (j.contains("innovation")) curve.spec = innovation_from_json(j.at("innovation"));
    if (j.contains("x")) curve.x = as_double(j.at("x"), "x");
    if (j.contains("seed")) curve.seed = as_count(j.at("seed"), "seed");
    curve.paths = as_count(require(j, "paths", "curve"), "paths");
    curve.grid = grid_from_json(require(j, "grid", "curve"));
    for (const auto& s : require(j, "survivors", "curve")) {
      curve.survivors.push_back(as_count(s, "survivors"));
    }
    if (j.contains("non_finite")) curve.non_finite = as_count(j.at("non_finite"), "non_finite");
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("curve: ") + e.what());
  }
  if (curve.paths == 0) throw ConfigError("curve: paths must be >= 1");
  if (curve.survivors.size() != curve.grid.size()) {
    throw ConfigError("curve: survivors and grid differ in length");
  }
  for (std::size_t i = 0; i < curve.survivors.size(); ++i) {
    if (curve.survivors[i] > curve.paths) throw ConfigError("curve: survivors exceed paths");
    if (i > 0 && curve.survivors[i] > curve.survivors[i - 1]) {
      throw ConfigError("curve: survivors must be non-increasing");
    }
  }
  finalize_curve(curve);
  return curve;
}

std::string curve_to_csv(const SurvivalCurve& curve) {
  std::string out = "N,survivors,paths,p_hat,stderr,zero_flag\n";
  for (std::size_t i = 0; i < curve.grid.size(); ++i) {
    out += std::to_string(curve.grid[i]) + ',' + std::to_string(curve.survivors[i]) + ',' +
           std::to_string(curve.paths) + ',' + format_double(curve.p_hat[i]) + ',' +
           format_double(curve.std_err[i]) + ',' + (curve.zero_flag[i] ? "1" : "0") + '\n';
  }
  return out;
}

std::vector<std::int64_t> grid_from_json(const Json& j) {
  std::vector<std::int64_t> grid;
  auto pair = [](const Json& v, const char* what) {
    if (!v.is_array() || v.size() != 2) {
      throw ConfigError(std::string("grid.") + what + ": expected [lo, hi]");
    }
    return std::pair{as_count(v[0], what), as_count(v[1], what)};
  };
  if (j.is_array()) {
    for (const auto& v : j) {
      const std::uint64_t n = as_count(v, "grid");
      if (n > static_cast<std::uint64_t>(INT64_MAX)) throw ConfigError("grid: horizon too large");
      grid.push_back(static_cast<std::int64_t>(n));
    }
  } else if (j.is_object() && j.size() == 1 && j.contains("pow2")) {
    const auto [lo, hi] = pair(j.at("pow2"), "pow2");
    if (hi > 62) throw ConfigError("grid.pow2: exponent above 62");
    for (auto e = lo; e <= hi; ++e) grid.push_back(std::int64_t{1} << e);
  } else if (j.is_object() && j.size() == 1 && j.contains("range")) {
    const auto [lo, hi] = pair(j.at("range"), "range");
    if (hi - lo > 10'000'000) throw ConfigError("grid.range: too many horizons");
    for (auto n = lo; n <= hi; ++n) grid.push_back(static_cast<std::int64_t>(n));
  } else {
    throw ConfigError("grid: expected a list, {\"pow2\": [lo, hi]} or {\"range\": [lo, hi]}");
  }
  if (grid.empty()) throw ConfigError("grid: empty");
  if (grid.front() < 1) throw ConfigError("grid: horizons must be >= 1");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (grid[i] <= grid[i - 1]) throw ConfigError("grid: must be strictly increasing");
  }
  return grid;
}

RunConfig run_config_from_json(const Json& j) {
  check_keys(j, {"a", "innovation", "x", "grid", "paths", "seed", "out"}, "config");
  RunConfig cfg;
  try {
    const Json& a = require(j, "a", "config");
    if (!a.is_array()) throw ConfigError("config: a must be a list of numbers");
    std::vector<double> coeffs;
    for (const auto& v : a) coeffs.push_back(as_double(v, "a"));
    cfg.params = wrap_precondition([&] { return ARParams(std::move(coeffs)); });
    const Json& inn = require(j, "innovation", "config");
    cfg.spec = inn.is_string() ? parse_innovation(inn.get<std::string>()) : innovation_from_json(inn);
    cfg.x = as_double(require(j, "x", "config"), "x");
    cfg.grid = grid_from_json(require(j, "grid", "config"));
    cfg.paths = as_count(require(j, "paths", "config"), "paths");
    cfg.seed = as_count(require(j, "seed", "config"), "seed");
    if (j.contains("out")) {
      if (!j.at("out").is_string()) throw ConfigError("config: out must be a string");
      cfg.out = j.at("out").get<std::string>();
    } else {
      cfg.out = "curve";
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  if (cfg.paths < 1) throw ConfigError("config: paths must be >= 1");
  if (!std::isfinite(cfg.x)) throw ConfigError("config: x must be finite");
  if (cfg.out.empty()) throw ConfigError("config: out must not be empty");
  return cfg;
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw Error("write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw Error("cannot rename " + tmp.string() + " to " + path.string() + ": " + ec.message());
  }
}

std::string gnuplot_script(const SurvivalCurve& curve, const std::string& csv_name) {
  std::ostringstream os;
  os << "# a = " << curve.params.to_string() << ", innovation = " << curve.spec.describe()
     << ", x = " << format_double(curve.x) << ", paths = " << curve.paths << "\n"
     << "set datafile separator ','\n"
     << "set key off\n"
     << "set xlabel 'N'\n"
     << "set ylabel 'p_N'\n"
     << "set multiplot layout 1,2\n"
     << "set title 'log-log'\n"
     << "set logscale xy\n"
     << "plot '" << csv_name << "' every ::1 using 1:($6 == 0 ? $4 : 1/0) with linespoints\n"
     << "unset logscale\n"
     << "set title 'semilog'\n"
     << "set logscale y\n"
     << "plot '" << csv_name << "' every ::1 using 1:($6 == 0 ? $4 : 1/0) with linespoints\n"
     << "unset multiplot\n";
  return os.str();
}

}  // namespace arsurv
