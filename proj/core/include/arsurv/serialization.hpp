#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "arsurv/asymptotics.hpp"
#include "arsurv/bounds.hpp"
#include "arsurv/coeffs.hpp"
#include "arsurv/innovations.hpp"
#include "arsurv/mc.hpp"
#include "arsurv/regions.hpp"

namespace arsurv {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

// Shortest decimal string that round-trips to the same double.
std::string format_double(double value);

// {"kind": "gaussian", "params": {"mu": 0, "sigma": 1}}. Unknown kinds or
// keys throw ConfigError.
Json innovation_to_json(const InnovationSpec& spec);
InnovationSpec innovation_from_json(const Json& j);

// Command-line form: "gaussian", "gaussian:MU,SIGMA", "rademacher",
// "two_point:Y", "uniform:LO,HI", "exponential_centered:RATE".
InnovationSpec parse_innovation(const std::string& text);

// Comma-separated coefficient list, e.g. "0.3,-0.2".
ARParams parse_coefficients(const std::string& text);

Json region_to_json(const RegionLabel& label);
Json limit_class_to_json(const LimitClass& limit);
Json coeff_solution_to_json(const CoeffSolution& sol);
Json fit_to_json(const DecayFit& fit);
Json prediction_to_json(const Prediction& prediction);
Json lower_bound_to_json(const LowerBoundResult& bound);
Json reduction_to_json(const ReductionReport& report);

// Survival curve documents. The JSON form carries schema_version and
// everything needed to rebuild the curve; the CSV form has the columns
//   N,survivors,paths,p_hat,stderr,zero_flag
Json curve_to_json(const SurvivalCurve& curve);
SurvivalCurve curve_from_json(const Json& j);
std::string curve_to_csv(const SurvivalCurve& curve);

// Simulation run configuration. Keys: a, innovation, x, grid, paths, seed,
// out. grid is an explicit ascending list of horizons, or
//   {"pow2": [lo, hi]}           -> 2^lo, ..., 2^hi
//   {"range": [lo, hi]}          -> lo, lo + 1, ..., hi
// Unknown keys anywhere throw ConfigError.
struct RunConfig {
  ARParams params{1.0};
  InnovationSpec spec = InnovationSpec::gaussian();
  double x = 0.0;
  std::vector<std::int64_t> grid;
  std::uint64_t paths = 0;
  std::uint64_t seed = 0;
  std::string out;  // output prefix: <out>.csv, <out>.json, <out>.gp
};

RunConfig run_config_from_json(const Json& j);
std::vector<std::int64_t> grid_from_json(const Json& j);

Json read_json_file(const std::filesystem::path& path);

// Writes to a sibling temporary file, then renames it over the target.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

// gnuplot script drawing log-log and semilog views of a curve CSV.
std::string gnuplot_script(const SurvivalCurve& curve, const std::string& csv_name);

}  // namespace arsurv
