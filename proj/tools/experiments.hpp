#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace mixedorder::cli {

using nlohmann::json;

// Plot-ready columnar file: x, y, yerr.
struct DatFile {
  std::string name;
  std::string comment;
  std::vector<std::array<double, 3>> rows;
};

struct ExperimentResult {
  std::vector<std::string> csv_header;  // starts with experiment,module,operation
  std::vector<std::vector<std::string>> csv_rows;
  json summary;
  std::vector<DatFile> dat;
};

struct ExperimentInfo {
  std::string name;
  std::string description;
  json defaults;  // doubles as the parameter schema: allowed keys and types
};

const std::vector<ExperimentInfo>& experiment_registry();

// Merge user params over the defaults; unknown keys or wrong json types
// throw ConfigInvalid.
json resolve_params(const std::string& name, const json& params);

ExperimentResult run_experiment(const std::string& name, const json& params,
                                uint64_t seed);

struct ResourceEstimate {
  double mem_bytes = 0;
  double seconds = 0;
  bool over_cap = false;
  std::string note;
};
ResourceEstimate estimate_resources(const std::string& name,
                                    const json& params);

std::string fmt(double v);  // %.17g

}  // namespace mixedorder::cli
