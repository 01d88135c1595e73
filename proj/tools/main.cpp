#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "experiments.hpp"
#include "mixedorder/errors.hpp"

extern "C" void openblas_set_num_threads(int);

namespace fs = std::filesystem;
using nlohmann::json;
using namespace mixedorder;
using namespace mixedorder::cli;

namespace {

constexpr const char* kRngId =
    "xoshiro256++ (splitmix64 seeding, fork() for parallel streams)";

struct Config {
  std::string experiment;
  json params;
  uint64_t seed = 1;
  std::string output_dir;
};

Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigInvalid("cannot open config file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigInvalid(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigInvalid("config must be a JSON object");
  for (const auto& [key, _] : j.items())
    if (key != "experiment" && key != "params" && key != "seed" &&
        key != "output_dir")
      throw ConfigInvalid("unknown config key '" + key + "'");
  if (!j.contains("experiment") || !j["experiment"].is_string())
    throw ConfigInvalid("config needs an 'experiment' string");
  Config c;
  c.experiment = j["experiment"].get<std::string>();
  c.params = j.value("params", json::object());
  if (j.contains("seed")) {
    if (!j["seed"].is_number_integer())
      throw ConfigInvalid("'seed' must be an integer");
    c.seed = j["seed"].get<uint64_t>();
  }
  c.output_dir = j.value("output_dir", "out_" + c.experiment);
  return c;
}

// write-then-rename so partially written artifacts never appear
void write_atomic(const fs::path& path, const std::string& content) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path.string());
  }
  fs::rename(tmp, path);
}

std::string to_csv(const ExperimentResult& res) {
  std::string s;
  auto line = [&](const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i) s += ',';
      s += fields[i];
    }
    s += "\r\n";
  };
  line(res.csv_header);
  for (const auto& row : res.csv_rows) line(row);
  return s;
}

std::string to_dat(const DatFile& d) {
  std::string s = "# " + d.comment + "\n";
  for (const auto& r : d.rows)
    s += fmt(r[0]) + " " + fmt(r[1]) + " " + fmt(r[2]) + "\n";
  return s;
}

std::string plot_script(const ExperimentResult& res) {
  std::string s =
      "#!/usr/bin/env python3\n"
      "# plots every .dat emitted by this run; columns are x, y, yerr\n"
      "import matplotlib.pyplot as plt\n\n";
  for (const auto& d : res.dat) {
    s += "xs, ys, es = [], [], []\n";
    s += "for line in open('" + d.name + "'):\n";
    s += "    if line.startswith('#'): continue\n";
    s += "    x, y, e = map(float, line.split())\n";
    s += "    xs.append(x); ys.append(y); es.append(e)\n";
    s += "plt.errorbar(xs, ys, yerr=es, marker='o', label='" + d.name +
         "')\n\n";
  }
  s += "plt.legend()\nplt.savefig('plot.png', dpi=150)\n";
  return s;
}

int cmd_run(const std::string& config_path, int64_t seed_override,
            const std::string& out_override, int threads) {
  Config cfg = load_config(config_path);
  if (seed_override >= 0) cfg.seed = uint64_t(seed_override);
  if (!out_override.empty()) cfg.output_dir = out_override;
  openblas_set_num_threads(threads);

  const json resolved = resolve_params(cfg.experiment, cfg.params);
  ExperimentResult res = run_experiment(cfg.experiment, cfg.params, cfg.seed);

  fs::create_directories(cfg.output_dir);
  const fs::path out(cfg.output_dir);

  json manifest = {{"experiment", cfg.experiment},
                   {"seed", cfg.seed},
                   {"params", resolved},
                   {"rng", {{"algorithm", kRngId}}},
                   {"threads", threads},
                   {"format",
                    {{"csv", "RFC-4180, UTF-8, %.17g doubles"},
                     {"dat", "columns: x y yerr"}}}};
  json outputs = json::array({"manifest.json", "results.csv", "results.json"});
  for (const auto& d : res.dat) outputs.push_back(d.name);
  manifest["outputs"] = outputs;

  write_atomic(out / "manifest.json", manifest.dump(2) + "\n");
  write_atomic(out / "results.csv", to_csv(res));
  json results = {{"experiment", cfg.experiment},
                  {"seed", cfg.seed},
                  {"summary", res.summary}};
  write_atomic(out / "results.json", results.dump(2) + "\n");
  for (const auto& d : res.dat) write_atomic(out / d.name, to_dat(d));
  if (!res.dat.empty()) write_atomic(out / "plot.py", plot_script(res));

  std::cout << "wrote " << res.csv_rows.size() << " rows to "
            << (out / "results.csv").string() << "\n";
  std::cout << results["summary"].dump(2) << "\n";
  return 0;
}

int cmd_validate(const std::string& config_path) {
  Config cfg = load_config(config_path);
  const json resolved = resolve_params(cfg.experiment, cfg.params);
  const ResourceEstimate est = estimate_resources(cfg.experiment, cfg.params);
  std::cout << "experiment: " << cfg.experiment << "\n";
  std::cout << "resolved params: " << resolved.dump() << "\n";
  std::cout << "estimated memory: " << est.mem_bytes / (1024.0 * 1024.0)
            << " MiB\n";
  std::cout << "estimated runtime: ~" << est.seconds << " s\n";
  if (est.over_cap)
    std::cout << "ResourceExceeded warning: " << est.note << "\n";
  else
    std::cout << "OK\n";
  return 0;
}

int cmd_list() {
  for (const auto& e : experiment_registry()) {
    std::cout << e.name << "\n    " << e.description << "\n    defaults: "
              << e.defaults.dump() << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mixedorder: mixed-state order diagnostics and recovery"};
  app.require_subcommand(1);

  std::string config_path, out_dir;
  int64_t seed = -1;
  int threads = 1;
  if (const char* env = std::getenv("MIXEDORDER_THREADS"))
    threads = std::max(1, std::atoi(env));

  auto* run = app.add_subcommand("run", "run an experiment from a config");
  run->add_option("config", config_path, "JSON config file")->required();
  run->add_option("--seed", seed, "override the config seed");
  run->add_option("--out", out_dir, "override the output directory");
  run->add_option("--threads", threads, "BLAS thread count");

  auto* val = app.add_subcommand("validate", "dry-run schema/resource check");
  val->add_option("config", config_path, "JSON config file")->required();

  app.add_subcommand("list-experiments", "list known experiments");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(config_path, seed, out_dir, threads);
    if (val->parsed()) return cmd_validate(config_path);
    return cmd_list();
  } catch (const ConfigInvalid& e) {
    std::cerr << "ConfigInvalid: " << e.what() << "\n";
    return 2;
  } catch (const ResourceExceeded& e) {
    std::cerr << "ResourceExceeded: " << e.what() << "\n";
    return 3;
  } catch (const TooLarge& e) {
    std::cerr << "ResourceExceeded: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
}
