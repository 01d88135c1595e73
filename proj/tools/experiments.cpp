#include "experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

#include "mixedorder/channels.hpp"
#include "mixedorder/diagnostics.hpp"
#include "mixedorder/errors.hpp"
#include "mixedorder/models.hpp"
#include "mixedorder/recovery.hpp"
#include "mixedorder/rng.hpp"
#include "mixedorder/statmech.hpp"

namespace mixedorder::cli {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

using mixedorder::cli::fmt;  // keep the double overload visible next to this
std::string fmt(int v) { return std::to_string(v); }

std::vector<double> grid(const json& j) {
  return j.get<std::vector<double>>();
}

MCParams mc_params(const json& p, uint64_t seed) {
  MCParams run;
  run.n_therm = p.at("n_therm").get<int>();
  run.n_sweeps = p.at("n_sweeps").get<int>();
  run.measure_stride = p.at("measure_stride").get<int>();
  run.seed = seed;
  return run;
}

double tr_rho_cubed(const DensityMatrix& rho) {
  const RVec lam = eigvalsh(rho.mat());
  double t = 0;
  for (Eigen::Index i = 0; i < lam.size(); ++i)
    t += std::pow(std::max(0.0, lam[i]), 3);
  return t;
}

// ---- individual experiments -------------------------------------------

ExperimentResult run_table1_demo(const json& p, uint64_t) {
  const int n = p.at("n").get<int>();
  ExperimentResult out;
  out.csv_header = {"experiment", "module",   "operation", "state",
                    "pair",       "fidelity", "renyi2",    "linear",
                    "verdict"};
  struct Entry {
    std::string name;
    DensityMatrix rho;
  };
  std::vector<Entry> states = {{"plus_product", state_plus_product(n)},
                               {"one_plus_X", state_one_plus_X(n)},
                               {"ghz", state_ghz(n)}};
  for (auto& e : states) {
    auto c = classify_ssb(e.rho, pauli_z(), {{0, n - 1}});
    out.csv_rows.push_back({"table1_demo", "diagnostics", "classify_ssb",
                            e.name, "0-" + std::to_string(n - 1),
                            fmt(c.fidelity_value), fmt(c.renyi2_value),
                            fmt(c.linear_value), c.verdict_name()});
    out.summary[e.name] = {{"fidelity", c.fidelity_value},
                           {"renyi2", c.renyi2_value},
                           {"linear", c.linear_value},
                           {"verdict", c.verdict_name()}};
  }
  return out;
}

ExperimentResult run_thermal_scan(const json& p, uint64_t) {
  const int n = p.at("n").get<int>();
  const auto betas = grid(p.at("betas"));
  ExperimentResult out;
  out.csv_header = {"experiment", "module",     "operation",
                    "n",          "beta",       "f_computed",
                    "f_closed",   "abs_diff",   "zz_linear"};
  DatFile dat{"thermal_fidelity.dat", "beta  F_Z(0," + std::to_string(n - 1) +
                                          ")  abs_diff_vs_closed_form"};
  double worst = 0;
  for (double beta : betas) {
    ThermalSpec spec;
    spec.beta = beta;
    DensityMatrix rho = state_thermal_commuting(n, spec);
    CorrelatorRequest req{pauli_z(), 0, n - 1};
    const double f = fidelity_correlator(rho, req);
    const double closed = thermal_fidelity_closed_form(n, beta);
    const double lin = linear_correlator(rho, req);
    const double diff = std::abs(f - closed);
    worst = std::max(worst, diff);
    out.csv_rows.push_back({"thermal_scan", "diagnostics",
                            "fidelity_correlator", fmt(n), fmt(beta), fmt(f),
                            fmt(closed), fmt(diff), fmt(lin)});
    dat.rows.push_back({beta, f, diff});
  }
  out.summary = {{"n", n}, {"max_abs_diff", worst}};
  out.dat.push_back(std::move(dat));
  return out;
}

ExperimentResult run_ising_decohere_scan(const json& p, uint64_t) {
  const int lx = p.at("lx").get<int>(), ly = p.at("ly").get<int>();
  const bool periodic = p.at("boundary").get<std::string>() == "periodic";
  const bool dense_check = p.at("dense_check").get<bool>();
  auto lat = LatticeSpec::square(
      lx, ly,
      periodic ? LatticeSpec::Boundary::periodic
               : LatticeSpec::Boundary::open);
  const int n = lat.n_sites();
  ExperimentResult out;
  out.csv_header = {"experiment", "module", "operation", "p",
                    "fidelity",   "renyi2", "linear",    "dense_diff"};
  DatFile df{"ising_decohere_fidelity.dat", "p  F_Z(0," +
                                                std::to_string(n - 1) + ")  0"};
  DatFile dr{"ising_decohere_renyi2.dat",
             "p  R2(0," + std::to_string(n - 1) + ")  0"};
  for (double pv : grid(p.at("p_grid"))) {
    auto s = state_decohered_ising_string(lat, pv);
    const double f = string_fidelity_correlator(s, 0, n - 1);
    const double r2 = string_renyi2_correlator(s, 0, n - 1);
    const double lin = string_linear_correlator(s, 0, n - 1);
    double dd = 0;
    if (dense_check) {
      DensityMatrix rho = s.to_dense();
      dd = std::abs(f - fidelity_correlator(rho, {pauli_z(), 0, n - 1}));
    }
    out.csv_rows.push_back({"ising_decohere_scan", "diagnostics",
                            "string_correlators", fmt(pv), fmt(f), fmt(r2),
                            fmt(lin), fmt(dd)});
    df.rows.push_back({pv, f, 0.0});
    dr.rows.push_back({pv, r2, 0.0});
  }
  out.summary = {{"lattice", {lx, ly}}, {"n_sites", n}};
  out.dat.push_back(std::move(df));
  out.dat.push_back(std::move(dr));
  return out;
}

ExperimentResult run_replica_oracle(const json& p, uint64_t) {
  ExperimentResult out;
  out.csv_header = {"experiment", "module",  "operation", "lattice",
                    "p",          "x",       "y",         "quantum",
                    "classical",  "abs_diff"};
  double worst = 0;
  for (auto dims : {std::pair{2, 2}, std::pair{2, 3}}) {
    auto lat = LatticeSpec::square(dims.first, dims.second);
    const int n = lat.n_sites();
    const std::string lname =
        std::to_string(dims.first) + "x" + std::to_string(dims.second);
    for (double pv : grid(p.at("p_grid"))) {
      DensityMatrix rho = state_decohered_ising_dense(lat, pv);
      const double tr3 = tr_rho_cubed(rho);
      ReplicaSpinModel model{3, lat, pv / (1.0 - pv)};
      for (auto [x, y] : {std::pair{0, n - 1}, std::pair{0, 1}}) {
        const double quantum =
            replicated_fidelity(rho, {pauli_z(), x, y}, 1, 1) / tr3;
        const double classical = replica_enumerate(model, {{1, x}, {1, y}});
        const double diff = std::abs(quantum - classical);
        worst = std::max(worst, diff);
        out.csv_rows.push_back({"replica_oracle", "statmech",
                                "replica_enumerate", lname, fmt(pv), fmt(x),
                                fmt(y), fmt(quantum), fmt(classical),
                                fmt(diff)});
      }
    }
  }
  out.summary = {{"max_abs_diff", worst}};
  return out;
}

ExperimentResult run_rbim_scan(const json& p, uint64_t seed) {
  const auto p_grid = grid(p.at("p_grid"));
  const auto sizes = p.at("sizes").get<std::vector<int>>();
  const int n_disorder = p.at("n_disorder").get<int>();
  auto pts = rbim_nishimori_scan(p_grid, sizes, mc_params(p, seed),
                                 n_disorder, seed);
  ExperimentResult out;
  out.csv_header = {"experiment",     "module",    "operation",
                    "L",              "p",         "binder",
                    "binder_err",     "energy_per_bond", "energy_err",
                    "nishimori_exact"};
  std::vector<std::vector<double>> binder(sizes.size());
  for (const auto& pt : pts) {
    const auto it = std::find(sizes.begin(), sizes.end(), pt.L);
    binder[it - sizes.begin()].push_back(pt.binder);
    out.csv_rows.push_back({"rbim_scan", "statmech", "rbim_nishimori_scan",
                            fmt(pt.L), fmt(pt.x), fmt(pt.binder),
                            fmt(pt.binder_err), fmt(pt.energy_per_bond),
                            fmt(pt.energy_err), fmt(1.0 - 2.0 * pt.x)});
  }
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    DatFile d{"rbim_binder_L" + std::to_string(sizes[i]) + ".dat",
              "p  binder  binder_err"};
    for (const auto& pt : pts)
      if (pt.L == sizes[i]) d.rows.push_back({pt.x, pt.binder, pt.binder_err});
    out.dat.push_back(std::move(d));
  }
  out.summary = {{"n_disorder", n_disorder}};
  if (sizes.size() >= 2) {
    try {
      out.summary["crossing_p"] =
          crossing_estimate(p_grid, binder.front(), binder.back());
    } catch (const BadGrid&) {
      out.summary["crossing_p"] = nullptr;
    }
  }
  return out;
}

ExperimentResult run_renyi2_pc(const json& p, uint64_t seed) {
  const auto p_grid = grid(p.at("p_grid"));
  const auto sizes = p.at("sizes").get<std::vector<int>>();
  MCParams run = mc_params(p, seed);
  auto pts = ising_renyi2_scan(p_grid, sizes, run);
  ExperimentResult out;
  out.csv_header = {"experiment", "module", "operation", "L",
                    "p",          "binder", "binder_err"};
  std::vector<std::vector<double>> binder(sizes.size());
  for (const auto& pt : pts) {
    const auto it = std::find(sizes.begin(), sizes.end(), pt.L);
    binder[it - sizes.begin()].push_back(pt.binder);
    out.csv_rows.push_back({"renyi2_pc", "statmech", "ising_renyi2_scan",
                            fmt(pt.L), fmt(pt.x), fmt(pt.binder),
                            fmt(pt.binder_err)});
  }
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    DatFile d{"renyi2_binder_L" + std::to_string(sizes[i]) + ".dat",
              "p  binder  binder_err"};
    for (const auto& pt : pts)
      if (pt.L == sizes[i]) d.rows.push_back({pt.x, pt.binder, pt.binder_err});
    out.dat.push_back(std::move(d));
  }
  out.summary = {{"analytic_pc", purity_ising_pc()},
                 {"analytic_tau_c", purity_ising_tau_c()}};
  if (sizes.size() >= 2) {
    try {
      out.summary["crossing_p"] =
          crossing_estimate(p_grid, binder.front(), binder.back());
    } catch (const BadGrid&) {
      out.summary["crossing_p"] = nullptr;
    }
  }
  return out;
}

ExperimentResult run_villain_scan(const json& p, uint64_t seed) {
  const auto alpha_grid = grid(p.at("alpha_grid"));
  const auto sizes = p.at("sizes").get<std::vector<int>>();
  auto pts = villain_kt_scan(alpha_grid, sizes, mc_params(p, seed));
  ExperimentResult out;
  out.csv_header = {"experiment",  "module",       "operation",
                    "L",           "alpha",        "helicity",
                    "helicity_err", "kt_line"};
  for (const auto& pt : pts)
    out.csv_rows.push_back({"villain_scan", "statmech", "villain_kt_scan",
                            fmt(pt.L), fmt(pt.x), fmt(pt.helicity),
                            fmt(pt.helicity_err),
                            fmt(2.0 * pt.x / M_PI)});
  for (int L : sizes) {
    DatFile d{"villain_helicity_L" + std::to_string(L) + ".dat",
              "alpha  helicity  helicity_err"};
    std::vector<double> hel, line;
    for (const auto& pt : pts)
      if (pt.L == L) {
        d.rows.push_back({pt.x, pt.helicity, pt.helicity_err});
        hel.push_back(pt.helicity);
        line.push_back(2.0 * pt.x / M_PI);
      }
    try {
      out.summary["crossing_alpha_L" + std::to_string(L)] =
          crossing_estimate(alpha_grid, hel, line);
    } catch (const BadGrid&) {
      out.summary["crossing_alpha_L" + std::to_string(L)] = nullptr;
    }
    out.dat.push_back(std::move(d));
  }
  return out;
}

ExperimentResult run_recovery_suite(const json& p, uint64_t seed) {
  const int n_instances = p.at("n_instances").get<int>();
  const int qmin = p.at("min_qubits").get<int>();
  const int qmax = p.at("max_qubits").get<int>();
  const int n_nodes = p.at("n_nodes").get<int>();
  if (qmin < 3 || qmax > 8 || qmin > qmax)
    throw ConfigInvalid("qubit range must lie in [3, 8]");
  ExperimentResult out;
  out.csv_header = {"experiment", "module",    "operation", "instance",
                    "n",          "channel",   "p",         "cmi_before",
                    "cmi_after",  "fidelity",  "slack",     "residual",
                    "td_bound"};
  Xoshiro256pp rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  double min_slack = 1e300;
  for (int inst = 0; inst < n_instances; ++inst) {
    const int n = qmin + int(rng.below(uint64_t(qmax - qmin + 1)));
    const Eigen::Index dim = Eigen::Index{1} << n;
    Mat g(dim, dim);
    for (Eigen::Index j = 0; j < dim; ++j)
      for (Eigen::Index i = 0; i < dim; ++i)
        g(i, j) = cplx(gauss(rng), gauss(rng));
    Mat m = g * g.adjoint();
    DensityMatrix rho(n, m / m.trace().real());

    const double pv = 0.05 + 0.4 * rng.uniform();
    const bool two_site = rng.below(2) == 1 && n >= 4;
    const int s0 = int(rng.below(uint64_t(n - (two_site ? 3 : 2))));
    std::set<int> a;
    std::string cname;
    KrausChannel ch = KrausChannel::identity(n);
    if (two_site) {
      ch = KrausChannel(
          n, {zz_dephasing(n, LatticeSpec::chain(n), pv).factors()[s0]});
      a = {s0, s0 + 1};
      cname = "zz_dephasing";
    } else {
      ch = KrausChannel(n, {site_x_dephasing(n, pv).factors()[s0]});
      a = {s0};
      cname = "site_x_dephasing";
    }
    // annular partition: B is a one- or two-site collar around A
    const int bw = 1 + int(rng.below(2));
    std::set<int> b, c;
    for (int s = 0; s < n; ++s) {
      if (a.count(s)) continue;
      const int d0 = std::abs(s - *a.begin()), d1 = std::abs(s - *a.rbegin());
      (std::min(d0, d1) <= bw ? b : c).insert(s);
    }
    if (c.empty()) {
      c.insert(*b.rbegin());
      b.erase(*b.rbegin());
    }
    auto rep = cmi_markov_gap(rho, ch, a, b, c, n_nodes);
    min_slack = std::min(min_slack, rep.bound_slack);
    out.csv_rows.push_back(
        {"recovery_suite", "recovery", "cmi_markov_gap", fmt(inst), fmt(n),
         cname, fmt(pv), fmt(rep.cmi_before), fmt(rep.cmi_after),
         fmt(rep.fidelity_recovered), fmt(rep.bound_slack),
         fmt(rep.trace_distance_residual), fmt(rep.td_bound)});
  }
  out.summary = {{"n_instances", n_instances}, {"min_slack", min_slack}};
  return out;
}

ExperimentResult run_ghz_counterexample(const json& p, uint64_t) {
  const int n = p.at("n").get<int>();
  const int x = p.at("x_site").get<int>();
  const int block_size = p.at("block_size").get<int>();
  const int n_nodes = p.at("n_nodes").get<int>();
  if (x <= 0 || x >= n) throw ConfigInvalid("x_site must lie in (0, n)");
  ExperimentResult out;
  out.csv_header = {"experiment", "module", "operation", "quantity", "value"};
  auto row = [&](const std::string& module, const std::string& op,
                 const std::string& q, double v) {
    out.csv_rows.push_back({"ghz_counterexample", module, op, q, fmt(v)});
    out.summary[q] = v;
  };

  // intermediate state: measure X everywhere except sites 0 and x
  DensityMatrix ghz = state_ghz(n);
  const KrausChannel measure_all = site_x_dephasing(n, 0.5);
  std::vector<LocalKraus> partial;
  for (const auto& f : measure_all.factors())
    if (f.sites[0] != 0 && f.sites[0] != x) partial.push_back(f);
  DensityMatrix rho_prime = KrausChannel(n, partial).apply(ghz);

  std::set<int> between, beyond;
  for (int s = 1; s < x; ++s) between.insert(s);
  for (int s = x; s < n; ++s) beyond.insert(s);
  row("diagnostics", "cmi", "cmi_intermediate",
      cmi(rho_prime, {0}, between, beyond));

  KrausChannel e0(n, {site_x_dephasing(n, 0.5).factors()[0]});
  auto rep = cmi_markov_gap(rho_prime, e0, {0}, between, beyond, n_nodes);
  row("recovery", "cmi_markov_gap", "markov_residual",
      rep.trace_distance_residual);
  row("recovery", "cmi_markov_gap", "markov_fidelity",
      rep.fidelity_recovered);
  row("recovery", "cmi_markov_gap", "markov_slack", rep.bound_slack);

  std::vector<KrausChannel> layer = {site_x_dephasing(n, 0.5)};
  auto ghz_rec = layered_recovery(ghz, layer, block_size, n_nodes);
  row("recovery", "layered_recovery", "ghz_layered_residual",
      ghz_rec.cumulative_residual);
  auto prod_rec =
      layered_recovery(state_plus_product(n), layer, block_size, n_nodes);
  row("recovery", "layered_recovery", "product_layered_residual",
      prod_rec.cumulative_residual);
  return out;
}

}  // namespace

const std::vector<ExperimentInfo>& experiment_registry() {
  static const std::vector<ExperimentInfo> reg = {
      {"table1_demo",
       "SW-SSB classification of the plus-product, 1+X and GHZ states",
       {{"n", 8}}},
      {"thermal_scan",
       "fidelity correlator of the commuting thermal state vs closed form",
       {{"n", 8}, {"betas", {0.3, 0.5, 1.0, 1.5, 2.0}}}},
      {"ising_decohere_scan",
       "string-basis correlators of the decohered 2d Ising state vs p",
       {{"lx", 4},
        {"ly", 4},
        {"boundary", "open"},
        {"p_grid", {0.02, 0.05, 0.08, 0.11, 0.15, 0.2, 0.25}},
        {"dense_check", false}}},
      {"replica_oracle",
       "t=3 replica enumeration against the dense replicated fidelity",
       {{"p_grid", {0.05, 0.1, 0.2}}}},
      {"rbim_scan",
       "disorder-averaged RBIM Binder cumulants along the Nishimori line",
       {{"p_grid", {0.05, 0.08, 0.1, 0.12, 0.15}},
        {"sizes", {8, 16}},
        {"n_disorder", 200},
        {"n_therm", 300},
        {"n_sweeps", 600},
        {"measure_stride", 2}}},
      {"renyi2_pc",
       "doubled-coupling Ising Binder crossing vs the analytic p_c",
       {{"p_grid", {0.16, 0.17, 0.178, 0.186, 0.195}},
        {"sizes", {8, 16}},
        {"n_therm", 500},
        {"n_sweeps", 4000},
        {"measure_stride", 2}}},
      {"villain_scan",
       "generalized-XY helicity modulus against the KT line 2 alpha / pi",
       {{"alpha_grid", {1.0, 1.1, 1.2, 1.3, 1.4, 1.5, 1.6, 1.7}},
        {"sizes", {16, 32}},
        {"n_therm", 800},
        {"n_sweeps", 3000},
        {"measure_stride", 2}}},
      {"recovery_suite",
       "randomized Petz recovery bound instances on small chains",
       {{"n_instances", 50},
        {"min_qubits", 4},
        {"max_qubits", 7},
        {"n_nodes", 96}}},
      {"ghz_counterexample",
       "GHZ measurement counterexample: CMI violation and failed recovery",
       {{"n", 8}, {"x_site", 4}, {"block_size", 1}, {"n_nodes", 48}}},
  };
  return reg;
}

json resolve_params(const std::string& name, const json& params) {
  const ExperimentInfo* info = nullptr;
  for (const auto& e : experiment_registry())
    if (e.name == name) info = &e;
  if (!info) throw ConfigInvalid("unknown experiment: " + name);
  json resolved = info->defaults;
  if (params.is_null()) return resolved;
  if (!params.is_object()) throw ConfigInvalid("params must be an object");
  for (const auto& [key, value] : params.items()) {
    if (!resolved.contains(key))
      throw ConfigInvalid("unknown parameter '" + key + "' for " + name);
    const auto& def = resolved[key];
    const bool both_numeric = def.is_number() && value.is_number();
    if (!both_numeric && def.type() != value.type())
      throw ConfigInvalid("parameter '" + key + "' has the wrong type");
    if (def.is_number_integer() && !value.is_number_integer())
      throw ConfigInvalid("parameter '" + key + "' must be an integer");
    resolved[key] = value;
  }
  return resolved;
}

ExperimentResult run_experiment(const std::string& name, const json& params,
                                uint64_t seed) {
  const json p = resolve_params(name, params);
  if (name == "table1_demo") return run_table1_demo(p, seed);
  if (name == "thermal_scan") return run_thermal_scan(p, seed);
  if (name == "ising_decohere_scan") return run_ising_decohere_scan(p, seed);
  if (name == "replica_oracle") return run_replica_oracle(p, seed);
  if (name == "rbim_scan") return run_rbim_scan(p, seed);
  if (name == "renyi2_pc") return run_renyi2_pc(p, seed);
  if (name == "villain_scan") return run_villain_scan(p, seed);
  if (name == "recovery_suite") return run_recovery_suite(p, seed);
  if (name == "ghz_counterexample") return run_ghz_counterexample(p, seed);
  throw ConfigInvalid("unknown experiment: " + name);
}

ResourceEstimate estimate_resources(const std::string& name,
                                    const json& params) {
  const json p = resolve_params(name, params);
  ResourceEstimate est;
  auto dense = [&](int n) {
    est.mem_bytes = 16.0 * std::pow(4.0, n);
    if (n > DensityMatrix::kMaxSites) {
      est.over_cap = true;
      est.note = "dense register of " + std::to_string(n) +
                 " sites exceeds the cap of " +
                 std::to_string(DensityMatrix::kMaxSites);
    }
  };
  if (name == "table1_demo" || name == "thermal_scan") {
    dense(p.at("n").get<int>());
    est.seconds = 10;
  } else if (name == "ising_decohere_scan") {
    const int n = p.at("lx").get<int>() * p.at("ly").get<int>();
    est.mem_bytes = 8.0 * std::pow(2.0, n);
    est.seconds = 5;
    if (n > 20) {
      est.over_cap = true;
      est.note = "string basis capped at 20 sites";
    }
    if (p.at("dense_check").get<bool>()) dense(n);
  } else if (name == "replica_oracle") {
    dense(6);
    est.seconds = 60;
  } else if (name == "rbim_scan" || name == "renyi2_pc" ||
             name == "villain_scan") {
    int lmax = 0;
    for (int L : p.at("sizes").get<std::vector<int>>()) lmax = std::max(L, lmax);
    est.mem_bytes = 8.0 * lmax * lmax;
    const double sweeps =
        double(p.at("n_therm").get<int>()) + p.at("n_sweeps").get<int>();
    double cells = double(p.count("p_grid") ? p.at("p_grid").size()
                                            : p.at("alpha_grid").size()) *
                   p.at("sizes").get<std::vector<int>>().size();
    if (p.contains("n_disorder")) cells *= p.at("n_disorder").get<int>();
    est.seconds = cells * sweeps * lmax * lmax * 2e-8;
    if (lmax > 32) {
      est.over_cap = true;
      est.note = "lattice sizes capped at 32";
    }
  } else if (name == "recovery_suite") {
    dense(p.at("max_qubits").get<int>());
    est.seconds = 1.5 * p.at("n_instances").get<int>();
  } else if (name == "ghz_counterexample") {
    dense(p.at("n").get<int>());
    est.seconds = 120;
  }
  return est;
}

}  // namespace mixedorder::cli
