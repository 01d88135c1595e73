#pragma once

#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include "mixedorder/lattice.hpp"
#include "mixedorder/linalg.hpp"

namespace mixedorder {

// Quenched +-J bond realization.
struct BondDisorder {
  LatticeSpec lattice;
  std::vector<int> signs;  // +1 / -1 per edge, in lattice.edges() order
  double flip_prob = 0.0;
  uint64_t seed = 0;

  static BondDisorder sample(const LatticeSpec& lattice, double p,
                             uint64_t seed);
};

struct MCParams {
  int n_therm = 500;
  int n_sweeps = 2000;
  int measure_stride = 2;
  uint64_t seed = 1;
};

struct ReplicaSpinModel {
  int t = 2;
  LatticeSpec lattice;
  double tanh_tau = 0.0;  // p / (1 - p)
};

// Partition sum of the t-replica model with the per-site constraint
// prod_k sigma^(k) = 1 eliminated into sigma^(t) = prod_{k<t} sigma^(k):
//   Z = sum_sigma exp(tau * sum_edges [sum_{k<t} s_k + prod_{k<t} s_k])
// where s_k = sigma_i^(k) sigma_j^(k). With insertions, returns the
// expectation <prod sigma> instead of Z. Insertions are (replica, site)
// with replica in 1..t.
double replica_enumerate(
    const ReplicaSpinModel& model,
    const std::vector<std::pair<int, int>>& insertions = {});

// 2 tau_c = arctanh(sqrt(2) - 1): doubled-coupling square-lattice Ising
// criticality of the Renyi-2 replica model.
double purity_ising_tau_c();
// p_c^(2) = tanh(tau_c) / (1 + tanh(tau_c)) ~= 0.178
double purity_ising_pc();

// Nishimori temperature for the +-J RBIM: e^{-2 beta} = p / (1 - p).
double nishimori_beta(double p);

// One scan point of a Monte Carlo study.
struct MCPoint {
  double x = 0;  // p (Ising-type scans) or alpha (Villain)
  int L = 0;
  double binder = 0;
  double binder_err = 0;
  double m2 = 0;
  double m4 = 0;
  double energy_per_bond = 0;  // RBIM: disorder-averaged <J s s> per bond
  double energy_err = 0;
  double helicity = 0;  // Villain only
  double helicity_err = 0;
  long n_measure = 0;
};

// Disorder-averaged +-J RBIM at the Nishimori temperature, single-spin-flip
// Metropolis, Binder cumulant as a ratio of disorder averages.
std::vector<MCPoint> rbim_nishimori_scan(const std::vector<double>& p_grid,
                                         const std::vector<int>& sizes,
                                         const MCParams& run, int n_disorder,
                                         uint64_t master_seed);

// Pure square-lattice Ising at the doubled coupling K = 2 tau(p), Wolff
// cluster updates; the Renyi-2 image of the decohered Ising state.
std::vector<MCPoint> ising_renyi2_scan(const std::vector<double>& p_grid,
                                       const std::vector<int>& sizes,
                                       const MCParams& run);

// Sampled configuration frequencies of a small +-J Ising system (n <= 16
// spins), for detailed-balance checks against exact Boltzmann weights.
std::vector<double> ising_metropolis_histogram(const BondDisorder& bonds,
                                               double beta, int n_sweeps,
                                               uint64_t seed);

// Fourier weights of the decohered-rotor bond factor: f_n proportional to
// e^{-alpha n^2 / 2} times a Jacobi theta constant (theta_3 for even n,
// theta_2 for odd n), normalized to f_0 = 1.
std::vector<double> villain_fn_coefficients(double rotor_alpha, int n_max);

// Generalized XY model with bond weight 1 + 2 sum_n f_n cos(n dtheta);
// helicity modulus Upsilon(alpha, L) with temperature identified with alpha.
std::vector<MCPoint> villain_kt_scan(const std::vector<double>& alpha_grid,
                                     const std::vector<int>& sizes,
                                     const MCParams& run);

// Domain-wall overlap weight f(D, D') = prod_e alpha^{(s-s')/2} beta^{|s-s'|/2}
// with beta = sqrt(1 - 4p(1-p) sin^2 theta), alpha = (1-p+p e^{2i theta})/beta.
cplx fdw_weight(double p, double theta, const std::vector<int>& d,
                const std::vector<int>& d_prime);

// First sign-change crossing of ya - yb over the grid x, linearly
// interpolated; throws BadGrid if the curves never cross.
double crossing_estimate(const std::vector<double>& x,
                         const std::vector<double>& ya,
                         const std::vector<double>& yb);

}  // namespace mixedorder
