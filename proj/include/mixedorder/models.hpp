#pragma once

#include <vector>

#include "mixedorder/density_matrix.hpp"
#include "mixedorder/lattice.hpp"
#include "mixedorder/pauli.hpp"

namespace mixedorder {

struct ThermalSpec {
  enum class Sector { even, odd };
  double beta = 0.0;
  Sector sector = Sector::even;
};

// In-place Walsh-Hadamard transform, unnormalized: out[k] = sum_m
// (-1)^{popcount(k & m)} v[m]. Length must be a power of two.
void walsh_hadamard(std::vector<double>& v);

// Decohered-Ising state stored as a probability vector over domain-wall
// endpoint patterns D: rho = sum_D q[D] |D><D| with |D> = prod_{v in D} Z_v
// |+...+>, which are orthonormal. q is indexed by the vertex bitmask of D.
struct StringBasisState {
  int n_sites = 0;
  LatticeSpec lattice;
  double p = 0.0;
  std::vector<double> q;

  DensityMatrix to_dense() const;
};

DensityMatrix state_plus_product(int n);
DensityMatrix state_one_plus_X(int n);

// (1/2)|+...+><+...+| + 2^{-(L+1)}(1 + prod X)
DensityMatrix state_counterexample(int L);

DensityMatrix state_ghz(int n);

// rho = P_sector exp(-beta sum_i X_i) / Z, normalized within the sector.
DensityMatrix state_thermal_commuting(int n, const ThermalSpec& spec);

// Closed form for the fidelity correlator of that state at any i != j.
double thermal_fidelity_closed_form(int n, double beta);

DensityMatrix state_decohered_ising_dense(const LatticeSpec& lattice, double p);
StringBasisState state_decohered_ising_string(const LatticeSpec& lattice,
                                              double p);

struct HamTerm {
  double coeff;
  PauliString op;
};

// F^(n) = Tr[(sqrt(rho) Ox Oy† rho Oy Ox† sqrt(rho))^n] / Tr rho^{2n}
// with rho = exp(-beta H), H = sum_k coeff_k P_k.
double thermal_replicated_correlator(const std::vector<HamTerm>& hamiltonian,
                                     int n_sites, double beta, int n_rep,
                                     const SiteOperator& ox,
                                     const SiteOperator& oy);

}  // namespace mixedorder
