#pragma once

#include <set>
#include <vector>

#include "mixedorder/channels.hpp"
#include "mixedorder/density_matrix.hpp"

namespace mixedorder {

// Gauss-Legendre nodes/weights on [-1, 1].
struct Quadrature {
  std::vector<double> nodes;
  std::vector<double> weights;
};
Quadrature gauss_legendre(int n_nodes);

// beta_0(t) = (pi/2) / (cosh(pi t) + 1), the rotation measure of the
// twirled Petz map.
double petz_beta0(double t);

// Rotated Petz recovery map for a channel E and reference sigma:
//   R(X) = integral dt beta_0(t) sigma^{(1-it)/2} E†[ E(sigma)^{(it-1)/2} X
//          E(sigma)^{(-it-1)/2} ] sigma^{(1+it)/2}
// integrated by Gauss-Legendre over [-t_cutoff, t_cutoff]. With
// rotated=false the plain Petz map (t=0) is used.
class PetzMap {
 public:
  // strict_support: reject inputs with weight outside supp E(sigma). With
  // false the map silently projects such weight away (the raw output loses
  // trace); useful for block recoveries acting on marginals.
  PetzMap(DensityMatrix sigma, KrausChannel channel, int n_nodes = 96,
          double t_cutoff = 6.0, bool rotated = true,
          bool strict_support = true);

  int n_sites() const { return sigma_.n_sites(); }
  const KrausChannel& channel() const { return channel_; }
  const DensityMatrix& sigma() const { return sigma_; }
  double weight_sum() const { return weight_sum_; }

  Mat apply_raw(const Mat& x) const;
  // Renormalized output plus the trace deficit of the raw map.
  std::pair<DensityMatrix, double> apply(const DensityMatrix& rho) const;

  // Action of (this map on `sites`) tensor identity on a larger register.
  // full_channel must hold the same gates with global site labels.
  Mat apply_raw_embedded(const Mat& x, const KrausChannel& full_channel,
                         const std::vector<int>& sites) const;

  // One effective Kraus operator sigma^{(1-it)/2} K† E(sigma)^{(it-1)/2}
  // for quadrature node index `node` and full-dimension Kraus K.
  Mat effective_kraus(int node, const Mat& k) const;
  int node_count() const { return static_cast<int>(t_nodes_.size()); }

 private:
  DensityMatrix sigma_;
  KrausChannel channel_;
  bool rotated_;
  bool strict_support_;
  std::vector<double> t_nodes_, t_weights_;
  double weight_sum_ = 0;
  Eigh sig_eig_, esig_eig_;
  Mat esig_kernel_;  // columns spanning ker E(sigma)

  Mat sigma_power(double re, double t) const;
  Mat esigma_power(double re, double t) const;
};

// Commutation of every effective Kraus operator with the symmetry
// generator, checked at each quadrature node.
SymmetryCheck check_recovery_symmetry(const PetzMap& map,
                                      const SymmetrySpec& sym,
                                      std::size_t max_kraus = 4096);

struct RecoveryReport {
  double fidelity_recovered = 0;
  double cmi_before = 0;
  double cmi_after = 0;
  double bound_slack = 0;  // [cmi gap]/ln2 - (-2 log2 F), must be >= -1e-8
  double trace_distance_residual = 0;
  double td_bound = 0;  // sqrt(4 ln2 cmi_before)
  double trace_deficit = 0;
};

// Petz recovery of a channel supported in A, with reference
// sigma = rho_AB (x) rho_C; reports the CMI-difference bound.
RecoveryReport cmi_markov_gap(const DensityMatrix& rho,
                              const KrausChannel& channel,
                              const std::set<int>& a, const std::set<int>& b,
                              const std::set<int>& c, int n_nodes = 96,
                              double t_cutoff = 6.0);

struct RecoveryStep {
  int layer = 0;
  int block = 0;
  double cmi_before = 0;
  double fidelity = 0;
  double step_residual = 0;  // ideal-input trace distance of this layer step
};

struct LayeredRecoveryResult {
  std::vector<RecoveryStep> steps;
  double cumulative_residual = 0;
  double per_step_sum = 0;  // triangle-inequality budget
};

// Block-by-block reversal of a layered circuit on a chain, last layer
// first. Gates are grouped into blocks of size block_size; each block's
// Petz map acts on the block plus a buffer of up to block_size sites per
// side (identity elsewhere), referenced to the pre-layer marginal there.
LayeredRecoveryResult layered_recovery(const DensityMatrix& rho0,
                                       const std::vector<KrausChannel>& layers,
                                       int block_size, int n_nodes = 96,
                                       double t_cutoff = 6.0);

}  // namespace mixedorder
