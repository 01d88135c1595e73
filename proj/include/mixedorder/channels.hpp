#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mixedorder/density_matrix.hpp"
#include "mixedorder/lattice.hpp"
#include "mixedorder/linalg.hpp"
#include "mixedorder/pauli.hpp"

namespace mixedorder {

// One elementary CPTP factor: a Kraus set acting on a small site support.
struct LocalKraus {
  std::vector<int> sites;  // ascending
  std::vector<Mat> ops;    // each 2^s x 2^s

  bool is_diagonal() const;
};

struct SymmetrySpec {
  PauliString generator;
  int group_order = 2;

  static SymmetrySpec z2_all_x(int n_sites);
};

struct SymmetryCheck {
  bool symmetric = false;
  double max_violation = 0.0;
};

// Quantum channel stored as an ordered product of site-local Kraus factors.
// Factors are expanded to full dimension only at apply time; purely diagonal
// factors (phase channels) use an O(dim^2) elementwise fast path.
class KrausChannel {
 public:
  KrausChannel(int n_sites, std::vector<LocalKraus> factors,
               nlohmann::json description = {});

  static KrausChannel identity(int n_sites);

  int n_sites() const { return n_sites_; }
  const std::vector<LocalKraus>& factors() const { return factors_; }
  const nlohmann::json& description() const { return description_; }

  // Total Kraus operators in the expanded product representation.
  double kraus_count() const;

  // Full-dimension expanded Kraus set; throws TooLarge beyond max_count.
  std::vector<Mat> full_kraus(std::size_t max_count = 4096) const;

  // rho -> sum_K K rho K†, applied factor by factor.
  Mat apply_raw(const Mat& rho) const;
  DensityMatrix apply(const DensityMatrix& rho) const;

  // Adjoint (Heisenberg) action X -> sum_K K† X K, factors reversed.
  Mat apply_adjoint_raw(const Mat& x) const;

 private:
  int n_sites_;
  std::vector<LocalKraus> factors_;
  nlohmann::json description_;
};

KrausChannel zz_dephasing(int n_sites, const LatticeSpec& lattice, double p);
KrausChannel theta_channel(int n_sites, const LatticeSpec& lattice, double p,
                           double theta);
KrausChannel general_ising_channel(
    int n_sites, const LatticeSpec& lattice,
    const std::vector<std::pair<double, double>>& weights);  // (p_n, theta_n)
KrausChannel site_x_dephasing(int n_sites, double p);

KrausChannel compose(const KrausChannel& a, const KrausChannel& b);

// Representation-dependent: checks commutation of each stored Kraus operator
// with the generator restricted to its support. A failure does not rule out
// strong symmetry under a different Kraus representation.
SymmetryCheck check_strong_symmetry(const KrausChannel& channel,
                                    const SymmetrySpec& sym);

}  // namespace mixedorder
