#pragma once

#include <set>
#include <vector>

#include "mixedorder/linalg.hpp"
#include "mixedorder/pauli.hpp"

namespace mixedorder {

// Dense qubit density matrix. Construction hermitizes, checks the trace and
// clips negative eigenvalues within psd_tol (spectrum renormalized). The PSD
// eigenvalue sweep is only run eagerly up to kEagerPsdDim; above that the
// cheap checks run here and the clipping happens inside the spectral
// functions that consume the matrix.
class DensityMatrix {
 public:
  static constexpr int kMaxSites = 14;
  static constexpr Eigen::Index kEagerPsdDim = 1 << 9;

  DensityMatrix(int n_sites, Mat m, double psd_tol = 1e-10);

  static DensityMatrix from_pure(int n_sites, const Vec& psi,
                                 double psd_tol = 1e-10);

  int n_sites() const { return n_sites_; }
  Eigen::Index dim() const { return mat_.rows(); }
  const Mat& mat() const { return mat_; }
  double psd_tol() const { return psd_tol_; }

  double purity() const;  // Tr rho^2

  // Full invariant check (Hermitian, unit trace, PSD), regardless of size.
  void validate_full() const;

 private:
  int n_sites_;
  Mat mat_;
  double psd_tol_;
};

DensityMatrix partial_trace(const DensityMatrix& rho,
                            const std::set<int>& keep);

double von_neumann_entropy(const DensityMatrix& rho);  // nats

DensityMatrix apply_pauli_string(const DensityMatrix& rho,
                                 const PauliString& p);

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);

// Relabel sites: site i of the input becomes site perm[i] of the output.
DensityMatrix reorder_sites(const DensityMatrix& rho,
                            const std::vector<int>& perm);

}  // namespace mixedorder
