#include "mixedorder/density_matrix.hpp"

#include <cmath>

#include "mixedorder/errors.hpp"

namespace mixedorder {

DensityMatrix::DensityMatrix(int n_sites, Mat m, double psd_tol)
    : n_sites_(n_sites), mat_(std::move(m)), psd_tol_(psd_tol) {
  if (n_sites < 0 || n_sites > kMaxSites)
    throw TooLarge("DensityMatrix n_sites cap is " +
                   std::to_string(kMaxSites));
  if (psd_tol < 0) throw Error("psd_tol must be nonnegative");
  const Eigen::Index dim = Eigen::Index{1} << n_sites;
  if (mat_.rows() != dim || mat_.cols() != dim)
    throw DimensionMismatch("matrix dimension vs 2^n_sites");
  if (!mat_.allFinite()) throw Error("non-finite density matrix entries");
  mat_ = hermitize(mat_);
  const double tr = mat_.trace().real();
  if (std::abs(tr - 1.0) > 1e-12) {
    if (std::abs(tr - 1.0) > 1e-6)
      throw Error("density matrix trace " + std::to_string(tr));
    mat_ /= tr;  // drift-level renormalization
  }
  if (dim <= kEagerPsdDim) {
    Eigh e = eigh(mat_);
    const double lo = e.values.minCoeff();
    if (lo < -psd_tol_)
      throw NotPSD("eigenvalue " + std::to_string(lo) + " below -psd_tol");
    if (lo < 0) {
      RVec clipped = e.values.cwiseMax(0.0);
      clipped /= clipped.sum();
      mat_ = e.vectors * clipped.asDiagonal() * e.vectors.adjoint();
      mat_ = hermitize(mat_);
    }
  }
}

DensityMatrix DensityMatrix::from_pure(int n_sites, const Vec& psi,
                                       double psd_tol) {
  Vec v = psi / psi.norm();
  return DensityMatrix(n_sites, v * v.adjoint(), psd_tol);
}

double DensityMatrix::purity() const {
  return (mat_ * mat_).trace().real();
}

void DensityMatrix::validate_full() const {
  require_hermitian(mat_, 1e-12);
  if (std::abs(mat_.trace().real() - 1.0) > 1e-12)
    throw Error("trace invariant violated");
  RVec v = eigvalsh(mat_);
  if (v.minCoeff() < -psd_tol_) throw NotPSD("validate_full");
}

DensityMatrix partial_trace(const DensityMatrix& rho,
                            const std::set<int>& keep) {
  const int n = rho.n_sites();
  for (int s : keep)
    if (s < 0 || s >= n) throw BadSiteSet("partial_trace keep set");
  std::vector<int> kept(keep.begin(), keep.end());
  const int k = static_cast<int>(kept.size());
  std::vector<int> traced;
  for (int s = 0; s < n; ++s)
    if (!keep.count(s)) traced.push_back(s);

  LocalIndexer ix(n, kept);  // rest enumerates the traced-out sites
  const uint64_t dk = uint64_t{1} << k;
  Mat out = Mat::Zero(dk, dk);
  for (uint64_t i = 0; i < dk; ++i)
    for (uint64_t j = 0; j < dk; ++j) {
      cplx acc = 0;
      for (uint64_t r = 0; r < ix.rest.size(); ++r)
        acc += rho.mat()(ix.index(r, i), ix.index(r, j));
      out(i, j) = acc;
    }
  return DensityMatrix(k, std::move(out), rho.psd_tol());
}

double von_neumann_entropy(const DensityMatrix& rho) {
  RVec v = eigvalsh(rho.mat());
  double s = 0;
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (v[i] > kSupportTol) s -= v[i] * std::log(v[i]);
  return std::max(0.0, s);
}

DensityMatrix apply_pauli_string(const DensityMatrix& rho,
                                 const PauliString& p) {
  if (p.n_sites != rho.n_sites())
    throw DimensionMismatch("pauli string vs density matrix");
  Mat m = rho.mat();
  for (const auto& f : p.factors) {
    LocalIndexer ix(rho.n_sites(), {f.site});
    m = local_conjugate(Mat(f.op), ix, m);
  }
  return DensityMatrix(rho.n_sites(), std::move(m), rho.psd_tol());
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  // b's sites are appended after a's; site i <-> bit i puts b's block in the
  // high bits, i.e. kron(b, a) in matrix form.
  return DensityMatrix(a.n_sites() + b.n_sites(), kron(b.mat(), a.mat()),
                       std::max(a.psd_tol(), b.psd_tol()));
}

DensityMatrix reorder_sites(const DensityMatrix& rho,
                            const std::vector<int>& perm) {
  const int n = rho.n_sites();
  if (static_cast<int>(perm.size()) != n)
    throw BadSiteSet("permutation size mismatch");
  std::vector<bool> seen(n, false);
  for (int p : perm) {
    if (p < 0 || p >= n || seen[p]) throw BadSiteSet("invalid permutation");
    seen[p] = true;
  }
  const uint64_t dim = uint64_t{1} << n;
  std::vector<uint64_t> map(dim);
  for (uint64_t i = 0; i < dim; ++i) {
    uint64_t j = 0;
    for (int s = 0; s < n; ++s)
      if (i & (uint64_t{1} << s)) j |= (uint64_t{1} << perm[s]);
    map[i] = j;
  }
  Mat out(dim, dim);
  for (uint64_t i = 0; i < dim; ++i)
    for (uint64_t j = 0; j < dim; ++j) out(map[i], map[j]) = rho.mat()(i, j);
  return DensityMatrix(n, std::move(out), rho.psd_tol());
}

}  // namespace mixedorder
