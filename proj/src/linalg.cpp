#include "mixedorder/linalg.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>

#include "mixedorder/errors.hpp"

namespace mixedorder {

Mat hermitize(const Mat& m) { return 0.5 * (m + m.adjoint()); }

double max_abs(const Mat& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double hermiticity_defect(const Mat& m) { return max_abs(m - m.adjoint()); }

void require_square(const Mat& m) {
  if (m.rows() != m.cols()) throw DimensionMismatch("matrix is not square");
}

void require_hermitian(const Mat& m, double tol) {
  require_square(m);
  const double defect = hermiticity_defect(m);
  const double scale = std::max(1.0, max_abs(m));
  if (defect > tol * scale)
    throw NotHermitian("hermiticity defect " + std::to_string(defect));
}

namespace {

// Real-valued inputs (all the Z2 model states) get routed to the real
// LAPACK kernels; complex arithmetic costs 4x in the matrix products.
bool is_real(const Mat& m) { return m.imag().isZero(0.0); }

RVec real_sym_eigvals(Eigen::MatrixXd a) {
  const lapack_int n = static_cast<lapack_int>(a.rows());
  RVec values(n);
  if (n == 0) return values;
  lapack_int info =
      LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'N', 'L', n, a.data(), n, values.data());
  if (info != 0)
    throw Error("dsyevd failed with info=" + std::to_string(info));
  return values;
}

// zheevd on a symmetrized copy; jobz is 'V' or 'N'.
Eigh zheevd_impl(const Mat& m, char jobz) {
  require_square(m);
  Eigh out;
  out.vectors = hermitize(m);  // overwritten with eigenvectors if jobz == 'V'
  const lapack_int n = static_cast<lapack_int>(out.vectors.rows());
  out.values.resize(n);
  if (n == 0) return out;
  lapack_int info = LAPACKE_zheevd(
      LAPACK_COL_MAJOR, jobz, 'L', n,
      reinterpret_cast<lapack_complex_double*>(out.vectors.data()), n,
      out.values.data());
  if (info != 0)
    throw Error("zheevd failed with info=" + std::to_string(info));
  return out;
}

void check_psd(const RVec& values, double psd_tol) {
  if (values.size() > 0 && values.minCoeff() < -psd_tol)
    throw NotPSD("eigenvalue " + std::to_string(values.minCoeff()) +
                 " below -psd_tol");
}

}  // namespace

Eigh eigh(const Mat& m) { return zheevd_impl(m, 'V'); }

RVec eigvalsh(const Mat& m) { return zheevd_impl(m, 'N').values; }

Mat mat_sqrt(const Mat& m, double psd_tol) {
  require_hermitian(m, 1e-10);
  Eigh e = eigh(m);
  check_psd(e.values, psd_tol);
  RVec s = e.values.cwiseMax(0.0).cwiseSqrt();
  return e.vectors * s.asDiagonal() * e.vectors.adjoint();
}

Mat mat_power(const Mat& m, double exponent, double psd_tol,
              double support_tol) {
  Eigh e = eigh(m);
  check_psd(e.values, psd_tol);
  RVec s(e.values.size());
  for (Eigen::Index i = 0; i < s.size(); ++i)
    s[i] = e.values[i] > support_tol ? std::pow(e.values[i], exponent) : 0.0;
  return e.vectors * s.asDiagonal() * e.vectors.adjoint();
}

Mat mat_power_complex(const Mat& m, double re, double im, double psd_tol,
                      double support_tol) {
  Eigh e = eigh(m);
  check_psd(e.values, psd_tol);
  Vec s(e.values.size());
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (e.values[i] > support_tol) {
      const double lg = std::log(e.values[i]);
      s[i] = std::exp(re * lg) * std::exp(cplx(0.0, im * lg));
    } else {
      s[i] = 0.0;
    }
  }
  return e.vectors * s.asDiagonal() * e.vectors.adjoint();
}

Mat psd_factor(const Mat& m, double psd_tol) {
  require_hermitian(m, 1e-10);
  Mat a = hermitize(m);
  const lapack_int n = static_cast<lapack_int>(a.rows());
  if (n == 0) return Mat(0, 0);
  if (a.diagonal().real().minCoeff() < -psd_tol)
    throw NotPSD("psd_factor input has negative diagonal");
  std::vector<lapack_int> piv(n);
  lapack_int rank = 0;
  // tol = -1 selects LAPACK's n*eps*max(diag) cutoff; pivots below it
  // (including negative drift within psd_tol) terminate the factorization.
  // info > 0 means early termination at the reported rank, which is exactly
  // the rank-deficient PSD case.
  if (is_real(a)) {
    Eigen::MatrixXd ar = a.real();
    lapack_int info = LAPACKE_dpstrf(LAPACK_COL_MAJOR, 'L', n, ar.data(), n,
                                     piv.data(), &rank, -1.0);
    if (info < 0)
      throw Error("dpstrf failed with info=" + std::to_string(info));
    Mat out = Mat::Zero(n, rank);
    for (lapack_int j = 0; j < rank; ++j)
      for (lapack_int i = j; i < n; ++i) out(piv[i] - 1, j) = ar(i, j);
    return out;
  }
  lapack_int info = LAPACKE_zpstrf(
      LAPACK_COL_MAJOR, 'L', n,
      reinterpret_cast<lapack_complex_double*>(a.data()), n, piv.data(), &rank,
      -1.0);
  if (info < 0) throw Error("zpstrf failed with info=" + std::to_string(info));
  Mat l = Mat::Zero(n, rank);
  for (lapack_int j = 0; j < rank; ++j)
    for (lapack_int i = j; i < n; ++i) l(i, j) = a(i, j);
  // undo the pivoting: rows of L are in permuted order, piv is 1-based.
  Mat out = Mat::Zero(n, rank);
  for (lapack_int i = 0; i < n; ++i) out.row(piv[i] - 1) = l.row(i);
  return out;
}

double nuclear_norm_product(const Mat& a, const Mat& b) {
  if (a.rows() != b.rows()) throw DimensionMismatch("factor row mismatch");
  if (is_real(a) && is_real(b)) {
    const Eigen::MatrixXd ar = a.real(), br = b.real();
    const Eigen::MatrixXd m = ar.transpose() * br;
    return nuclear_norm(m.cast<cplx>());
  }
  Mat m = a.adjoint() * b;
  return nuclear_norm(m);
}

double nuclear_norm(const Mat& m) {
  if (m.size() == 0) return 0.0;
  // Hermitian fast path: singular values are |eigenvalues|.
  if (m.rows() == m.cols()) {
    const double scale = std::max(1.0, max_abs(m));
    if (hermiticity_defect(m) <= 1e-12 * scale) {
      if (is_real(m)) return real_sym_eigvals(m.real()).cwiseAbs().sum();
      return eigvalsh(m).cwiseAbs().sum();
    }
  }
  // General case: singular values via zgesdd (values only).
  Mat a = m;
  const lapack_int rows = static_cast<lapack_int>(a.rows());
  const lapack_int cols = static_cast<lapack_int>(a.cols());
  RVec s(std::min(rows, cols));
  Mat u(1, 1), vt(1, 1);
  lapack_int info = LAPACKE_zgesdd(
      LAPACK_COL_MAJOR, 'N', rows, cols,
      reinterpret_cast<lapack_complex_double*>(a.data()), rows, s.data(),
      reinterpret_cast<lapack_complex_double*>(u.data()), 1,
      reinterpret_cast<lapack_complex_double*>(vt.data()), 1);
  if (info != 0)
    throw Error("zgesdd failed with info=" + std::to_string(info));
  return s.sum();
}

Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

}  // namespace mixedorder
