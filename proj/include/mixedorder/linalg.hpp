#pragma once

// Dense Hermitian matrix calculus. Everything funnels through a LAPACK
// eigendecomposition (zheevd) or a pivoted Cholesky (zpstrf); inputs are
// symmetrized before decomposition so drift accumulated by repeated channel
// application cannot leak into spectral functions.

#include <Eigen/Dense>
#include <complex>
#include <utility>

namespace mixedorder {

using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;
using cplx = std::complex<double>;

inline constexpr double kHermTol = 1e-12;
inline constexpr double kSupportTol = 1e-12;

// (m + m†)/2
Mat hermitize(const Mat& m);

double max_abs(const Mat& m);

// max |m - m†| entry
double hermiticity_defect(const Mat& m);

void require_square(const Mat& m);
void require_hermitian(const Mat& m, double tol = 1e-10);

struct Eigh {
  RVec values;   // ascending
  Mat vectors;   // columns
};

// Full Hermitian eigendecomposition (zheevd). Symmetrizes first.
Eigh eigh(const Mat& m);

// Eigenvalues only (zheevd, job 'N'). Symmetrizes first.
RVec eigvalsh(const Mat& m);

// Hermitian PSD square root. Throws NotHermitian / NotPSD.
Mat mat_sqrt(const Mat& m, double psd_tol = 1e-10);

// lambda -> lambda^p on the support (lambda > support_tol), 0 elsewhere.
// Negative exponents follow the pseudo-inverse convention.
Mat mat_power(const Mat& m, double exponent, double psd_tol = 1e-10,
              double support_tol = kSupportTol);

// lambda -> lambda^re * exp(i * im * ln lambda) on the support, 0 elsewhere.
// Used for the sigma^{1/2 +- it} factors of the rotated Petz map.
Mat mat_power_complex(const Mat& m, double re, double im,
                      double psd_tol = 1e-10, double support_tol = kSupportTol);

// Rank-revealing factorization rho ~= A A† with A of shape (dim x rank),
// via pivoted Cholesky (zpstrf). Requires rho Hermitian PSD up to psd_tol.
Mat psd_factor(const Mat& m, double psd_tol = 1e-10);

// Nuclear norm ||A† B||_1. For PSD rho = A A†, sigma = B B† this equals the
// fidelity Tr sqrt(sqrt(rho) sigma sqrt(rho)) for any choice of factors.
double nuclear_norm_product(const Mat& a, const Mat& b);

// Sum of singular values of an arbitrary square matrix (via eigvalsh of m†m).
double nuclear_norm(const Mat& m);

Mat kron(const Mat& a, const Mat& b);

}  // namespace mixedorder
