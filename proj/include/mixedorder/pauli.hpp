#pragma once

#include <vector>

#include "mixedorder/linalg.hpp"

namespace mixedorder {

using Mat2 = Eigen::Matrix2cd;

Mat2 pauli_i();
Mat2 pauli_x();
Mat2 pauli_y();
Mat2 pauli_z();

// A single-site operator: one of the Paulis or an arbitrary 2x2 matrix,
// with an overall phase folded in. Site indices are 0-based; site i maps to
// bit i of the computational basis index.
struct SiteOperator {
  int site = 0;
  Mat2 op = Mat2::Identity();

  static SiteOperator X(int site);
  static SiteOperator Y(int site);
  static SiteOperator Z(int site);
  static SiteOperator custom(int site, const Mat2& op, cplx phase = 1.0);
};

// Ordered product of single-site operators on distinct sites; unlisted sites
// act as identity.
struct PauliString {
  std::vector<SiteOperator> factors;  // sites strictly increasing
  int n_sites = 0;

  PauliString() = default;
  PauliString(std::vector<SiteOperator> f, int n);

  // prod_i X_i on n sites
  static PauliString all_x(int n);
  static PauliString single(const SiteOperator& f, int n);
  static PauliString pair(const SiteOperator& a, const SiteOperator& b, int n);

  bool is_identity_site(int site) const;
  Mat to_matrix() const;  // dense 2^n x 2^n; n capped by kDenseSiteCap
  // 2x2 factor at a site (identity if absent)
  Mat2 factor_at(int site) const;
};

inline constexpr int kDenseSiteCap = 14;

// Matrix-vector index helpers for operators supported on a few sites.
// Full basis index = bits of `rest` spread over non-support sites, plus
// `local` bits placed at the support sites.
struct LocalIndexer {
  int n_sites;
  std::vector<int> sites;         // ascending
  std::vector<uint64_t> rest;     // 2^(n-s) expanded rest patterns
  std::vector<uint64_t> local;    // 2^s expanded local patterns

  LocalIndexer(int n_sites, std::vector<int> support);
  uint64_t index(uint64_t r, uint64_t l) const { return rest[r] | local[l]; }
  int s() const { return static_cast<int>(sites.size()); }
};

// out = (K embedded on `sites`) * m
Mat local_left_mult(const Mat& k, const LocalIndexer& ix, const Mat& m);
// out = m * (K embedded on `sites`)
Mat local_right_mult(const Mat& m, const Mat& k, const LocalIndexer& ix);
// K rho K† for K supported on `sites`
Mat local_conjugate(const Mat& k, const LocalIndexer& ix, const Mat& rho);

// Dense embedding of a small operator on the given sites.
Mat embed_local(const Mat& k, const std::vector<int>& sites, int n_sites);

}  // namespace mixedorder
