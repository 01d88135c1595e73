#include "mixedorder/pauli.hpp"

#include <algorithm>

#include "mixedorder/errors.hpp"

namespace mixedorder {

Mat2 pauli_i() { return Mat2::Identity(); }

Mat2 pauli_x() {
  Mat2 m;
  m << 0, 1, 1, 0;
  return m;
}

Mat2 pauli_y() {
  Mat2 m;
  m << 0, cplx(0, -1), cplx(0, 1), 0;
  return m;
}

Mat2 pauli_z() {
  Mat2 m;
  m << 1, 0, 0, -1;
  return m;
}

SiteOperator SiteOperator::X(int site) { return {site, pauli_x()}; }
SiteOperator SiteOperator::Y(int site) { return {site, pauli_y()}; }
SiteOperator SiteOperator::Z(int site) { return {site, pauli_z()}; }

SiteOperator SiteOperator::custom(int site, const Mat2& op, cplx phase) {
  if (op.norm() > 1e6) throw Error("site operator norm above sanity bound");
  return {site, phase * op};
}

PauliString::PauliString(std::vector<SiteOperator> f, int n)
    : factors(std::move(f)), n_sites(n) {
  for (size_t i = 0; i < factors.size(); ++i) {
    if (factors[i].site < 0 || factors[i].site >= n_sites)
      throw BadSiteSet("PauliString factor site out of range");
    if (i > 0 && factors[i].site <= factors[i - 1].site)
      throw BadSiteSet("PauliString sites must be strictly increasing");
  }
}

PauliString PauliString::all_x(int n) {
  std::vector<SiteOperator> f;
  f.reserve(n);
  for (int i = 0; i < n; ++i) f.push_back(SiteOperator::X(i));
  return PauliString(std::move(f), n);
}

PauliString PauliString::single(const SiteOperator& f, int n) {
  return PauliString({f}, n);
}

PauliString PauliString::pair(const SiteOperator& a, const SiteOperator& b,
                              int n) {
  if (a.site == b.site) throw BadSiteSet("pair on identical sites");
  if (a.site < b.site) return PauliString({a, b}, n);
  return PauliString({b, a}, n);
}

bool PauliString::is_identity_site(int site) const {
  for (const auto& f : factors)
    if (f.site == site) return false;
  return true;
}

Mat2 PauliString::factor_at(int site) const {
  for (const auto& f : factors)
    if (f.site == site) return f.op;
  return Mat2::Identity();
}

Mat PauliString::to_matrix() const {
  if (n_sites > kDenseSiteCap) throw TooLarge("PauliString::to_matrix");
  // site i <-> bit i, so site 0 is the rightmost kron factor.
  Mat out = Mat::Identity(1, 1);
  for (int site = n_sites - 1; site >= 0; --site)
    out = kron(out, Mat(factor_at(site)));
  return out;
}

LocalIndexer::LocalIndexer(int n, std::vector<int> support)
    : n_sites(n), sites(std::move(support)) {
  std::sort(sites.begin(), sites.end());
  for (size_t i = 0; i < sites.size(); ++i) {
    if (sites[i] < 0 || sites[i] >= n)
      throw BadSiteSet("support site out of range");
    if (i > 0 && sites[i] == sites[i - 1])
      throw BadSiteSet("duplicate support site");
  }
  const int s = static_cast<int>(sites.size());
  uint64_t support_mask = 0;
  for (int site : sites) support_mask |= (uint64_t{1} << site);

  local.resize(uint64_t{1} << s);
  for (uint64_t l = 0; l < local.size(); ++l) {
    uint64_t v = 0;
    for (int b = 0; b < s; ++b)
      if (l & (uint64_t{1} << b)) v |= (uint64_t{1} << sites[b]);
    local[l] = v;
  }
  rest.resize(uint64_t{1} << (n - s));
  for (uint64_t r = 0; r < rest.size(); ++r) {
    uint64_t v = 0;
    uint64_t bits = r;
    for (int site = 0; site < n; ++site) {
      if (support_mask & (uint64_t{1} << site)) continue;
      if (bits & 1) v |= (uint64_t{1} << site);
      bits >>= 1;
    }
    rest[r] = v;
  }
}

Mat local_left_mult(const Mat& k, const LocalIndexer& ix, const Mat& m) {
  const int d = 1 << ix.s();
  if (k.rows() != d || k.cols() != d)
    throw DimensionMismatch("local op dimension vs support");
  // every (rest, local) pair is written, so out needs no initialization
  Mat out(m.rows(), m.cols());
  if (d == 2) {
    // single-site case: scalar 2x2 arithmetic, no small-matvec overhead
    const cplx k00 = k(0, 0), k01 = k(0, 1), k10 = k(1, 0), k11 = k(1, 1);
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      for (uint64_t r = 0; r < ix.rest.size(); ++r) {
        const uint64_t i0 = ix.index(r, 0), i1 = ix.index(r, 1);
        const cplx a = m(i0, c), b = m(i1, c);
        out(i0, c) = k00 * a + k01 * b;
        out(i1, c) = k10 * a + k11 * b;
      }
    }
    return out;
  }
  Vec v(d), w(d);
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    for (uint64_t r = 0; r < ix.rest.size(); ++r) {
      for (int l = 0; l < d; ++l) v[l] = m(ix.index(r, l), c);
      w.noalias() = k * v;
      for (int l = 0; l < d; ++l) out(ix.index(r, l), c) = w[l];
    }
  }
  return out;
}

Mat local_right_mult(const Mat& m, const Mat& k, const LocalIndexer& ix) {
  const int d = 1 << ix.s();
  if (k.rows() != d || k.cols() != d)
    throw DimensionMismatch("local op dimension vs support");
  Mat out(m.rows(), m.cols());
  if (d == 2) {
    const cplx k00 = k(0, 0), k01 = k(0, 1), k10 = k(1, 0), k11 = k(1, 1);
    for (uint64_t r = 0; r < ix.rest.size(); ++r) {
      const uint64_t j0 = ix.index(r, 0), j1 = ix.index(r, 1);
      for (Eigen::Index row = 0; row < m.rows(); ++row) {
        const cplx a = m(row, j0), b = m(row, j1);
        out(row, j0) = a * k00 + b * k10;
        out(row, j1) = a * k01 + b * k11;
      }
    }
    return out;
  }
  Eigen::RowVectorXcd v(d), w(d);
  for (Eigen::Index row = 0; row < m.rows(); ++row) {
    for (uint64_t r = 0; r < ix.rest.size(); ++r) {
      for (int l = 0; l < d; ++l) v[l] = m(row, ix.index(r, l));
      w.noalias() = v * k;
      for (int l = 0; l < d; ++l) out(row, ix.index(r, l)) = w[l];
    }
  }
  return out;
}

Mat local_conjugate(const Mat& k, const LocalIndexer& ix, const Mat& rho) {
  return local_right_mult(local_left_mult(k, ix, rho), Mat(k.adjoint()), ix);
}

Mat embed_local(const Mat& k, const std::vector<int>& sites, int n_sites) {
  if (n_sites > kDenseSiteCap) throw TooLarge("embed_local");
  LocalIndexer ix(n_sites, sites);
  const uint64_t dim = uint64_t{1} << n_sites;
  return local_left_mult(k, ix, Mat::Identity(dim, dim));
}

}  // namespace mixedorder
