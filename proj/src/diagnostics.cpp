#include "mixedorder/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mixedorder/errors.hpp"

namespace mixedorder {

namespace {

void validate_pair(int n, int x, int y) {
  if (x < 0 || x >= n || y < 0 || y >= n) throw BadSiteSet("probe site range");
  if (x == y) throw BadSiteSet("probe sites must differ");
}

// O_x O†_y m (left multiplication by the charged pair)
Mat pair_left(const Mat& m, const Mat2& op, int x, int y, int n) {
  Mat out = local_left_mult(Mat(op), LocalIndexer(n, {x}), m);
  return local_left_mult(Mat(op.adjoint()), LocalIndexer(n, {y}), out);
}

// m O_y O†_x (right multiplication, adjoint side of pair_left)
Mat pair_right(const Mat& m, const Mat2& op, int x, int y, int n) {
  Mat out = local_right_mult(m, Mat(op), LocalIndexer(n, {y}));
  return local_right_mult(out, Mat(op.adjoint()), LocalIndexer(n, {x}));
}

double tr_product_herm(const Mat& a, const Mat& herm) {
  // Tr(a b) with b Hermitian: sum_ij a_ij conj(b_ij)
  return a.cwiseProduct(herm.conjugate()).sum().real();
}

// (1/n) sum_x O_x rho O†_x
Mat symmetrized_state(const Mat& rho, const Mat2& op, int n) {
  Mat acc = Mat::Zero(rho.rows(), rho.cols());
  for (int x = 0; x < n; ++x)
    acc += local_conjugate(Mat(op), LocalIndexer(n, {x}), rho);
  return acc / static_cast<double>(n);
}

}  // namespace

std::string SSBClassification::verdict_name() const {
  switch (verdict) {
    case Verdict::unbroken: return "unbroken";
    case Verdict::sw_ssb: return "sw_ssb";
    case Verdict::fully_broken: return "fully_broken";
    default: return "inconsistent";
  }
}

double fidelity(const Mat& rho, const Mat& sigma) {
  if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols())
    throw DimensionMismatch("fidelity arguments");
  return nuclear_norm_product(psd_factor(rho), psd_factor(sigma));
}

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  return fidelity(rho.mat(), sigma.mat());
}

double fidelity_correlator(const DensityMatrix& rho,
                           const CorrelatorRequest& req) {
  const int n = rho.n_sites();
  validate_pair(n, req.x, req.y);
  // rho = AA† gives O rho O† = (OA)(OA)†, so no second factorization needed.
  const Mat a = psd_factor(rho.mat());
  const Mat b = pair_left(a, req.op, req.x, req.y, n);
  return nuclear_norm_product(a, b);
}

std::vector<double> fidelity_correlator_pairs(
    const DensityMatrix& rho, const Mat2& op,
    const std::vector<std::pair<int, int>>& pairs) {
  const int n = rho.n_sites();
  const Mat a = psd_factor(rho.mat());
  std::vector<double> out;
  out.reserve(pairs.size());
  for (const auto& [x, y] : pairs) {
    validate_pair(n, x, y);
    out.push_back(nuclear_norm_product(a, pair_left(a, op, x, y, n)));
  }
  return out;
}

double renyi2_correlator(const DensityMatrix& rho,
                         const CorrelatorRequest& req) {
  const int n = rho.n_sites();
  validate_pair(n, req.x, req.y);
  const double purity = rho.mat().squaredNorm();  // Tr rho² for Hermitian rho
  if (purity <= kSupportTol) throw DegeneratePurity("renyi2_correlator");
  // Tr(W rho W† rho) with W = O_x O†_y contracted through the local 4x4
  // block: only index pairs sharing the rest pattern couple through W, so
  // the sum reduces to Tr(W B W† B†) over 4x4 slices B of rho.
  const LocalIndexer ix(n, {std::min(req.x, req.y), std::max(req.x, req.y)});
  const Mat2 opd = req.op.adjoint();
  int bx[4], by[4];
  for (int l = 0; l < 4; ++l) {
    bx[l] = static_cast<int>((ix.local[l] >> req.x) & 1);
    by[l] = static_cast<int>((ix.local[l] >> req.y) & 1);
  }
  Eigen::Matrix4cd w;
  for (int lr = 0; lr < 4; ++lr)
    for (int lc = 0; lc < 4; ++lc)
      w(lr, lc) = req.op(bx[lr], bx[lc]) * opd(by[lr], by[lc]);
  const Eigen::Matrix4cd wd = w.adjoint();
  const Mat& m = rho.mat();
  const std::size_t nr = ix.rest.size();
  std::vector<uint64_t> id(nr * 4);
  for (std::size_t r = 0; r < nr; ++r)
    for (int l = 0; l < 4; ++l) id[4 * r + l] = ix.index(r, l);
  cplx acc = 0;
  Eigen::Matrix4cd b;
  for (std::size_t r = 0; r < nr; ++r)
    for (std::size_t rp = 0; rp < nr; ++rp) {
      for (int l2 = 0; l2 < 4; ++l2)
        for (int l3 = 0; l3 < 4; ++l3)
          b(l2, l3) = m(id[4 * r + l2], id[4 * rp + l3]);
      acc += (w * b * wd * b.adjoint()).trace();
    }
  return acc.real() / purity;
}

double linear_correlator(const DensityMatrix& rho,
                         const CorrelatorRequest& req) {
  const int n = rho.n_sites();
  validate_pair(n, req.x, req.y);
  // Tr(O_x O†_y rho) accumulated through the local 4x4 block directly;
  // no full-dimension product is needed.
  const LocalIndexer ix(n, {std::min(req.x, req.y), std::max(req.x, req.y)});
  const Mat2 opd = req.op.adjoint();
  int bx[4], by[4];
  for (int l = 0; l < 4; ++l) {
    bx[l] = static_cast<int>((ix.local[l] >> req.x) & 1);
    by[l] = static_cast<int>((ix.local[l] >> req.y) & 1);
  }
  const Mat& m = rho.mat();
  cplx acc = 0;
  for (uint64_t r = 0; r < ix.rest.size(); ++r)
    for (int lr = 0; lr < 4; ++lr)
      for (int lc = 0; lc < 4; ++lc)
        acc += req.op(bx[lr], bx[lc]) * opd(by[lr], by[lc]) *
               m(ix.index(r, lc), ix.index(r, lr));
  return std::abs(acc);
}

double string_fidelity_correlator(const StringBasisState& s, int x, int y) {
  validate_pair(s.n_sites, x, y);
  const uint64_t mask = (uint64_t{1} << x) | (uint64_t{1} << y);
  double acc = 0;
  for (uint64_t d = 0; d < s.q.size(); ++d)
    acc += std::sqrt(s.q[d] * s.q[d ^ mask]);
  return acc;
}

double string_renyi2_correlator(const StringBasisState& s, int x, int y) {
  validate_pair(s.n_sites, x, y);
  const uint64_t mask = (uint64_t{1} << x) | (uint64_t{1} << y);
  double num = 0, den = 0;
  for (uint64_t d = 0; d < s.q.size(); ++d) {
    num += s.q[d] * s.q[d ^ mask];
    den += s.q[d] * s.q[d];
  }
  if (den <= kSupportTol) throw DegeneratePurity("string_renyi2_correlator");
  return num / den;
}

double string_linear_correlator(const StringBasisState& s, int x, int y) {
  validate_pair(s.n_sites, x, y);
  // Z_x Z_y maps each basis vector |D> to the orthogonal |D xor {x,y}>, so
  // the trace against the diagonal mixture vanishes identically.
  return 0.0;
}

double trace_distance(const Mat& rho, const Mat& sigma) {
  if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols())
    throw DimensionMismatch("trace_distance arguments");
  return 0.5 * nuclear_norm(rho - sigma);
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
  return trace_distance(rho.mat(), sigma.mat());
}

double relative_entropy(const Mat& rho, const Mat& sigma) {
  if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols())
    throw DimensionMismatch("relative_entropy arguments");
  const Eigh er = eigh(rho);
  const Eigh es = eigh(sigma);
  double s1 = 0;
  for (Eigen::Index i = 0; i < er.values.size(); ++i)
    if (er.values[i] > kSupportTol)
      s1 += er.values[i] * std::log(er.values[i]);
  // populations of rho in the eigenbasis of sigma
  double s2 = 0, kernel_weight = 0;
  for (Eigen::Index j = 0; j < es.values.size(); ++j) {
    const double pj =
        (es.vectors.col(j).adjoint() * rho * es.vectors.col(j))(0, 0).real();
    if (es.values[j] > kSupportTol)
      s2 += pj * std::log(es.values[j]);
    else
      kernel_weight += std::max(0.0, pj);
  }
  if (kernel_weight > 1e-10) return std::numeric_limits<double>::infinity();
  return s1 - s2;
}

double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma) {
  return relative_entropy(rho.mat(), sigma.mat());
}

double sandwiched_renyi(const Mat& rho, const Mat& sigma, double alpha) {
  if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols())
    throw DimensionMismatch("sandwiched_renyi arguments");
  if (!(alpha > 0) || alpha == 1.0) throw BadAlpha(std::to_string(alpha));
  if (alpha > 1.0) {
    // support condition: rho must live inside supp(sigma)
    const Eigh es = eigh(sigma);
    double kernel_weight = 0;
    for (Eigen::Index j = 0; j < es.values.size(); ++j)
      if (es.values[j] <= kSupportTol)
        kernel_weight += std::max(
            0.0,
            (es.vectors.col(j).adjoint() * rho * es.vectors.col(j))(0, 0)
                .real());
    if (kernel_weight > 1e-10)
      return std::numeric_limits<double>::infinity();
  }
  const double q = (1.0 - alpha) / (2.0 * alpha);
  const Mat s = mat_power(sigma, q);
  const RVec vals = eigvalsh(s * rho * s);
  double tr = 0;
  for (Eigen::Index i = 0; i < vals.size(); ++i)
    if (vals[i] > 0) tr += std::pow(vals[i], alpha);
  return std::log2(tr) / (alpha - 1.0);
}

double replicated_fidelity(const DensityMatrix& rho,
                           const CorrelatorRequest& req, int m, int n) {
  const int ns = rho.n_sites();
  validate_pair(ns, req.x, req.y);
  if (m < 1 || n < 1) throw Error("replica indices must be positive");
  Eigh e = eigh(rho.mat());
  RVec lam = e.values.cwiseMax(0.0);
  RVec lam_m(lam.size());
  for (Eigen::Index i = 0; i < lam.size(); ++i)
    lam_m[i] = std::pow(lam[i], m);
  const Mat rho_m = e.vectors * lam_m.asDiagonal() * e.vectors.adjoint();
  Mat sigma = pair_left(rho.mat(), req.op, req.x, req.y, ns);
  sigma = pair_right(sigma, req.op, req.x, req.y, ns);
  const Mat core = rho_m * sigma * rho_m;
  Mat pw = core;
  for (int k = 1; k < n; ++k) pw = pw * core;
  return pw.trace().real();
}

double cmi(const DensityMatrix& rho, const std::set<int>& a,
           const std::set<int>& b, const std::set<int>& c) {
  auto check_disjoint = [](const std::set<int>& u, const std::set<int>& v) {
    for (int s : u)
      if (v.count(s)) throw BadPartition("CMI blocks must be disjoint");
  };
  check_disjoint(a, b);
  check_disjoint(a, c);
  check_disjoint(b, c);
  std::set<int> ab(a), bc(b), abc(a);
  ab.insert(b.begin(), b.end());
  bc.insert(c.begin(), c.end());
  abc.insert(b.begin(), b.end());
  abc.insert(c.begin(), c.end());
  for (int s : abc)
    if (s < 0 || s >= rho.n_sites()) throw BadPartition("site out of range");
  const double s_ab = von_neumann_entropy(partial_trace(rho, ab));
  const double s_bc = von_neumann_entropy(partial_trace(rho, bc));
  const double s_b = von_neumann_entropy(partial_trace(rho, b));
  const double s_abc = von_neumann_entropy(partial_trace(rho, abc));
  return s_ab + s_bc - s_b - s_abc;
}

SSBClassification classify_ssb(const DensityMatrix& rho, const Mat2& op,
                               const std::vector<std::pair<int, int>>& pairs,
                               double theta_f, double theta_l) {
  if (pairs.empty()) throw BadSiteSet("classify_ssb needs at least one pair");
  auto far = *std::max_element(
      pairs.begin(), pairs.end(), [](const auto& l, const auto& r) {
        return std::abs(l.first - l.second) < std::abs(r.first - r.second);
      });
  CorrelatorRequest req{op, far.first, far.second};
  SSBClassification out;
  out.theta_f = theta_f;
  out.theta_l = theta_l;
  out.fidelity_value = fidelity_correlator(rho, req);
  out.renyi2_value = renyi2_correlator(rho, req);
  out.linear_value = linear_correlator(rho, req);
  const bool f_big = out.fidelity_value >= theta_f;
  const bool l_big = out.linear_value >= theta_l;
  using V = SSBClassification::Verdict;
  if (f_big && !l_big)
    out.verdict = V::sw_ssb;
  else if (f_big && l_big)
    out.verdict = V::fully_broken;
  else if (!f_big && !l_big)
    out.verdict = V::unbroken;
  else
    out.verdict = V::inconsistent;
  return out;
}

double local_indistinguishability_check(const DensityMatrix& rho,
                                        const Mat2& op, const PauliString& m) {
  const int n = rho.n_sites();
  if (m.n_sites != n) throw DimensionMismatch("observable vs state");
  const Mat diff = symmetrized_state(rho.mat(), op, n) - rho.mat();
  const Mat mm = m.to_matrix();
  // Tr(M diff) with both matrices explicit
  return std::abs(mm.cwiseProduct(diff.transpose()).sum());
}

DetectabilityBound detectability_bound(const DensityMatrix& rho,
                                       const Mat2& op) {
  const int n = rho.n_sites();
  const Mat tilde = symmetrized_state(rho.mat(), op, n);
  const Mat plus = 0.5 * (rho.mat() + tilde);
  DetectabilityBound out;
  out.lhs = fidelity(plus, symmetrized_state(plus, op, n));
  const Mat a = psd_factor(rho.mat());
  double acc = 0;
  for (int x = 0; x < n; ++x) {
    const Mat ax =
        local_left_mult(Mat(op.adjoint()), LocalIndexer(n, {x}), a);
    for (int y = 0; y < n; ++y) {
      const Mat b = local_left_mult(Mat(op), LocalIndexer(n, {y}), ax);
      acc += nuclear_norm_product(a, b);
    }
  }
  out.rhs = acc / static_cast<double>(n) / static_cast<double>(n);
  return out;
}

}  // namespace mixedorder
