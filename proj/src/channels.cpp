#include "mixedorder/channels.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "mixedorder/errors.hpp"

namespace mixedorder {

namespace {

nlohmann::json lattice_json(const LatticeSpec& lat) {
  return {{"kind", lat.kind_name()},
          {"Lx", lat.Lx},
          {"Ly", lat.Ly},
          {"boundary", lat.boundary_name()}};
}

void require_probability(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw BadProbability(std::to_string(p));
}

// diag(e^{i t}, e^{-i t}, e^{-i t}, e^{i t}) = exp(i t Z⊗Z)
Mat zz_phase(double t) {
  Mat m = Mat::Zero(4, 4);
  const cplx u = std::exp(cplx(0, t));
  m(0, 0) = u;
  m(1, 1) = std::conj(u);
  m(2, 2) = std::conj(u);
  m(3, 3) = u;
  return m;
}

LocalKraus bond_factor(std::pair<int, int> e, std::vector<Mat> ops) {
  int a = e.first, b = e.second;
  if (a > b) std::swap(a, b);
  return LocalKraus{{a, b}, std::move(ops)};
}

// full index -> local index lookup for a support
std::vector<uint32_t> local_of_full(int n, const std::vector<int>& sites) {
  const uint64_t dim = uint64_t{1} << n;
  std::vector<uint32_t> loc(dim);
  for (uint64_t x = 0; x < dim; ++x) {
    uint32_t l = 0;
    for (std::size_t b = 0; b < sites.size(); ++b)
      if (x & (uint64_t{1} << sites[b])) l |= (uint32_t{1} << b);
    loc[x] = l;
  }
  return loc;
}

// Elementwise damping for a diagonal factor. damp(l1,l2) is applied to every
// matrix element whose row/column local bits are (l1,l2).
Mat diagonal_damp(const LocalKraus& f, bool adjoint) {
  const Eigen::Index d = f.ops.front().rows();
  Mat damp = Mat::Zero(d, d);
  for (const Mat& k : f.ops) {
    Vec dvec = k.diagonal();
    if (adjoint) dvec = dvec.conjugate();
    damp += dvec * dvec.adjoint();
  }
  return damp;
}

void apply_factor_in_place(Mat& m, const LocalKraus& f, int n_sites,
                           bool adjoint) {
  if (f.is_diagonal()) {
    const Mat damp = diagonal_damp(f, adjoint);
    const auto loc = local_of_full(n_sites, f.sites);
    const Eigen::Index dim = m.rows();
    for (Eigen::Index y = 0; y < dim; ++y)
      for (Eigen::Index x = 0; x < dim; ++x) m(x, y) *= damp(loc[x], loc[y]);
    return;
  }
  LocalIndexer ix(n_sites, f.sites);
  Mat acc = Mat::Zero(m.rows(), m.cols());
  for (const Mat& k : f.ops)
    acc += local_conjugate(adjoint ? Mat(k.adjoint()) : k, ix, m);
  m = std::move(acc);
}

}  // namespace

bool LocalKraus::is_diagonal() const {
  for (const Mat& k : ops)
    if (!k.isDiagonal(0.0)) return false;
  return true;
}

SymmetrySpec SymmetrySpec::z2_all_x(int n_sites) {
  return {PauliString::all_x(n_sites), 2};
}

KrausChannel::KrausChannel(int n_sites, std::vector<LocalKraus> factors,
                           nlohmann::json description)
    : n_sites_(n_sites),
      factors_(std::move(factors)),
      description_(std::move(description)) {
  if (n_sites < 1) throw BadGrid("channel needs at least one site");
  for (const auto& f : factors_) {
    LocalIndexer ix(n_sites, f.sites);  // validates the support
    const Eigen::Index d = Eigen::Index{1} << ix.s();
    if (f.ops.empty()) throw CompletenessViolated("empty Kraus factor");
    Mat sum = Mat::Zero(d, d);
    for (const Mat& k : f.ops) {
      if (k.rows() != d || k.cols() != d)
        throw DimensionMismatch("Kraus operator vs declared support");
      sum += k.adjoint() * k;
    }
    if (max_abs(sum - Mat::Identity(d, d)) > 1e-10)
      throw CompletenessViolated("sum K†K deviates from identity");
  }
}

KrausChannel KrausChannel::identity(int n_sites) {
  return KrausChannel(n_sites, {}, {{"type", "identity"},
                                    {"n_sites", n_sites},
                                    {"params", nlohmann::json::object()}});
}

double KrausChannel::kraus_count() const {
  double c = 1;
  for (const auto& f : factors_) c *= static_cast<double>(f.ops.size());
  return c;
}

std::vector<Mat> KrausChannel::full_kraus(std::size_t max_count) const {
  if (n_sites_ > kDenseSiteCap) throw TooLarge("full_kraus dimension");
  if (kraus_count() > static_cast<double>(max_count))
    throw TooLarge("full_kraus operator count");
  const uint64_t dim = uint64_t{1} << n_sites_;
  std::vector<Mat> out{Mat::Identity(dim, dim)};
  for (const auto& f : factors_) {
    std::vector<Mat> next;
    next.reserve(out.size() * f.ops.size());
    for (const Mat& k : f.ops) {
      const Mat kf = embed_local(k, f.sites, n_sites_);
      for (const Mat& prev : out) next.push_back(kf * prev);
    }
    out = std::move(next);
  }
  return out;
}

Mat KrausChannel::apply_raw(const Mat& rho) const {
  const uint64_t dim = uint64_t{1} << n_sites_;
  if (rho.rows() != static_cast<Eigen::Index>(dim) || rho.cols() != rho.rows())
    throw DimensionMismatch("channel vs state dimension");
  Mat m = rho;
  for (const auto& f : factors_) apply_factor_in_place(m, f, n_sites_, false);
  return m;
}

DensityMatrix KrausChannel::apply(const DensityMatrix& rho) const {
  if (rho.n_sites() != n_sites_)
    throw DimensionMismatch("channel vs state site count");
  return DensityMatrix(n_sites_, apply_raw(rho.mat()), rho.psd_tol());
}

Mat KrausChannel::apply_adjoint_raw(const Mat& x) const {
  const uint64_t dim = uint64_t{1} << n_sites_;
  if (x.rows() != static_cast<Eigen::Index>(dim) || x.cols() != x.rows())
    throw DimensionMismatch("channel vs operator dimension");
  Mat m = x;
  for (auto it = factors_.rbegin(); it != factors_.rend(); ++it)
    apply_factor_in_place(m, *it, n_sites_, true);
  return m;
}

KrausChannel zz_dephasing(int n_sites, const LatticeSpec& lattice, double p) {
  require_probability(p);
  if (lattice.n_sites() != n_sites)
    throw DimensionMismatch("lattice vs n_sites");
  std::vector<LocalKraus> factors;
  const Mat zz = zz_phase(M_PI / 2) * cplx(0, -1);  // diag(1,-1,-1,1)
  for (auto e : lattice.edges())
    factors.push_back(
        bond_factor(e, {std::sqrt(1 - p) * Mat::Identity(4, 4),
                        std::sqrt(p) * zz}));
  return KrausChannel(n_sites, std::move(factors),
                      {{"type", "zz_dephasing"},
                       {"n_sites", n_sites},
                       {"lattice", lattice_json(lattice)},
                       {"params", {{"p", p}}}});
}

KrausChannel theta_channel(int n_sites, const LatticeSpec& lattice, double p,
                           double theta) {
  require_probability(p);
  if (lattice.n_sites() != n_sites)
    throw DimensionMismatch("lattice vs n_sites");
  std::vector<LocalKraus> factors;
  for (auto e : lattice.edges())
    factors.push_back(
        bond_factor(e, {std::sqrt(1 - p) * Mat::Identity(4, 4),
                        std::sqrt(p) * zz_phase(theta)}));
  return KrausChannel(n_sites, std::move(factors),
                      {{"type", "theta_channel"},
                       {"n_sites", n_sites},
                       {"lattice", lattice_json(lattice)},
                       {"params", {{"p", p}, {"theta", theta}}}});
}

KrausChannel general_ising_channel(
    int n_sites, const LatticeSpec& lattice,
    const std::vector<std::pair<double, double>>& weights) {
  if (lattice.n_sites() != n_sites)
    throw DimensionMismatch("lattice vs n_sites");
  if (weights.empty()) throw BadWeights("empty weight list");
  double total = 0;
  for (auto [pn, th] : weights) {
    (void)th;
    if (pn < 0) throw BadWeights("negative weight");
    total += pn;
  }
  if (std::abs(total - 1.0) > 1e-12) throw BadWeights("weights must sum to 1");
  std::vector<Mat> ops;
  nlohmann::json wj = nlohmann::json::array();
  for (auto [pn, th] : weights) {
    ops.push_back(std::sqrt(pn) * zz_phase(th));
    wj.push_back({{"p", pn}, {"theta", th}});
  }
  std::vector<LocalKraus> factors;
  for (auto e : lattice.edges()) factors.push_back(bond_factor(e, ops));
  return KrausChannel(n_sites, std::move(factors),
                      {{"type", "general_ising_channel"},
                       {"n_sites", n_sites},
                       {"lattice", lattice_json(lattice)},
                       {"params", {{"weights", wj}}}});
}

KrausChannel site_x_dephasing(int n_sites, double p) {
  require_probability(p);
  std::vector<LocalKraus> factors;
  for (int i = 0; i < n_sites; ++i)
    factors.push_back(LocalKraus{
        {i},
        {std::sqrt(1 - p) * Mat::Identity(2, 2), std::sqrt(p) * Mat(pauli_x())}});
  return KrausChannel(n_sites, std::move(factors),
                      {{"type", "site_x_dephasing"},
                       {"n_sites", n_sites},
                       {"params", {{"p", p}}}});
}

KrausChannel compose(const KrausChannel& a, const KrausChannel& b) {
  if (a.n_sites() != b.n_sites())
    throw DimensionMismatch("compose site counts");
  std::vector<LocalKraus> factors = a.factors();
  factors.insert(factors.end(), b.factors().begin(), b.factors().end());
  return KrausChannel(a.n_sites(), std::move(factors),
                      {{"type", "compose"},
                       {"n_sites", a.n_sites()},
                       {"params",
                        {{"first", a.description()},
                         {"second", b.description()}}}});
}

SymmetryCheck check_strong_symmetry(const KrausChannel& channel,
                                    const SymmetrySpec& sym) {
  if (sym.generator.n_sites != channel.n_sites())
    throw DimensionMismatch("symmetry generator vs channel");
  if (sym.group_order < 1) throw Error("group_order must be positive");
  for (const auto& f : sym.generator.factors) {
    Mat2 pw = Mat2::Identity();
    for (int k = 0; k < sym.group_order; ++k) pw = pw * f.op;
    if ((pw - Mat2::Identity()).cwiseAbs().maxCoeff() > 1e-12)
      throw Error("generator^group_order is not the identity");
  }
  double worst = 0;
  for (const auto& f : channel.factors()) {
    Mat u = Mat::Identity(1, 1);
    for (auto it = f.sites.rbegin(); it != f.sites.rend(); ++it)
      u = kron(u, Mat(sym.generator.factor_at(*it)));
    for (const Mat& k : f.ops)
      worst = std::max(worst, max_abs(k * u - u * k));
  }
  return {worst <= 1e-10, worst};
}

}  // namespace mixedorder
