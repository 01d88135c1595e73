#include "mixedorder/models.hpp"

#include <bit>
#include <cmath>

#include "mixedorder/channels.hpp"
#include "mixedorder/errors.hpp"

namespace mixedorder {

void walsh_hadamard(std::vector<double>& v) {
  const std::size_t n = v.size();
  if (n == 0 || (n & (n - 1)) != 0) throw BadGrid("length not a power of two");
  for (std::size_t h = 1; h < n; h <<= 1)
    for (std::size_t i = 0; i < n; i += 2 * h)
      for (std::size_t j = i; j < i + h; ++j) {
        const double a = v[j], b = v[j + h];
        v[j] = a + b;
        v[j + h] = a - b;
      }
}

namespace {

// Dense matrix of a state diagonal in the X-product basis with weights w
// over sign patterns m (bit set = eigenvalue -1): rho(x,y) = 2^{-n} W(w)[x^y].
Mat dense_from_x_basis_weights(int n, std::vector<double> w) {
  walsh_hadamard(w);
  const uint64_t dim = uint64_t{1} << n;
  const double norm = 1.0 / static_cast<double>(dim);
  Mat rho(dim, dim);
  for (uint64_t y = 0; y < dim; ++y)
    for (uint64_t x = 0; x < dim; ++x) rho(x, y) = norm * w[x ^ y];
  return rho;
}

void require_dense_size(int n, int cap, const char* what) {
  if (n < 1 || n > cap) throw TooLarge(what);
}

}  // namespace

DensityMatrix state_plus_product(int n) {
  require_dense_size(n, DensityMatrix::kMaxSites, "state_plus_product");
  const uint64_t dim = uint64_t{1} << n;
  Vec psi = Vec::Constant(dim, 1.0 / std::sqrt(static_cast<double>(dim)));
  return DensityMatrix::from_pure(n, psi);
}

DensityMatrix state_one_plus_X(int n) {
  require_dense_size(n, DensityMatrix::kMaxSites, "state_one_plus_X");
  const uint64_t dim = uint64_t{1} << n;
  Mat m = Mat::Identity(dim, dim);
  // prod X flips every bit: matrix element (x, ~x) = 1
  for (uint64_t x = 0; x < dim; ++x) m(x ^ (dim - 1), x) += 1.0;
  return DensityMatrix(n, m / static_cast<double>(dim));
}

DensityMatrix state_counterexample(int L) {
  require_dense_size(L, 12, "state_counterexample");
  const Mat plus = state_plus_product(L).mat();
  const Mat gx = state_one_plus_X(L).mat();
  return DensityMatrix(L, 0.5 * plus + 0.5 * gx);
}

DensityMatrix state_ghz(int n) {
  require_dense_size(n, DensityMatrix::kMaxSites, "state_ghz");
  const uint64_t dim = uint64_t{1} << n;
  Vec psi = Vec::Zero(dim);
  psi[0] = psi[dim - 1] = 1.0 / std::sqrt(2.0);
  return DensityMatrix::from_pure(n, psi);
}

DensityMatrix state_thermal_commuting(int n, const ThermalSpec& spec) {
  require_dense_size(n, 12, "state_thermal_commuting");
  if (!(spec.beta >= 0) || !std::isfinite(spec.beta))
    throw Error("beta must be finite and nonnegative");
  const uint64_t dim = uint64_t{1} << n;
  const int want_parity = spec.sector == ThermalSpec::Sector::even ? 0 : 1;
  std::vector<double> w(dim, 0.0);
  double z = 0.0;
  for (uint64_t m = 0; m < dim; ++m) {
    const int k = std::popcount(m);
    if ((k & 1) != want_parity) continue;
    // Boltzmann weight e^{-beta sum_i b_i} with b_i = +1 except on m
    w[m] = std::exp(-spec.beta * static_cast<double>(n - 2 * k));
    z += w[m];
  }
  for (double& x : w) x /= z;
  return DensityMatrix(n, dense_from_x_basis_weights(n, std::move(w)));
}

double thermal_fidelity_closed_form(int n, double beta) {
  const double c = std::cosh(beta);
  return 1.0 / (c * c * (1.0 + std::pow(std::tanh(beta), n)));
}

DensityMatrix state_decohered_ising_dense(const LatticeSpec& lattice,
                                          double p) {
  const int n = lattice.n_sites();
  require_dense_size(n, 12, "state_decohered_ising_dense");
  return zz_dephasing(n, lattice, p).apply(state_plus_product(n));
}

StringBasisState state_decohered_ising_string(const LatticeSpec& lattice,
                                              double p) {
  const int n = lattice.n_sites();
  require_dense_size(n, 20, "state_decohered_ising_string");
  if (!(p >= 0.0 && p <= 1.0)) throw BadProbability(std::to_string(p));
  const auto edges = lattice.edges();
  const uint64_t dim = uint64_t{1} << n;
  // G(sigma) = prod_e ((1-p) + p sigma_u sigma_v); q = 2^{-n} W(G) counts the
  // total weight of edge subsets whose boundary is a given vertex pattern.
  std::vector<double> g(dim);
  for (uint64_t s = 0; s < dim; ++s) {
    double val = 1.0;
    for (auto [u, v] : edges) {
      const double prod = (((s >> u) ^ (s >> v)) & 1) ? -1.0 : 1.0;
      val *= (1.0 - p) + p * prod;
    }
    g[s] = val;
  }
  walsh_hadamard(g);
  StringBasisState out;
  out.n_sites = n;
  out.lattice = lattice;
  out.p = p;
  out.q.resize(dim);
  const double norm = 1.0 / static_cast<double>(dim);
  double total = 0.0;
  for (uint64_t d = 0; d < dim; ++d) {
    double v = g[d] * norm;
    if (v < 0) {
      if (v < -1e-12) throw NotPSD("negative string-basis weight");
      v = 0;
    }
    out.q[d] = v;
    total += v;
  }
  for (double& v : out.q) v /= total;
  return out;
}

DensityMatrix StringBasisState::to_dense() const {
  require_dense_size(n_sites, DensityMatrix::kMaxSites,
                     "StringBasisState::to_dense");
  // |D> = prod_{v in D} Z_v |+...+> has computational-basis amplitudes
  // 2^{-n/2}(-1)^{x.D}, so the mixture is again a Walsh transform of q.
  return DensityMatrix(n_sites, dense_from_x_basis_weights(n_sites, q));
}

double thermal_replicated_correlator(const std::vector<HamTerm>& hamiltonian,
                                     int n_sites, double beta, int n_rep,
                                     const SiteOperator& ox,
                                     const SiteOperator& oy) {
  require_dense_size(n_sites, 10, "thermal_replicated_correlator");
  if (n_rep < 1 || n_rep > 3) throw Error("n_rep must be in {1,2,3}");
  if (!std::isfinite(beta)) throw Error("beta must be finite");
  const uint64_t dim = uint64_t{1} << n_sites;
  Mat h = Mat::Zero(dim, dim);
  for (const auto& t : hamiltonian) {
    if (t.op.n_sites != n_sites)
      throw DimensionMismatch("Hamiltonian term site count");
    h += t.coeff * t.op.to_matrix();
  }
  Eigh e = eigh(h);
  // shift the spectrum; the overall scale cancels in the ratio below
  const double e0 = e.values.minCoeff();
  RVec boltz(e.values.size());
  for (Eigen::Index i = 0; i < boltz.size(); ++i)
    boltz[i] = std::exp(-beta * (e.values[i] - e0));
  const Mat rho = e.vectors * boltz.asDiagonal() * e.vectors.adjoint();
  const Mat sqrt_rho =
      e.vectors * boltz.cwiseSqrt().asDiagonal() * e.vectors.adjoint();
  const Mat a = embed_local(Mat(ox.op), {ox.site}, n_sites) *
                embed_local(Mat(oy.op.adjoint()), {oy.site}, n_sites);
  const Mat core = sqrt_rho * a * rho * a.adjoint() * sqrt_rho;
  Mat pw = core;
  for (int k = 1; k < n_rep; ++k) pw = pw * core;
  double denom = 0.0;
  for (Eigen::Index i = 0; i < boltz.size(); ++i)
    denom += std::pow(boltz[i], 2 * n_rep);
  return pw.trace().real() / denom;
}

}  // namespace mixedorder
