#include "mixedorder/recovery.hpp"

#include <algorithm>
#include <cmath>

#include "mixedorder/diagnostics.hpp"
#include "mixedorder/errors.hpp"

namespace mixedorder {

Quadrature gauss_legendre(int n_nodes) {
  if (n_nodes < 1) throw BadGrid("quadrature needs at least one node");
  Quadrature q;
  q.nodes.resize(n_nodes);
  q.weights.resize(n_nodes);
  const int half = (n_nodes + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n_nodes + 0.5));
    double pp = 0;
    for (int it = 0; it < 100; ++it) {
      // Legendre recurrence up to degree n
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n_nodes; ++k) {
        const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      pp = n_nodes * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    q.nodes[i] = -x;
    q.nodes[n_nodes - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * pp * pp);
    q.weights[i] = w;
    q.weights[n_nodes - 1 - i] = w;
  }
  return q;
}

double petz_beta0(double t) {
  return (M_PI / 2.0) / (std::cosh(M_PI * t) + 1.0);
}

PetzMap::PetzMap(DensityMatrix sigma, KrausChannel channel, int n_nodes,
                 double t_cutoff, bool rotated, bool strict_support)
    : sigma_(std::move(sigma)), channel_(std::move(channel)),
      rotated_(rotated), strict_support_(strict_support) {
  if (channel_.n_sites() != sigma_.n_sites())
    throw DimensionMismatch("Petz reference vs channel");
  if (rotated_) {
    if (t_cutoff <= 0) throw BadGrid("t_cutoff must be positive");
    Quadrature q = gauss_legendre(n_nodes);
    for (int i = 0; i < n_nodes; ++i) {
      const double t = t_cutoff * q.nodes[i];
      t_nodes_.push_back(t);
      t_weights_.push_back(t_cutoff * q.weights[i] * petz_beta0(t));
    }
  } else {
    t_nodes_.push_back(0.0);
    t_weights_.push_back(1.0);
  }
  for (double w : t_weights_) weight_sum_ += w;

  sig_eig_ = eigh(sigma_.mat());
  Mat esig = hermitize(channel_.apply_raw(sigma_.mat()));
  esig_eig_ = eigh(esig);
  // kernel of E(sigma): needed to detect unrecoverable inputs
  int n_kernel = 0;
  while (n_kernel < esig_eig_.values.size() &&
         esig_eig_.values[n_kernel] <= kSupportTol)
    ++n_kernel;
  esig_kernel_ = esig_eig_.vectors.leftCols(n_kernel);
}

namespace {

Mat eig_power(const Eigh& e, double re, double im) {
  Vec d(e.values.size());
  for (Eigen::Index i = 0; i < d.size(); ++i) {
    if (e.values[i] > kSupportTol) {
      const double lg = std::log(e.values[i]);
      d[i] = std::exp(re * lg) * std::exp(cplx(0.0, im * lg));
    } else {
      d[i] = 0.0;
    }
  }
  return e.vectors * d.asDiagonal() * e.vectors.adjoint();
}

}  // namespace

Mat PetzMap::sigma_power(double re, double t) const {
  return eig_power(sig_eig_, re, t);
}

Mat PetzMap::esigma_power(double re, double t) const {
  return eig_power(esig_eig_, re, t);
}

Mat PetzMap::apply_raw(const Mat& x) const {
  if (x.rows() != sigma_.dim() || x.cols() != sigma_.dim())
    throw DimensionMismatch("Petz input dimension");
  if (strict_support_ && esig_kernel_.cols() > 0) {
    const double leak =
        (esig_kernel_.adjoint() * x * esig_kernel_).cwiseAbs().maxCoeff();
    if (leak > 1e-8)
      throw SingularReference(
          "input has weight outside the support of E(sigma)");
  }
  Mat out = Mat::Zero(x.rows(), x.cols());
  for (std::size_t k = 0; k < t_nodes_.size(); ++k) {
    const double tau = t_nodes_[k] / 2.0;  // R^{t/2} under beta_0(t) dt
    const Mat g = esigma_power(-0.5, tau);
    const Mat s = sigma_power(0.5, -tau);
    const Mat inner = channel_.apply_adjoint_raw(g * x * g.adjoint());
    out += t_weights_[k] * (s * inner * s.adjoint());
  }
  return hermitize(out);
}

std::pair<DensityMatrix, double> PetzMap::apply(
    const DensityMatrix& rho) const {
  Mat raw = apply_raw(rho.mat());
  const double tr = raw.trace().real();
  if (tr <= kSupportTol) throw SingularReference("recovered trace vanished");
  return {DensityMatrix(sigma_.n_sites(), raw / tr, 1e-8),
          1.0 - tr};
}

Mat PetzMap::apply_raw_embedded(const Mat& x, const KrausChannel& full_channel,
                                const std::vector<int>& sites) const {
  if (static_cast<int>(sites.size()) != sigma_.n_sites())
    throw DimensionMismatch("embedding site list vs reference size");
  const int n = full_channel.n_sites();
  if (x.rows() != (Eigen::Index{1} << n))
    throw DimensionMismatch("embedded Petz input dimension");
  const LocalIndexer ix(n, sites);
  Mat out = Mat::Zero(x.rows(), x.cols());
  for (std::size_t k = 0; k < t_nodes_.size(); ++k) {
    const double tau = t_nodes_[k] / 2.0;
    const Mat inner = full_channel.apply_adjoint_raw(
        local_conjugate(esigma_power(-0.5, tau), ix, x));
    out += t_weights_[k] *
           local_conjugate(sigma_power(0.5, -tau), ix, inner);
  }
  return hermitize(out);
}

Mat PetzMap::effective_kraus(int node, const Mat& k) const {
  const double tau = t_nodes_.at(node) / 2.0;
  return sigma_power(0.5, -tau) * k.adjoint() * esigma_power(-0.5, tau);
}

SymmetryCheck check_recovery_symmetry(const PetzMap& map,
                                      const SymmetrySpec& sym,
                                      std::size_t max_kraus) {
  if (sym.generator.n_sites != map.n_sites())
    throw DimensionMismatch("symmetry generator vs recovery map");
  const Mat u = sym.generator.to_matrix();
  double worst = 0;
  const auto kraus = map.channel().full_kraus(max_kraus);
  for (int node = 0; node < map.node_count(); ++node) {
    for (const Mat& k : kraus) {
      const Mat kr = map.effective_kraus(node, k);
      worst = std::max(worst, max_abs(kr * u - u * kr));
    }
  }
  return {worst <= 1e-8, worst};
}

namespace {

// sigma = rho_AB (x) rho_C put back into the original site order
DensityMatrix markov_reference(const DensityMatrix& rho,
                               const std::set<int>& ab,
                               const std::set<int>& c) {
  DensityMatrix left = partial_trace(rho, ab);
  DensityMatrix right = partial_trace(rho, c);
  DensityMatrix prod = tensor(left, right);
  std::vector<int> perm;
  perm.insert(perm.end(), ab.begin(), ab.end());
  perm.insert(perm.end(), c.begin(), c.end());
  return reorder_sites(prod, perm);
}

void require_partition(const DensityMatrix& rho, const std::set<int>& a,
                       const std::set<int>& b, const std::set<int>& c) {
  std::set<int> all(a);
  all.insert(b.begin(), b.end());
  all.insert(c.begin(), c.end());
  if (static_cast<int>(all.size()) !=
      static_cast<int>(a.size() + b.size() + c.size()))
    throw BadPartition("A, B, C must be disjoint");
  if (static_cast<int>(all.size()) != rho.n_sites())
    throw BadPartition("A, B, C must cover every site");
}

}  // namespace

RecoveryReport cmi_markov_gap(const DensityMatrix& rho,
                              const KrausChannel& channel,
                              const std::set<int>& a, const std::set<int>& b,
                              const std::set<int>& c, int n_nodes,
                              double t_cutoff) {
  require_partition(rho, a, b, c);
  for (const auto& f : channel.factors())
    for (int s : f.sites)
      if (!a.count(s))
        throw BadPartition("channel must be supported inside A");
  RecoveryReport rep;
  rep.cmi_before = cmi(rho, a, b, c);
  DensityMatrix erho = channel.apply(rho);
  rep.cmi_after = cmi(erho, a, b, c);

  std::set<int> ab(a);
  ab.insert(b.begin(), b.end());
  PetzMap petz(markov_reference(rho, ab, c), channel, n_nodes, t_cutoff);
  auto [rec, deficit] = petz.apply(erho);
  rep.trace_deficit = deficit;
  rep.fidelity_recovered = fidelity(rho, rec);
  rep.trace_distance_residual = trace_distance(rho, rec);
  const double lhs = -2.0 * std::log2(std::max(rep.fidelity_recovered, 1e-300));
  rep.bound_slack = (rep.cmi_before - rep.cmi_after) / std::log(2.0) - lhs;
  // bound on the full trace norm ||rho - R(E(rho))||_1
  rep.td_bound = 2.0 * std::sqrt(std::max(0.0, rep.cmi_before));
  return rep;
}

LayeredRecoveryResult layered_recovery(const DensityMatrix& rho0,
                                       const std::vector<KrausChannel>& layers,
                                       int block_size, int n_nodes,
                                       double t_cutoff) {
  const int n = rho0.n_sites();
  if (n > 12) throw TooLarge("layered recovery capped at 12 sites");
  if (block_size < 1) throw BadSchedule("block size must be positive");
  if (layers.empty()) throw BadSchedule("no layers given");
  for (const auto& layer : layers) {
    if (layer.n_sites() != n)
      throw DimensionMismatch("layer vs state site count");
    std::set<int> used;
    for (const auto& f : layer.factors())
      for (int s : f.sites)
        if (!used.insert(s).second)
          throw BadSchedule("gates within a layer must be disjoint");
  }

  // forward pass
  std::vector<DensityMatrix> states{rho0};
  for (const auto& layer : layers) states.push_back(layer.apply(states.back()));

  LayeredRecoveryResult res;
  DensityMatrix chi = states.back();
  const int n_blocks = (n + block_size - 1) / block_size;
  for (int j = static_cast<int>(layers.size()); j >= 1; --j) {
    const DensityMatrix& prev = states[j - 1];
    DensityMatrix ideal = states[j];  // what this layer's reversal should undo
    // assign each gate to the block holding its leftmost site
    std::vector<std::vector<LocalKraus>> assigned(n_blocks);
    for (const auto& f : layers[j - 1].factors())
      assigned[*std::min_element(f.sites.begin(), f.sites.end()) / block_size]
          .push_back(f);
    // two rounds of disjoint block maps: even blocks buffered by their odd
    // neighbor, then odd blocks. Keeping the regions within a round
    // disjoint is what makes each reversal round a genuine depth-1 layer.
    std::vector<int> order;
    for (int blk = 0; blk < n_blocks; blk += 2) order.push_back(blk);
    for (int blk = 1; blk < n_blocks; blk += 2) order.push_back(blk);
    for (int blk : order) {
      if (assigned[blk].empty()) continue;
      // A: block plus gate supports; B: the adjacent buffer block; C: rest
      std::set<int> a_set;
      for (int s = blk * block_size; s < std::min(n, (blk + 1) * block_size);
           ++s)
        a_set.insert(s);
      for (const auto& f : assigned[blk])
        for (int s : f.sites) a_set.insert(s);
      std::set<int> b_set;
      const int buddy = (blk + 1 < n_blocks) ? blk + 1 : blk - 1;
      if (buddy >= 0)
        for (int s = buddy * block_size;
             s < std::min(n, (buddy + 1) * block_size); ++s)
          if (!a_set.count(s)) b_set.insert(s);
      std::set<int> c_set;
      for (int s = 0; s < n; ++s)
        if (!a_set.count(s) && !b_set.count(s)) c_set.insert(s);

      std::set<int> ab_set(a_set);
      ab_set.insert(b_set.begin(), b_set.end());
      const std::vector<int> ab(ab_set.begin(), ab_set.end());
      std::vector<int> pos_of(n, -1);
      for (std::size_t i = 0; i < ab.size(); ++i) pos_of[ab[i]] = int(i);

      std::vector<LocalKraus> reduced;
      for (const auto& f : assigned[blk]) {
        LocalKraus r = f;
        for (int& s : r.sites) s = pos_of[s];
        reduced.push_back(std::move(r));
      }
      KrausChannel sub_full(n, assigned[blk]);
      KrausChannel sub_red(static_cast<int>(ab.size()), reduced);
      PetzMap petz(partial_trace(prev, ab_set), sub_red, n_nodes, t_cutoff,
                   true, false);

      auto recover = [&](const DensityMatrix& state) {
        Mat raw = petz.apply_raw_embedded(state.mat(), sub_full, ab);
        const double tr = raw.trace().real();
        if (tr <= kSupportTol)
          throw SingularReference("recovered trace vanished");
        return DensityMatrix(n, raw / tr, 1e-7);
      };
      chi = recover(chi);
      ideal = recover(ideal);

      RecoveryStep step;
      step.layer = j;
      step.block = blk;
      step.cmi_before = cmi(prev, a_set, b_set, c_set);
      step.fidelity = fidelity(prev, ideal);
      step.step_residual = trace_distance(prev, ideal);
      res.steps.push_back(step);
    }
    // triangle budget uses the per-layer ideal-input residual
    res.per_step_sum += trace_distance(prev, ideal);
  }
  res.cumulative_residual = trace_distance(rho0, chi);
  return res;
}

}  // namespace mixedorder
