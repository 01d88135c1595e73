#include "mixedorder/statmech.hpp"

#include <cmath>

#include "mixedorder/errors.hpp"
#include "mixedorder/rng.hpp"

namespace mixedorder {

BondDisorder BondDisorder::sample(const LatticeSpec& lattice, double p,
                                  uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw BadProbability(std::to_string(p));
  BondDisorder out;
  out.lattice = lattice;
  out.flip_prob = p;
  out.seed = seed;
  Xoshiro256pp rng(seed);
  const auto edges = lattice.edges();
  out.signs.reserve(edges.size());
  for (std::size_t e = 0; e < edges.size(); ++e)
    out.signs.push_back(rng.uniform() < p ? -1 : +1);
  return out;
}

double replica_enumerate(const ReplicaSpinModel& model,
                         const std::vector<std::pair<int, int>>& insertions) {
  const int t = model.t;
  const int n = model.lattice.n_sites();
  if (t < 2) throw Error("replica count must be at least 2");
  if (!(model.tanh_tau >= 0.0 && model.tanh_tau < 1.0))
    throw BadProbability("tanh_tau outside [0,1)");
  const int n_bits = (t - 1) * n;
  if (n_bits > 24) throw TooLarge("replica enumeration above 2^24 states");
  const double tau = std::atanh(model.tanh_tau);
  const auto edges = model.lattice.edges();
  const int n_edges = static_cast<int>(edges.size());

  for (auto [rep, site] : insertions) {
    if (rep < 1 || rep > t) throw BadSiteSet("insertion replica index");
    if (site < 0 || site >= n) throw BadSiteSet("insertion site index");
  }

  // integer bond energy ranges over [-t*E, t*E]
  std::vector<double> boltz(2 * t * n_edges + 1);
  for (int e = -t * n_edges; e <= t * n_edges; ++e)
    boltz[e + t * n_edges] = std::exp(tau * e);

  double z = 0.0, num = 0.0;
  const uint32_t n_conf = uint32_t{1} << n_bits;
  for (uint32_t c = 0; c < n_conf; ++c) {
    int energy = 0;
    for (int e = 0; e < n_edges; ++e) {
      const int u = edges[e].first, v = edges[e].second;
      int prod = 1;
      for (int k = 0; k < t - 1; ++k) {
        const int s =
            ((c >> (k * n + u)) ^ (c >> (k * n + v))) & 1 ? -1 : 1;
        energy += s;
        prod *= s;
      }
      energy += prod;  // the eliminated replica sigma^(t)
    }
    const double w = boltz[energy + t * n_edges];
    z += w;
    if (!insertions.empty()) {
      int ins = 1;
      for (auto [rep, site] : insertions) {
        if (rep < t) {
          ins *= ((c >> ((rep - 1) * n + site)) & 1) ? -1 : 1;
        } else {
          for (int k = 0; k < t - 1; ++k)
            ins *= ((c >> (k * n + site)) & 1) ? -1 : 1;
        }
      }
      num += w * ins;
    }
  }
  return insertions.empty() ? z : num / z;
}

double purity_ising_tau_c() {
  return 0.5 * std::atanh(std::sqrt(2.0) - 1.0);
}

double purity_ising_pc() {
  const double th = std::tanh(purity_ising_tau_c());
  return th / (1.0 + th);
}

double nishimori_beta(double p) {
  if (!(p > 0.0 && p < 1.0)) throw BadProbability(std::to_string(p));
  return 0.5 * std::log((1.0 - p) / p);
}

std::vector<double> villain_fn_coefficients(double rotor_alpha, int n_max) {
  if (!(rotor_alpha > 0.0)) throw BadAlpha(std::to_string(rotor_alpha));
  if (n_max < 0 || n_max > 64) throw BadGrid("n_max outside [0, 64]");
  const double q = std::exp(-2.0 * rotor_alpha);
  double theta3 = 1.0, theta2 = 0.0;
  for (int k = 1; k <= 256; ++k) {
    const double t = std::pow(q, double(k) * k);
    theta3 += 2.0 * t;
    if (t < 1e-300) break;
  }
  for (int k = 0; k <= 256; ++k) {
    const double t = std::pow(q, (k + 0.5) * (k + 0.5));
    theta2 += 2.0 * t;
    if (t < 1e-300) break;
  }
  std::vector<double> f(n_max + 1);
  for (int nn = 0; nn <= n_max; ++nn) {
    const double gauss = std::exp(-0.5 * rotor_alpha * double(nn) * nn);
    f[nn] = gauss * ((nn % 2 == 0) ? 1.0 : theta2 / theta3);
  }
  return f;  // f[0] = 1 by construction
}

cplx fdw_weight(double p, double theta, const std::vector<int>& d,
                const std::vector<int>& d_prime) {
  if (!(p >= 0.0 && p <= 1.0)) throw BadProbability(std::to_string(p));
  if (d.size() != d_prime.size())
    throw DimensionMismatch("domain-wall configurations differ in length");
  // alpha * beta = 1 - p + p e^{2 i theta} and alpha^{-1} beta = its
  // conjugate, so the per-edge factors need no division by beta.
  const cplx u = 1.0 - p + p * std::exp(cplx(0.0, 2.0 * theta));
  cplx out = 1.0;
  for (std::size_t e = 0; e < d.size(); ++e) {
    const int s = d[e], sp = d_prime[e];
    if (s != 1 && s != -1) throw BadWeights("edge signs must be +-1");
    if (sp != 1 && sp != -1) throw BadWeights("edge signs must be +-1");
    if (s == sp) continue;
    out *= (s > sp) ? u : std::conj(u);
  }
  return out;
}

double crossing_estimate(const std::vector<double>& x,
                         const std::vector<double>& ya,
                         const std::vector<double>& yb) {
  if (x.size() < 2 || x.size() != ya.size() || x.size() != yb.size())
    throw BadGrid("crossing grids inconsistent");
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    const double d0 = ya[i] - yb[i];
    const double d1 = ya[i + 1] - yb[i + 1];
    if (d0 == 0.0) return x[i];
    if ((d0 > 0) != (d1 > 0))
      return x[i] + d0 * (x[i + 1] - x[i]) / (d0 - d1);
  }
  throw BadGrid("curves do not cross on the grid");
}

}  // namespace mixedorder
