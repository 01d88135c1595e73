#include <algorithm>
#include <cmath>
#include <numeric>

#include "mixedorder/errors.hpp"
#include "mixedorder/rng.hpp"
#include "mixedorder/statmech.hpp"

namespace mixedorder {

namespace {

struct Adjacency {
  int n_sites = 0;
  int max_degree = 0;
  // per site: (neighbor, bond index)
  std::vector<std::vector<std::pair<int, int>>> nbrs;
  std::vector<std::pair<int, int>> edges;

  explicit Adjacency(const LatticeSpec& lat)
      : n_sites(lat.n_sites()), nbrs(lat.n_sites()), edges(lat.edges()) {
    for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
      nbrs[edges[e].first].push_back({edges[e].second, e});
      nbrs[edges[e].second].push_back({edges[e].first, e});
    }
    for (const auto& v : nbrs)
      max_degree = std::max(max_degree, static_cast<int>(v.size()));
  }
};

struct IsingMoments {
  double m2 = 0, m4 = 0, bond = 0;
  long count = 0;
};

// One +-J realization at inverse temperature beta, sequential Metropolis.
IsingMoments run_ising_metropolis(const Adjacency& adj,
                                  const std::vector<int>& signs, double beta,
                                  const MCParams& run, Xoshiro256pp rng) {
  const int n = adj.n_sites;
  const int ne = static_cast<int>(adj.edges.size());
  std::vector<int8_t> spin(n, 1);
  // acceptance table over integer energy changes dE = 2 s h
  const int dmax = 2 * adj.max_degree;
  std::vector<double> acc(2 * dmax + 1);
  for (int d = -dmax; d <= dmax; ++d)
    acc[d + dmax] = std::exp(-beta * 2.0 * d);

  auto sweep = [&]() {
    for (int i = 0; i < n; ++i) {
      int h = 0;
      for (auto [j, b] : adj.nbrs[i]) h += signs[b] * spin[j];
      const int d = spin[i] * h;  // dE = 2 d
      if (d <= 0 || rng.uniform() < acc[d + dmax]) spin[i] = -spin[i];
    }
  };

  for (int s = 0; s < run.n_therm; ++s) sweep();
  IsingMoments out;
  for (int s = 0; s < run.n_sweeps; ++s) {
    sweep();
    if ((s + 1) % run.measure_stride != 0) continue;
    long sm = 0;
    for (int i = 0; i < n; ++i) sm += spin[i];
    const double m = static_cast<double>(sm) / n;
    out.m2 += m * m;
    out.m4 += m * m * m * m;
    long eb = 0;
    for (int e = 0; e < ne; ++e)
      eb += signs[e] * spin[adj.edges[e].first] * spin[adj.edges[e].second];
    out.bond += static_cast<double>(eb) / ne;
    ++out.count;
  }
  out.m2 /= out.count;
  out.m4 /= out.count;
  out.bond /= out.count;
  return out;
}

// Binder cumulant U = 1 - [m4] / (3 [m2]^2) over per-realization moments,
// with a jackknife error over realizations.
std::pair<double, double> binder_of_realizations(
    const std::vector<double>& m2s, const std::vector<double>& m4s) {
  const int nr = static_cast<int>(m2s.size());
  const double s2 = std::accumulate(m2s.begin(), m2s.end(), 0.0);
  const double s4 = std::accumulate(m4s.begin(), m4s.end(), 0.0);
  auto binder = [](double a2, double a4) { return 1.0 - a4 / (3 * a2 * a2); };
  const double full = binder(s2 / nr, s4 / nr);
  if (nr < 2) return {full, 0.0};
  double var = 0;
  for (int r = 0; r < nr; ++r) {
    const double jb =
        binder((s2 - m2s[r]) / (nr - 1), (s4 - m4s[r]) / (nr - 1));
    var += (jb - full) * (jb - full);
  }
  const double err = std::sqrt(var * (nr - 1) / nr);
  return {full, err};
}

void validate_run(const MCParams& run) {
  if (run.n_therm < 100) throw BadSchedule("n_therm below 100 sweeps");
  if (run.n_sweeps < run.measure_stride || run.measure_stride < 1)
    throw BadSchedule("sweep/stride counts inconsistent");
}

}  // namespace

std::vector<MCPoint> rbim_nishimori_scan(const std::vector<double>& p_grid,
                                         const std::vector<int>& sizes,
                                         const MCParams& run, int n_disorder,
                                         uint64_t master_seed) {
  validate_run(run);
  if (n_disorder < 1) throw BadSchedule("n_disorder must be positive");
  for (double p : p_grid)
    if (!(p > 0.0 && p <= 0.25)) throw BadGrid("p grid outside (0, 0.25]");
  Xoshiro256pp master(master_seed);
  std::vector<MCPoint> out;
  uint64_t stream = 0;
  for (int L : sizes) {
    if (L < 2 || L > 32) throw BadGrid("RBIM size outside [2, 32]");
    const Adjacency adj(
        LatticeSpec::square(L, L, LatticeSpec::Boundary::periodic));
    for (double p : p_grid) {
      const double beta = nishimori_beta(p);
      std::vector<double> m2s, m4s, ebs;
      for (int r = 0; r < n_disorder; ++r) {
        Xoshiro256pp rng = master.fork(stream++);
        const auto bonds = BondDisorder::sample(
            LatticeSpec::square(L, L, LatticeSpec::Boundary::periodic), p,
            rng());
        IsingMoments mo =
            run_ising_metropolis(adj, bonds.signs, beta, run, rng.fork(1));
        m2s.push_back(mo.m2);
        m4s.push_back(mo.m4);
        ebs.push_back(mo.bond);
      }
      MCPoint pt;
      pt.x = p;
      pt.L = L;
      auto [b, berr] = binder_of_realizations(m2s, m4s);
      pt.binder = b;
      pt.binder_err = berr;
      pt.m2 = std::accumulate(m2s.begin(), m2s.end(), 0.0) / n_disorder;
      pt.m4 = std::accumulate(m4s.begin(), m4s.end(), 0.0) / n_disorder;
      const double eb =
          std::accumulate(ebs.begin(), ebs.end(), 0.0) / n_disorder;
      double var = 0;
      for (double e : ebs) var += (e - eb) * (e - eb);
      pt.energy_per_bond = eb;
      pt.energy_err =
          n_disorder > 1 ? std::sqrt(var / (n_disorder - 1) / n_disorder) : 0;
      pt.n_measure = static_cast<long>(n_disorder) *
                     (run.n_sweeps / run.measure_stride);
      out.push_back(pt);
    }
  }
  return out;
}

std::vector<MCPoint> ising_renyi2_scan(const std::vector<double>& p_grid,
                                       const std::vector<int>& sizes,
                                       const MCParams& run) {
  validate_run(run);
  Xoshiro256pp master(run.seed);
  std::vector<MCPoint> out;
  uint64_t stream = 0;
  for (int L : sizes) {
    if (L < 2 || L > 32) throw BadGrid("Ising size outside [2, 32]");
    const Adjacency adj(
        LatticeSpec::square(L, L, LatticeSpec::Boundary::periodic));
    const int n = adj.n_sites;
    for (double p : p_grid) {
      if (!(p > 0.0 && p < 0.5)) throw BadGrid("p outside (0, 0.5)");
      // Renyi-2 image: ferromagnetic Ising at the doubled coupling
      const double k_eff = 2.0 * std::atanh(p / (1.0 - p));
      const double p_add = 1.0 - std::exp(-2.0 * k_eff);
      Xoshiro256pp rng = master.fork(stream++);
      std::vector<int8_t> spin(n, 1);
      std::vector<int> stack;
      std::vector<uint8_t> in_cluster(n);
      auto wolff_step = [&]() {
        std::fill(in_cluster.begin(), in_cluster.end(), 0);
        const int seed_site = static_cast<int>(rng.below(n));
        const int8_t s0 = spin[seed_site];
        stack.assign(1, seed_site);
        in_cluster[seed_site] = 1;
        while (!stack.empty()) {
          const int i = stack.back();
          stack.pop_back();
          spin[i] = -s0;
          for (auto [j, b] : adj.nbrs[i]) {
            (void)b;
            if (!in_cluster[j] && spin[j] == s0 && rng.uniform() < p_add) {
              in_cluster[j] = 1;
              stack.push_back(j);
            }
          }
        }
      };
      for (int s = 0; s < run.n_therm; ++s) wolff_step();
      std::vector<double> m2v, m4v;
      for (int s = 0; s < run.n_sweeps; ++s) {
        wolff_step();
        if ((s + 1) % run.measure_stride != 0) continue;
        long sm = 0;
        for (int i = 0; i < n; ++i) sm += spin[i];
        const double m = static_cast<double>(sm) / n;
        m2v.push_back(m * m);
        m4v.push_back(m * m * m * m);
      }
      // block the time series, then jackknife the blocks
      const int n_blocks = std::min<int>(20, static_cast<int>(m2v.size()));
      std::vector<double> b2(n_blocks, 0), b4(n_blocks, 0);
      for (std::size_t i = 0; i < m2v.size(); ++i) {
        const int blk = static_cast<int>(i * n_blocks / m2v.size());
        b2[blk] += m2v[i];
        b4[blk] += m4v[i];
      }
      for (int blk = 0; blk < n_blocks; ++blk) {
        const double cnt =
            std::ceil(static_cast<double>(m2v.size()) / n_blocks);
        b2[blk] /= m2v.size() / static_cast<double>(n_blocks);
        b4[blk] /= m2v.size() / static_cast<double>(n_blocks);
        (void)cnt;
      }
      MCPoint pt;
      pt.x = p;
      pt.L = L;
      auto [b, berr] = binder_of_realizations(b2, b4);
      pt.binder = b;
      pt.binder_err = berr;
      pt.m2 = std::accumulate(m2v.begin(), m2v.end(), 0.0) / m2v.size();
      pt.m4 = std::accumulate(m4v.begin(), m4v.end(), 0.0) / m4v.size();
      pt.n_measure = static_cast<long>(m2v.size());
      out.push_back(pt);
    }
  }
  return out;
}

std::vector<double> ising_metropolis_histogram(const BondDisorder& bonds,
                                               double beta, int n_sweeps,
                                               uint64_t seed) {
  const Adjacency adj(bonds.lattice);
  const int n = adj.n_sites;
  if (n > 16) throw TooLarge("histogram limited to 16 spins");
  Xoshiro256pp rng(seed);
  std::vector<int8_t> spin(n, 1);
  const int dmax = 2 * adj.max_degree;
  std::vector<double> acc(2 * dmax + 1);
  for (int d = -dmax; d <= dmax; ++d)
    acc[d + dmax] = std::exp(-beta * 2.0 * d);
  std::vector<double> hist(uint64_t{1} << n, 0.0);
  const int n_therm = n_sweeps / 10;
  long recorded = 0;
  for (int s = 0; s < n_sweeps; ++s) {
    for (int i = 0; i < n; ++i) {
      int h = 0;
      for (auto [j, b] : adj.nbrs[i]) h += bonds.signs[b] * spin[j];
      const int d = spin[i] * h;
      if (d <= 0 || rng.uniform() < acc[d + dmax]) spin[i] = -spin[i];
    }
    if (s < n_therm) continue;
    uint64_t c = 0;
    for (int i = 0; i < n; ++i)
      if (spin[i] < 0) c |= uint64_t{1} << i;
    hist[c] += 1.0;
    ++recorded;
  }
  for (double& v : hist) v /= recorded;
  return hist;
}

namespace {

// Tabulated bond potential of the f_n-weighted XY model.
struct BondPotential {
  static constexpr int kGrid = 1 << 12;
  std::vector<double> s, s1, s2;  // -ln w and its first two derivatives

  explicit BondPotential(const std::vector<double>& fn) {
    s.resize(kGrid + 1);
    s1.resize(kGrid + 1);
    s2.resize(kGrid + 1);
    for (int g = 0; g <= kGrid; ++g) {
      const double phi = 2.0 * M_PI * g / kGrid;
      double w = 1.0, w1 = 0.0, w2 = 0.0;
      for (std::size_t n = 1; n < fn.size(); ++n) {
        w += 2.0 * fn[n] * std::cos(n * phi);
        w1 -= 2.0 * n * fn[n] * std::sin(n * phi);
        w2 -= 2.0 * n * n * fn[n] * std::cos(n * phi);
      }
      if (w <= 0) throw BadAlpha("bond weight not positive");
      s[g] = -std::log(w);
      s1[g] = -w1 / w;
      s2[g] = -w2 / w + (w1 / w) * (w1 / w);
    }
  }

  static double wrap(double phi) {
    phi = std::fmod(phi, 2.0 * M_PI);
    return phi < 0 ? phi + 2.0 * M_PI : phi;
  }

  double lerp(const std::vector<double>& tab, double phi) const {
    const double x = wrap(phi) * kGrid / (2.0 * M_PI);
    const int g = static_cast<int>(x);
    const double f = x - g;
    return tab[g] * (1.0 - f) + tab[g + 1] * f;
  }

  double energy(double phi) const { return lerp(s, phi); }
  double d1(double phi) const { return lerp(s1, phi); }
  double d2(double phi) const { return lerp(s2, phi); }
};

}  // namespace

std::vector<MCPoint> villain_kt_scan(const std::vector<double>& alpha_grid,
                                     const std::vector<int>& sizes,
                                     const MCParams& run) {
  validate_run(run);
  Xoshiro256pp master(run.seed);
  std::vector<MCPoint> out;
  uint64_t stream = 0;
  for (int L : sizes) {
    if (L < 2 || L > 32) throw BadGrid("Villain size outside [2, 32]");
    const int n = L * L;
    // oriented horizontal bonds (site -> +x neighbor) carry the twist
    std::vector<std::pair<int, int>> xbonds;
    for (int y = 0; y < L; ++y)
      for (int x = 0; x < L; ++x)
        xbonds.push_back({x + L * y, (x + 1) % L + L * y});
    auto nbr = [L](int i, int dx, int dy) {
      const int x = (i % L + dx + L) % L;
      const int y = (i / L + dy + L) % L;
      return x + L * y;
    };
    for (double alpha : alpha_grid) {
      const auto fn_full = villain_fn_coefficients(alpha, 64);
      std::vector<double> fn;
      for (double f : fn_full) {
        if (f < 1e-12 && fn.size() > 1) break;
        fn.push_back(f);
      }
      const BondPotential pot(fn);
      Xoshiro256pp rng = master.fork(stream++);
      std::vector<double> theta(n, 0.0);
      double step = 1.0;
      long tried = 0, accepted = 0;
      auto update = [&](int i) {
        const double old = theta[i];
        const double prop = old + step * (rng.uniform() - 0.5) * 2.0;
        double de = 0;
        static const std::pair<int, int> dirs[4] = {
            {1, 0}, {-1, 0}, {0, 1}, {0, -1}};
        for (auto [dx, dy] : dirs) {
          const double tj = theta[nbr(i, dx, dy)];
          de += pot.energy(prop - tj) - pot.energy(old - tj);
        }
        ++tried;
        if (de <= 0 || rng.uniform() < std::exp(-de)) {
          theta[i] = prop;
          ++accepted;
        }
      };
      for (int s = 0; s < run.n_therm; ++s) {
        for (int i = 0; i < n; ++i) update(i);
        if ((s + 1) % 50 == 0) {  // adapt toward ~50% acceptance
          const double rate = static_cast<double>(accepted) / tried;
          if (rate > 0.55)
            step = std::min(step * 1.15, 2.0 * M_PI);
          else if (rate < 0.45)
            step = std::max(step / 1.15, 1e-3);
          tried = accepted = 0;
        }
      }
      std::vector<double> av, bv, b2v, m2v, m4v;
      for (int s = 0; s < run.n_sweeps; ++s) {
        for (int i = 0; i < n; ++i) update(i);
        if ((s + 1) % run.measure_stride != 0) continue;
        double a = 0, b = 0;
        for (auto [u, v] : xbonds) {
          const double d = theta[u] - theta[v];
          a += pot.d2(d);
          b += pot.d1(d);
        }
        av.push_back(a);
        bv.push_back(b);
        b2v.push_back(b * b);
        double cx = 0, cy = 0;
        for (double th : theta) {
          cx += std::cos(th);
          cy += std::sin(th);
        }
        const double m2 = (cx * cx + cy * cy) / (double(n) * n);
        m2v.push_back(m2);
        m4v.push_back(m2 * m2);
      }
      // Upsilon = (alpha / N) (<A> - <B^2> + <B>^2); jackknife over blocks
      const int nm = static_cast<int>(av.size());
      const int n_blocks = std::min(20, nm);
      std::vector<double> ba(n_blocks, 0), bb(n_blocks, 0), bb2(n_blocks, 0),
          cnt(n_blocks, 0);
      for (int i = 0; i < nm; ++i) {
        const int blk = static_cast<int>(
            static_cast<long>(i) * n_blocks / nm);
        ba[blk] += av[i];
        bb[blk] += bv[i];
        bb2[blk] += b2v[i];
        cnt[blk] += 1;
      }
      auto upsilon = [&](double sa, double sb, double sb2, double sc) {
        const double ma = sa / sc, mb = sb / sc, mb2 = sb2 / sc;
        return alpha / n * (ma - mb2 + mb * mb);
      };
      double ta = 0, tb = 0, tb2 = 0, tc = 0;
      for (int k = 0; k < n_blocks; ++k) {
        ta += ba[k];
        tb += bb[k];
        tb2 += bb2[k];
        tc += cnt[k];
      }
      const double full = upsilon(ta, tb, tb2, tc);
      double var = 0;
      for (int k = 0; k < n_blocks; ++k) {
        const double jk = upsilon(ta - ba[k], tb - bb[k], tb2 - bb2[k],
                                  tc - cnt[k]);
        var += (jk - full) * (jk - full);
      }
      MCPoint pt;
      pt.x = alpha;
      pt.L = L;
      pt.helicity = full;
      pt.helicity_err =
          n_blocks > 1 ? std::sqrt(var * (n_blocks - 1) / n_blocks) : 0;
      pt.m2 = std::accumulate(m2v.begin(), m2v.end(), 0.0) / nm;
      pt.m4 = std::accumulate(m4v.begin(), m4v.end(), 0.0) / nm;
      pt.binder = 1.0 - pt.m4 / (3 * pt.m2 * pt.m2);
      pt.n_measure = nm;
      out.push_back(pt);
    }
  }
  return out;
}

}  // namespace mixedorder
