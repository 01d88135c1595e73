#include <doctest.h>

#include <cmath>

#include "mixedorder/channels.hpp"
#include "mixedorder/errors.hpp"
#include "mixedorder/models.hpp"
#include "test_util.hpp"

using namespace mixedorder;

namespace {

double expval(const DensityMatrix& rho, const Mat& op) {
  return (op * rho.mat()).trace().real();
}

}  // namespace

TEST_CASE("zz_dephasing p=0 is the identity channel") {
  auto lat = LatticeSpec::chain(3);
  auto c = zz_dephasing(3, lat, 0.0);
  Xoshiro256pp rng(31);
  DensityMatrix rho = testutil::random_density(rng, 3);
  CHECK(max_abs(c.apply(rho).mat() - rho.mat()) < 1e-12);
}

TEST_CASE("zz_dephasing p=1/2 on one bond of |++>") {
  auto lat = LatticeSpec::chain(2);
  auto c = zz_dephasing(2, lat, 0.5);
  DensityMatrix out = c.apply(state_plus_product(2));
  const Mat zz = embed_local(Mat(pauli_z()), {0}, 2) *
                 embed_local(Mat(pauli_z()), {1}, 2);
  CHECK(std::abs(expval(out, zz)) < 1e-12);
  CHECK(std::abs(expval(out, embed_local(Mat(pauli_x()), {0}, 2)))
        < 1e-12);
}

TEST_CASE("zz_dephasing composition rule p'' = p + p' - 2pp'") {
  auto lat = LatticeSpec::chain(2);
  const double p1 = 0.13, p2 = 0.31;
  auto once = zz_dephasing(2, lat, p1 + p2 - 2 * p1 * p2);
  auto twice = compose(zz_dephasing(2, lat, p1), zz_dephasing(2, lat, p2));
  Xoshiro256pp rng(32);
  DensityMatrix rho = testutil::random_density(rng, 2);
  CHECK(max_abs(once.apply(rho).mat() - twice.apply(rho).mat()) < 1e-12);
  CHECK(twice.kraus_count() == doctest::Approx(4.0));
}

TEST_CASE("theta_channel at theta=pi/2 acts like zz_dephasing") {
  auto lat = LatticeSpec::chain(2);
  Xoshiro256pp rng(33);
  DensityMatrix rho = testutil::random_density(rng, 2);
  auto a = theta_channel(2, lat, 0.23, M_PI / 2);
  auto b = zz_dephasing(2, lat, 0.23);
  CHECK(max_abs(a.apply(rho).mat() - b.apply(rho).mat()) < 1e-12);
  auto id = theta_channel(2, lat, 0.4, 0.0);
  CHECK(max_abs(id.apply(rho).mat() - rho.mat()) < 1e-12);
}

TEST_CASE("theta channel beta weight |1-p+p e^{2i theta}|") {
  for (double p : {0.1, 0.35, 0.5}) {
    for (double th : {0.2, 0.9, 1.4}) {
      const double lhs = std::abs(1.0 - p + p * std::exp(cplx(0, 2 * th)));
      const double rhs =
          std::sqrt(1.0 - 4.0 * p * (1.0 - p) * std::pow(std::sin(th), 2));
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
      // and it is exactly the damping of a single-bond coherence
      auto c = theta_channel(2, LatticeSpec::chain(2), p, th);
      Mat m = Mat::Zero(4, 4);
      m(0, 0) = m(3, 3) = 0.5;
      m(0, 1) = m(1, 0) = 0.25;  // |00><01| block: flips sigma_u sigma_v
      Mat out = c.apply_raw(m);
      CHECK(std::abs(out(0, 1)) == doctest::Approx(0.25 * rhs).epsilon(1e-12));
    }
  }
}

TEST_CASE("general_ising_channel validates weights and damps coherences") {
  auto lat = LatticeSpec::chain(2);
  CHECK_THROWS_AS(general_ising_channel(2, lat, {{0.4, 0.1}, {0.4, 0.2}}),
                  BadWeights);
  std::vector<std::pair<double, double>> w = {{0.6, 0.3}, {0.4, 1.1}};
  auto c = general_ising_channel(2, lat, w);
  cplx eff = 0;
  for (auto [pn, th] : w) eff += pn * std::exp(cplx(0, 2 * th));
  Mat m = Mat::Zero(4, 4);
  m(0, 0) = m(3, 3) = 0.5;
  m(0, 1) = m(1, 0) = 0.25;
  Mat out = c.apply_raw(m);
  CHECK(std::abs(out(0, 1)) ==
        doctest::Approx(0.25 * std::abs(eff)).epsilon(1e-12));
}

TEST_CASE("site_x_dephasing at p=1/2 turns GHZ into (1 + prod X)/2^n") {
  auto c = site_x_dephasing(3, 0.5);
  DensityMatrix out = c.apply(state_ghz(3));
  CHECK(max_abs(out.mat() - state_one_plus_X(3).mat()) < 1e-12);
}

TEST_CASE("full_kraus expansion agrees with factorized application") {
  auto c = zz_dephasing(3, LatticeSpec::chain(3), 0.3);
  Xoshiro256pp rng(34);
  DensityMatrix rho = testutil::random_density(rng, 3);
  Mat acc = Mat::Zero(8, 8);
  for (const Mat& k : c.full_kraus())
    acc += k * rho.mat() * k.adjoint();
  CHECK(max_abs(acc - c.apply(rho).mat()) < 1e-12);
}

TEST_CASE("adjoint action is the Heisenberg dual") {
  auto c = compose(zz_dephasing(3, LatticeSpec::chain(3), 0.2),
                   site_x_dephasing(3, 0.15));
  Xoshiro256pp rng(35);
  DensityMatrix rho = testutil::random_density(rng, 3);
  const Mat obs = hermitize(testutil::ginibre(rng, 8, 8));
  const double lhs = (obs * c.apply(rho).mat()).trace().real();
  const double rhs = (c.apply_adjoint_raw(obs) * rho.mat()).trace().real();
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
}

TEST_CASE("completeness violations are rejected") {
  std::vector<LocalKraus> bad;
  bad.push_back({{0}, {0.5 * Mat(pauli_x())}});
  CHECK_THROWS_AS(KrausChannel(2, std::move(bad)), CompletenessViolated);
}

TEST_CASE("unital channels never increase purity") {
  Xoshiro256pp rng(36);
  auto c = theta_channel(3, LatticeSpec::chain(3), 0.3, 0.7);
  for (int k = 0; k < 5; ++k) {
    DensityMatrix rho = testutil::random_density(rng, 3);
    CHECK(c.apply(rho).purity() <= rho.purity() + 1e-12);
  }
}

TEST_CASE("strong symmetry checks against prod X") {
  auto sym = SymmetrySpec::z2_all_x(3);
  CHECK(check_strong_symmetry(zz_dephasing(3, LatticeSpec::chain(3), 0.37), sym)
            .symmetric);
  CHECK(check_strong_symmetry(
            theta_channel(3, LatticeSpec::chain(3), 0.2, 0.9), sym)
            .symmetric);
  // single-site Z unitary anticommutes with X
  std::vector<LocalKraus> z0;
  z0.push_back({{0}, {Mat(pauli_z())}});
  auto res = check_strong_symmetry(KrausChannel(3, std::move(z0)), sym);
  CHECK_FALSE(res.symmetric);
  CHECK(res.max_violation == doctest::Approx(2.0));
}

TEST_CASE("symmetric channel preserves strong symmetry of the state") {
  auto c = zz_dephasing(4, LatticeSpec::chain(4), 0.3);
  DensityMatrix out = c.apply(state_one_plus_X(4));
  const Mat u = PauliString::all_x(4).to_matrix();
  CHECK(max_abs(u * out.mat() - out.mat()) < 1e-10);
}
