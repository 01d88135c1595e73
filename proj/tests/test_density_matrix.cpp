#include <doctest.h>

#include <cmath>

#include "mixedorder/density_matrix.hpp"
#include "mixedorder/errors.hpp"
#include "test_util.hpp"

using namespace mixedorder;

namespace {

// Index-contraction oracle for the partial trace, independent of
// LocalIndexer: sums rho over explicit bit patterns of the traced sites.
Mat partial_trace_oracle(const Mat& rho, int n, const std::set<int>& keep) {
  std::vector<int> kept(keep.begin(), keep.end());
  std::vector<int> gone;
  for (int s = 0; s < n; ++s)
    if (!keep.count(s)) gone.push_back(s);
  const int k = static_cast<int>(kept.size());
  auto expand = [&](uint64_t kb, uint64_t gb) {
    uint64_t full = 0;
    for (int i = 0; i < k; ++i)
      if (kb & (uint64_t{1} << i)) full |= uint64_t{1} << kept[i];
    for (std::size_t i = 0; i < gone.size(); ++i)
      if (gb & (uint64_t{1} << i)) full |= uint64_t{1} << gone[i];
    return full;
  };
  Mat out = Mat::Zero(1 << k, 1 << k);
  for (uint64_t i = 0; i < out.rows(); ++i)
    for (uint64_t j = 0; j < out.cols(); ++j)
      for (uint64_t g = 0; g < (uint64_t{1} << gone.size()); ++g)
        out(i, j) += rho(expand(i, g), expand(j, g));
  return out;
}

}  // namespace

TEST_CASE("constructor validates trace and hermiticity drift") {
  Mat m = Mat::Identity(2, 2) * 0.5;
  DensityMatrix ok(1, m);
  CHECK(ok.purity() == doctest::Approx(0.5));
  CHECK_THROWS_AS(DensityMatrix(1, Mat(Mat::Identity(2, 2))), Error);
  CHECK_THROWS_AS(DensityMatrix(2, m), DimensionMismatch);
}

TEST_CASE("constructor clips small negative eigenvalues, rejects large") {
  Mat m = Mat::Zero(2, 2);
  m(0, 0) = 1.0 + 1e-12;
  m(1, 1) = -1e-12;
  DensityMatrix d(1, m);
  CHECK(eigvalsh(d.mat()).minCoeff() >= 0.0);
  Mat bad = Mat::Zero(2, 2);
  bad(0, 0) = 1.01;
  bad(1, 1) = -0.01;
  CHECK_THROWS_AS(DensityMatrix(1, bad), NotPSD);
}

TEST_CASE("partial_trace matches the contraction oracle") {
  Xoshiro256pp rng(21);
  DensityMatrix rho = testutil::random_density(rng, 3);
  for (const std::set<int>& keep :
       {std::set<int>{0}, {2}, {0, 2}, {1, 2}, {0, 1, 2}}) {
    DensityMatrix red = partial_trace(rho, keep);
    const Mat oracle = partial_trace_oracle(rho.mat(), 3, keep);
    CHECK(max_abs(red.mat() - oracle) < 1e-12);
  }
}

TEST_CASE("partial trace of a product state factorizes") {
  Xoshiro256pp rng(22);
  DensityMatrix a = testutil::random_density(rng, 1);
  DensityMatrix b = testutil::random_density(rng, 2);
  DensityMatrix ab = tensor(a, b);
  CHECK(max_abs(partial_trace(ab, {0}).mat() - a.mat()) < 1e-12);
  CHECK(max_abs(partial_trace(ab, {1, 2}).mat() - b.mat()) < 1e-12);
}

TEST_CASE("von Neumann entropy on known states") {
  Xoshiro256pp rng(23);
  DensityMatrix pure = DensityMatrix::from_pure(2, testutil::random_pure(rng, 4));
  CHECK(von_neumann_entropy(pure) == doctest::Approx(0.0).epsilon(1e-9));
  DensityMatrix mixed(1, Mat(Mat::Identity(2, 2) * 0.5));
  CHECK(von_neumann_entropy(mixed) == doctest::Approx(std::log(2.0)));
}

TEST_CASE("apply_pauli_string conjugates like the dense embedding") {
  Xoshiro256pp rng(24);
  DensityMatrix rho = testutil::random_density(rng, 3);
  PauliString p = PauliString::pair(SiteOperator::Z(0), SiteOperator::X(2), 3);
  DensityMatrix fast = apply_pauli_string(rho, p);
  const Mat u = p.to_matrix();
  CHECK(max_abs(fast.mat() - u * rho.mat() * u.adjoint()) < 1e-12);
}

TEST_CASE("reorder_sites round-trips and permutes marginals") {
  Xoshiro256pp rng(25);
  DensityMatrix rho = testutil::random_density(rng, 3);
  DensityMatrix rot = reorder_sites(rho, {1, 2, 0});  // site i -> perm[i]
  CHECK(max_abs(partial_trace(rot, {1}).mat() - partial_trace(rho, {0}).mat()) <
        1e-12);
  DensityMatrix back = reorder_sites(rot, {2, 0, 1});
  CHECK(max_abs(back.mat() - rho.mat()) < 1e-12);
}
