#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "orthoflow/errors.hpp"
#include "orthoflow/oracle.hpp"
#include "test_util.hpp"

using namespace orthoflow;

namespace {

// Direct evaluation of the Wilson product identity for one node.
double wilson_product_defect(const std::vector<double>& x, std::size_t j, const WilsonParams& p) {
  const Complex i(0, 1);
  Complex lhs = 1.0;
  for (Complex e : p.as_array()) lhs *= (i * e + x[j]) / (i * e - x[j]);
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (k == j) continue;
    lhs *= (i + x[j] - x[k]) / (i - x[j] + x[k]);
    lhs *= (i + x[j] + x[k]) / (i - x[j] - x[k]);
  }
  return std::abs(lhs - 1.0);
}

}  // namespace

TEST_CASE("companion roots of simple polynomials") {
  const auto r = companion_roots(MonicPoly{{-1.0 / 3.0, 0.0, 1.0}, VariableKind::X});
  REQUIRE(r.size() == 2);
  CHECK(r[0] == doctest::Approx(-1 / std::sqrt(3.0)).epsilon(1e-14));
  CHECK(r[1] == doctest::Approx(1 / std::sqrt(3.0)).epsilon(1e-14));
  const auto s = companion_roots(MonicPoly{{-4.0, 1.0}, VariableKind::XSquared});
  REQUIRE(s.size() == 1);
  CHECK(s[0] == doctest::Approx(2.0));
  CHECK_THROWS_AS(companion_roots(MonicPoly{{1.0, 0.0, 1.0}, VariableKind::X}), ComplexRoots);
  CHECK_THROWS_AS(companion_roots(MonicPoly{{1.0, 1.0}, VariableKind::XSquared}), ComplexRoots);
  CHECK_THROWS_AS(companion_roots(MonicPoly{}), InvalidParameters);
}

TEST_CASE("companion roots reproduce the published tables") {
  const auto ch = companion_roots(monic_continuous_hahn(30, testutil::ch30_params()));
  CHECK(testutil::max_abs_diff(ch, testutil::ch30_table()) < 1e-4);
  const auto w = companion_roots(monic_wilson(15, testutil::wilson15_params()));
  CHECK(testutil::max_abs_diff(w, testutil::wilson15_table()) < 1e-4);
}

TEST_CASE("companion eigenvalues agree with Eigen") {
  std::mt19937 rng(51);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + trial % 12;
    std::vector<double> c(static_cast<std::size_t>(n) + 1);
    for (double& v : c) v = g(rng);
    c.back() = 1.0;
    Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(n, n);
    for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i) comp(i, n - 1) = -c[static_cast<std::size_t>(i)];
    const Eigen::VectorXcd ref = comp.eigenvalues();
    const auto got = companion_eigenvalues(c);
    REQUIRE(got.size() == static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      double best = INFINITY;
      for (Complex z : got) best = std::min(best, std::abs(z - ref(i)));
      CHECK(best < 1e-8 * (1.0 + std::abs(ref(i))));
    }
  }
}

TEST_CASE("symmetric eigenvalues agree with Eigen") {
  std::mt19937 rng(52);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 1 + trial;
    Eigen::MatrixXd m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j <= i; ++j) m(i, j) = m(j, i) = g(rng);
    const Eigen::VectorXd ref = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(m).eigenvalues();
    const auto got = symmetric_eigenvalues(m);
    REQUIRE(got.size() == static_cast<std::size_t>(n));
    CHECK(std::is_sorted(got.begin(), got.end()));
    for (int i = 0; i < n; ++i) CHECK(got[static_cast<std::size_t>(i)] == doctest::Approx(ref(i)).epsilon(1e-10).scale(1.0));
  }
}

TEST_CASE("Bethe residuals") {
  const auto table = testutil::ch30_table();
  CHECK(bethe_residual_ch(table, testutil::ch30_params()) < 1e-3);
  CHECK(bethe_residual_ch(std::vector<double>{0.0}, {1.3, 0.4}) == 0.0);
  auto shifted = table;
  for (double& v : shifted) v += 0.1;
  CHECK(bethe_residual_ch(shifted, testutil::ch30_params()) > 1e-2);

  const auto wp = testutil::wilson15_params();
  CHECK(bethe_residual_w(testutil::wilson15_table(), wp) < 1e-3);

  const WilsonParams w1{0.7, 1.3, 2.0, 0.25};
  const auto root = newton_solve(WilsonPotential{w1}, Configuration{1.0}, 1e-14);
  CHECK(bethe_residual_w(root, w1) < 1e-8);

  const std::vector<double> pair = {-0.8, 0.8};
  const double direct = std::max(wilson_product_defect(pair, 0, w1), wilson_product_defect(pair, 1, w1));
  CHECK(direct > 0.0);
  CHECK(bethe_residual_w(pair, w1) == doctest::Approx(direct).epsilon(1e-12));
}

TEST_CASE("difference equation residuals") {
  const auto chp = testutil::ch30_params();
  const auto ch = monic_continuous_hahn(30, chp);
  const auto chr = companion_roots(ch);
  CHECK(diff_eq_residual(ch, chr, chp) < 1e-6);

  const auto wp = testutil::wilson15_params();
  const auto w = monic_wilson(15, wp);
  CHECK(diff_eq_residual(w, companion_roots(w), wp) < 1e-6);

  // Roots for another parameter set do not satisfy this difference equation.
  const ContinuousHahnParams other{2.0, 0.7};
  const auto other_poly = monic_continuous_hahn(8, other);
  const auto other_roots = companion_roots(monic_continuous_hahn(8, {1.0, 1.5}));
  CHECK(diff_eq_residual(other_poly, other_roots, other) >= 1e-2);
}

TEST_CASE("full verification") {
  const auto ch = full_verify(testutil::ch30_params(), 30);
  CHECK(ch.root_mismatch < 1e-4);
  CHECK(ch.hessian_min_eigenvalue >= 0.030);
  CHECK(ch.hessian_min_eigenvalue >= ch.kappa_bound);
  CHECK(ch.max_bethe_residual < 1e-6);
  CHECK(ch.max_diff_eq_residual < 1e-6);

  const auto w = full_verify(testutil::wilson15_params(), 15);
  CHECK(w.root_mismatch < 1e-4);
  CHECK(w.hessian_min_eigenvalue >= 0.061);

  const auto one = full_verify(ContinuousHahnParams{1.0, 1.0}, 1);
  CHECK(one.root_mismatch < 1e-10);
  CHECK(one.max_bethe_residual < 1e-10);
  CHECK(one.max_diff_eq_residual < 1e-10);
}

TEST_CASE("flow roots match companion roots for random parameters") {
  std::mt19937 rng(53);
  for (unsigned n : {2u, 5u, 9u, 14u}) {
    const auto ch = full_verify(testutil::random_ch(rng), n);
    CHECK(ch.root_mismatch < 1e-6);
    const auto w = full_verify(testutil::random_wilson(rng), n);
    CHECK(w.root_mismatch < 1e-6);
  }
}
