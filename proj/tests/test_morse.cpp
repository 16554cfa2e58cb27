#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "orthoflow/errors.hpp"
#include "orthoflow/flow.hpp"
#include "orthoflow/morse.hpp"
#include "test_util.hpp"

using namespace orthoflow;
using std::numbers::pi;

namespace {

std::vector<PotentialKind> sample_kinds(std::mt19937& rng) {
  const auto ch = testutil::random_ch(rng);
  return {ContinuousHahnPotential{ch}, WilsonPotential{testutil::random_wilson(rng)},
          ReducedEvenPotential{ch}, ReducedOddPotential{ch}};
}

// Sorted configuration strictly inside (-1, 1) with gaps of at least 0.02.
Configuration random_jacobi_config(std::mt19937& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(-0.97, 0.97);
  for (;;) {
    Configuration x(n);
    for (double& v : x) v = u(rng);
    std::sort(x.begin(), x.end());
    bool ok = true;
    for (std::size_t j = 1; j < n; ++j) ok = ok && x[j] - x[j - 1] > 0.02;
    if (ok) return x;
  }
}

double fd_step(double x) { return (1.0 + std::abs(x)) * 1e-6; }

void check_gradient_fd(const PotentialKind& kind, const Configuration& x) {
  const auto g = gradient(kind, x);
  for (std::size_t j = 0; j < x.size(); ++j) {
    Configuration xp = x, xm = x;
    const double h = fd_step(x[j]);
    xp[j] += h;
    xm[j] -= h;
    const double fd = (potential(kind, xp) - potential(kind, xm)) / (2 * h);
    CHECK(std::abs(fd - g[j]) <= 1e-6 * std::max(1.0, std::abs(g[j])));
  }
}

void check_hessian_fd(const PotentialKind& kind, const Configuration& x) {
  const auto h = hessian(kind, x);
  for (std::size_t k = 0; k < x.size(); ++k) {
    Configuration xp = x, xm = x;
    const double step = fd_step(x[k]);
    xp[k] += step;
    xm[k] -= step;
    const auto gp = gradient(kind, xp), gm = gradient(kind, xm);
    for (std::size_t j = 0; j < x.size(); ++j) {
      const double fd = (gp[j] - gm[j]) / (2 * step);
      const double exact = h(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k));
      CHECK(std::abs(fd - exact) <= 1e-5 * std::max(1.0, std::abs(exact)));
    }
  }
}

}  // namespace

TEST_CASE("antideriv_arctan") {
  CHECK(antideriv_arctan(0.0) == 0.0);
  CHECK(antideriv_arctan(1.0) == doctest::Approx(pi / 4 - std::log(2.0) / 2).epsilon(1e-15));
  for (double x : {0.3, 2.0, 40.0}) CHECK(antideriv_arctan(-x) == antideriv_arctan(x));
}

TEST_CASE("pair_arctan") {
  CHECK(pair_arctan(0.0, Complex(1, 2), Complex(1, -2)) == 0.0);
  CHECK(pair_arctan(1.0, 1.0, 1.0) == doctest::Approx(pi / 2));
  // Composite Simpson on the derivative 2 Re(eps / (eps^2 + t^2)).
  const Complex eps(1, 1);
  const int m = 2000;
  double sum = 0;
  for (int i = 0; i <= m; ++i) {
    const double t = static_cast<double>(i) / m;
    const double f = 2 * (eps / (eps * eps + t * t)).real();
    sum += f * (i == 0 || i == m ? 1 : (i % 2 ? 4 : 2));
  }
  CHECK(pair_arctan(1.0, eps, std::conj(eps)) == doctest::Approx(sum / (3.0 * m)).epsilon(1e-12));
}

TEST_CASE("potential examples") {
  CHECK(potential(ContinuousHahnPotential{{1.0, 1.0}}, Configuration{0.0}) == 0.0);
  const double r = 1 / std::sqrt(3.0);
  const PotentialKind legendre = JacobiPotential{{0.0, 0.0}};
  CHECK(max_norm(gradient(legendre, Configuration{-r, r})) < 1e-14);
  CHECK_THROWS_AS(potential(legendre, Configuration{0.5, 0.2}), DomainViolation);
  CHECK_THROWS_AS(potential(legendre, Configuration{-1.0, 0.2}), DomainViolation);

  const PotentialKind ch = ContinuousHahnPotential{testutil::ch30_params()};
  const auto table = testutil::ch30_table();
  const double v0 = potential(ch, table);
  std::mt19937 rng(21);
  for (int i = 0; i < 100; ++i) {
    auto d = testutil::random_config(rng, table.size(), 1.0);
    const double norm = std::sqrt(std::inner_product(d.begin(), d.end(), d.begin(), 0.0));
    auto x = table;
    for (std::size_t j = 0; j < x.size(); ++j) x[j] += 0.1 * d[j] / norm;
    CHECK(potential(ch, x) > v0);
  }
}

TEST_CASE("gradient examples") {
  const PotentialKind ch = ContinuousHahnPotential{testutil::ch30_params()};
  CHECK(max_norm(gradient(ch, testutil::ch30_table())) < 1e-3);

  // n = 1 Wilson: the root solves sum_eps arctan(x / eps) = pi; bisection oracle.
  const WilsonParams w{0.7, 1.3, Complex(0.5, 0.8), Complex(0.5, -0.8)};
  auto f = [&](double x) { return pair_arctan(x, w.a, w.b) + pair_arctan(x, w.c, w.d) - pi; };
  double lo = 0.0, hi = 100.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) > 0 ? hi : lo) = mid;
  }
  CHECK(std::abs(gradient(WilsonPotential{w}, Configuration{lo})[0]) < 1e-12);
}

TEST_CASE("hessian examples") {
  const auto h = hessian(ContinuousHahnPotential{{1.0, 1.0}}, Configuration{0.0});
  CHECK(h(0, 0) == doctest::Approx(2.0));
  const auto hw = hessian(WilsonPotential{testutil::wilson15_params()}, testutil::wilson15_table());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(hw);
  CHECK(es.eigenvalues().minCoeff() >= 0.061);
}

TEST_CASE("derivatives match finite differences") {
  std::mt19937 rng(22);
  for (int trial = 0; trial < 20; ++trial) {
    for (const auto& kind : sample_kinds(rng)) {
      const auto x = testutil::random_config(rng, 6, 3.0);
      check_gradient_fd(kind, x);
      check_hessian_fd(kind, x);
    }
    const PotentialKind jac = JacobiPotential{{0.5, 1.5}};
    const auto xj = random_jacobi_config(rng, 5);
    check_gradient_fd(jac, xj);
    check_hessian_fd(jac, xj);
  }
}

TEST_CASE("Hessian is positive definite") {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    for (const auto& kind : sample_kinds(rng)) {
      const auto h = hessian(kind, testutil::random_config(rng, 8, 5.0));
      CHECK(Eigen::LLT<Eigen::MatrixXd>(h).info() == Eigen::Success);
      CHECK((h - h.transpose()).cwiseAbs().maxCoeff() == 0.0);
    }
    const auto hj = hessian(JacobiPotential{{-0.5, 2.0}}, random_jacobi_config(rng, 6));
    CHECK(Eigen::LLT<Eigen::MatrixXd>(hj).info() == Eigen::Success);
  }
}

TEST_CASE("parity symmetry of the continuous Hahn potential") {
  std::mt19937 rng(24);
  for (int trial = 0; trial < 20; ++trial) {
    const PotentialKind ch = ContinuousHahnPotential{testutil::random_ch(rng)};
    const auto x = testutil::random_config(rng, 7, 3.0);
    Configuration r(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) r[j] = -x[x.size() - 1 - j];
    CHECK(potential(ch, r) == doctest::Approx(potential(ch, x)).epsilon(1e-12));
    const auto g = gradient(ch, x), gr = gradient(ch, r);
    for (std::size_t j = 0; j < x.size(); ++j) {
      CHECK(gr[j] == doctest::Approx(-g[x.size() - 1 - j]).epsilon(1e-12).scale(1.0));
    }
  }
}

TEST_CASE("radial growth") {
  std::mt19937 rng(25);
  for (const auto& kind : sample_kinds(rng)) {
    for (int trial = 0; trial < 10; ++trial) {
      const auto d = testutil::random_config(rng, 5, 1.0);
      double prev = -INFINITY;
      for (double s : {10.0, 100.0, 1000.0, 10000.0}) {
        Configuration x = d;
        for (double& v : x) v *= s;
        const double v = potential(kind, x);
        CHECK(v > prev);
        prev = v;
      }
    }
  }
}

TEST_CASE("reduced potentials restrict the full one") {
  std::mt19937 rng(26);
  for (int trial = 0; trial < 20; ++trial) {
    const auto p = testutil::random_ch(rng);
    const auto y = testutil::random_config(rng, 4, 3.0);
    for (Parity parity : {Parity::Even, Parity::Odd}) {
      const PotentialKind reduced = parity == Parity::Even ? PotentialKind(ReducedEvenPotential{p})
                                                           : PotentialKind(ReducedOddPotential{p});
      const auto full = gradient(ContinuousHahnPotential{p}, embed(parity, y));
      const auto half = restrict_to_half(full);
      const auto g = gradient(reduced, y);
      for (std::size_t j = 0; j < y.size(); ++j) {
        CHECK(g[j] == doctest::Approx(half[j]).epsilon(1e-12).scale(1.0));
      }
    }
  }
}

TEST_CASE("kind names and validation") {
  CHECK(kind_name(ContinuousHahnPotential{{1.0, 1.0}}) == "ch");
  CHECK(kind_name(WilsonPotential{{1.0, 1.0, 1.0, 1.0}}) == "wilson");
  CHECK(kind_name(JacobiPotential{{0.0, 0.0}}) == "jacobi");
  CHECK(kind_name(ReducedEvenPotential{{1.0, 1.0}}) == "ch-even");
  CHECK(kind_name(ReducedOddPotential{{1.0, 1.0}}) == "ch-odd");
  CHECK_THROWS_AS(validate(PotentialKind(WilsonPotential{{-1.0, 1.0, 1.0, 1.0}})), InvalidParameters);
}
