#include <cmath>
#include <random>

#include "doctest.h"
#include "orthoflow/errors.hpp"
#include "orthoflow/flow.hpp"
#include "orthoflow/rates.hpp"
#include "test_util.hpp"

using namespace orthoflow;

TEST_CASE("continuous Hahn bound") {
  CHECK(std::abs(kappa_continuous_hahn(testutil::ch30_params(), 15.6230) - 0.030) < 1e-3);
  CHECK(kappa_continuous_hahn({1.0, 1.0}, 0.0) == doctest::Approx(2.0));
  CHECK(kappa_continuous_hahn({Complex(1, 1), Complex(1, -1)}, 0.0) == doctest::Approx(1.0));
}

TEST_CASE("Wilson bound") {
  CHECK(std::abs(kappa_wilson(testutil::wilson15_params(), 15, 15.0759) - 0.061) < 1e-3);
  CHECK(kappa_wilson({1.0, 1.0, 1.0, 1.0}, 1, 0.0) == doctest::Approx(4.0));
  CHECK(kappa_wilson({1.0, 1.0, 1.0, 1.0}, 2, 0.0) == doctest::Approx(6.0));
}

TEST_CASE("symmetric bound") {
  const auto p = testutil::ch30_params();
  const double R = 15.6230;
  CHECK(kappa_continuous_hahn_symmetric(p, 30, R) ==
        doctest::Approx(kappa_continuous_hahn(p, R) + 30.0 / (1.0 + 4.0 * R * R)));
  CHECK(kappa_continuous_hahn_symmetric({1.0, 1.0}, 1, 0.0) == doctest::Approx(3.0));
}

TEST_CASE("bound properties") {
  std::mt19937 rng(41);
  std::uniform_real_distribution<double> radius(0.0, 30.0);
  for (int trial = 0; trial < 200; ++trial) {
    const auto p = testutil::random_ch(rng);
    const double R = radius(rng);
    for (unsigned m = 0; m <= 10; ++m) {
      // The symmetric bound is the Wilson bound of the reduced parameter sets.
      CHECK(kappa_continuous_hahn_symmetric(p, 2 * m, R) ==
            doctest::Approx(kappa_wilson({p.a, p.b, 0.5, 0.0}, m, R)).epsilon(1e-12));
      CHECK(kappa_continuous_hahn_symmetric(p, 2 * m + 1, R) ==
            doctest::Approx(kappa_wilson({p.a, p.b, 0.5, 1.0}, m, R)).epsilon(1e-12));
      CHECK(kappa_continuous_hahn_symmetric(p, 2 * m + 1, R) >= kappa_continuous_hahn(p, R));
    }
    CHECK(kappa_continuous_hahn(p, R + 1.0) < kappa_continuous_hahn(p, R));
    const auto w = testutil::random_wilson(rng);
    CHECK(kappa_wilson(w, 7, R + 1.0) < kappa_wilson(w, 7, R));
    CHECK(kappa_wilson(w, 8, R) > kappa_wilson(w, 7, R));
  }
}

TEST_CASE("kappa_bound_for dispatches on the kind") {
  const ContinuousHahnParams p{2.0, 0.5};
  const Configuration y = {0.5, 3.0};
  CHECK(kappa_bound_for(ReducedEvenPotential{p}, y) == kappa_continuous_hahn_symmetric(p, 4, 3.0));
  CHECK(kappa_bound_for(ReducedOddPotential{p}, y) == kappa_continuous_hahn_symmetric(p, 5, 3.0));
  CHECK(kappa_bound_for(ContinuousHahnPotential{p}, Configuration{-3.0, 1.0}) ==
        kappa_continuous_hahn(p, 3.0));
  CHECK(kappa_bound_for(JacobiPotential{{1.0, 2.0}}, Configuration{0.1, 0.2, 0.3}) == 9.0);
}

TEST_CASE("measure_decay on a synthetic exponential") {
  Trajectory traj;
  traj.kind = ContinuousHahnPotential{{1.0, 1.0}};
  const Configuration eq = {-1.0, 1.0};
  for (int i = 0; i <= 300; ++i) {
    const double t = 0.1 * i;
    traj.times.push_back(t);
    traj.states.push_back({-1.0 + 2.0 * std::exp(-0.7 * t), 1.0 - 0.5 * std::exp(-0.9 * t)});
  }
  const auto rep = measure_decay(traj, eq, {5.0, 25.0});
  CHECK(rep.measured_slopes[0] == doctest::Approx(0.7).epsilon(1e-9));
  CHECK(rep.measured_slopes[1] == doctest::Approx(0.9).epsilon(1e-9));
  CHECK(rep.min_slope() == doctest::Approx(0.7).epsilon(1e-9));
  CHECK_FALSE(rep.improved_bound.has_value());  // start is not parity symmetric
  CHECK(rep.fit_window == std::pair{5.0, 25.0});

  const auto clipped = measure_decay(traj, eq, {20.0, 100.0});
  CHECK(clipped.fit_window.second == doctest::Approx(30.0));
  CHECK_THROWS_AS(measure_decay(traj, eq, {5.0, 1.0}), InvalidParameters);
}

TEST_CASE("measured slopes on the published runs exceed the bounds") {
  FlowSettings s;
  const PotentialKind ch = ContinuousHahnPotential{testutil::ch30_params()};
  const auto traj = integrate(ch, Configuration(30, 0.0), s);
  const auto eq = newton_solve(ch, traj.states.back());
  const auto rep = measure_decay(traj, eq, {5.0, 25.0});
  CHECK(std::abs(rep.kappa_bound - 0.030) < 1e-3);
  REQUIRE(rep.improved_bound.has_value());
  CHECK(*rep.improved_bound == doctest::Approx(rep.kappa_bound + 30.0 / (1.0 + 4.0 * rep.R_n * rep.R_n)));
  for (double slope : rep.measured_slopes) CHECK(slope > *rep.improved_bound);

  const PotentialKind w = WilsonPotential{testutil::wilson15_params()};
  const auto wtraj = integrate(w, Configuration(15, 0.0), s);
  const auto weq = newton_solve(w, wtraj.states.back());
  const auto wrep = measure_decay(wtraj, weq, {5.0, 25.0});
  CHECK(std::abs(wrep.kappa_bound - 0.061) < 1e-3);
  CHECK_FALSE(wrep.improved_bound.has_value());
  for (double slope : wrep.measured_slopes) CHECK(slope > wrep.kappa_bound);
}

TEST_CASE("a trajectory at equilibrium has nothing to fit") {
  const PotentialKind kind = ContinuousHahnPotential{{1.0, 2.0}};
  const auto eq = newton_solve(kind, Configuration{-1.0, 0.0, 1.0}, 1e-14);
  Trajectory traj;
  traj.kind = kind;
  for (int i = 0; i <= 100; ++i) {
    traj.times.push_back(0.1 * i);
    traj.states.push_back(eq);
  }
  CHECK_THROWS_AS(measure_decay(traj, eq, {1.0, 9.0}), InsufficientSamples);
}
