#include "orthoflow/flow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "orthoflow/errors.hpp"
#include "orthoflow/jacobi_baseline.hpp"

namespace orthoflow {
namespace {

constexpr double kMinStep = 1e-12;
constexpr unsigned kNewtonMaxIterations = 200;

// Potential values agree to roundoff near the equilibrium; differences below
// this are not treated as an increase.
double potential_slack(double v) { return 1e-12 * (1.0 + std::abs(v)); }

bool all_finite(std::span<const double> x) {
  return std::all_of(x.begin(), x.end(), [](double v) { return std::isfinite(v); });
}

void axpy(Configuration& out, std::span<const double> x, double h, std::span<const double> f) {
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] + h * f[i];
}

Configuration rk4_step(const PotentialKind& kind, std::span<const double> x, double h) {
  const std::size_t n = x.size();
  Configuration tmp(n);
  const Configuration k1 = flow_rhs(kind, x);
  axpy(tmp, x, 0.5 * h, k1);
  const Configuration k2 = flow_rhs(kind, tmp);
  axpy(tmp, x, 0.5 * h, k2);
  const Configuration k3 = flow_rhs(kind, tmp);
  axpy(tmp, x, h, k3);
  const Configuration k4 = flow_rhs(kind, tmp);
  Configuration next(n);
  for (std::size_t i = 0; i < n; ++i) {
    next[i] = x[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
  return next;
}

// Advances (x, v) by dt using 2^s equal substeps, where s is the smallest
// level at which every substep decreases the potential.
void advance(const PotentialKind& kind, Configuration& x, double& v, double dt) {
  for (unsigned level = 0;; ++level) {
    const double sub = std::ldexp(dt, -static_cast<int>(level));
    if (sub < kMinStep) {
      throw StepUnderflow("step halving fell below 1e-12; the flow approaches a singularity");
    }
    Configuration y = x;
    double vy = v;
    bool ok = true;
    const unsigned count = 1u << level;
    for (unsigned i = 0; i < count && ok; ++i) {
      try {
        Configuration next = rk4_step(kind, y, sub);
        if (!all_finite(next)) {
          ok = false;
          break;
        }
        const double vn = potential(kind, next);
        if (!std::isfinite(vn) || vn > vy + potential_slack(vy)) {
          ok = false;
          break;
        }
        y = std::move(next);
        vy = vn;
      } catch (const DomainViolation&) {
        ok = false;
      }
    }
    if (ok) {
      x = std::move(y);
      v = vy;
      return;
    }
  }
}

}  // namespace

void FlowSettings::validate() const {
  if (!(step > 0.0) || !std::isfinite(step)) throw InvalidParameters("flow step must be positive");
  if (!(t_max > 0.0) || !std::isfinite(t_max)) throw InvalidParameters("t_max must be positive");
  if (!(step < t_max)) throw InvalidParameters("flow step must be smaller than t_max");
  if (!(grad_tol > 0.0)) throw InvalidParameters("grad_tol must be positive");
  if (record_every == 0) throw InvalidParameters("record_every must be at least 1");
}

Configuration flow_rhs(const PotentialKind& kind, std::span<const double> x) {
  if (const auto* jac = std::get_if<JacobiPotential>(&kind)) {
    return steinerberger_rhs(jac->params, x);
  }
  Configuration g = gradient(kind, x);
  for (double& v : g) v = -v;
  return g;
}

Trajectory integrate(const PotentialKind& kind, Configuration x0, const FlowSettings& settings) {
  settings.validate();
  Trajectory traj;
  traj.kind = kind;
  traj.times.push_back(0.0);
  traj.states.push_back(x0);
  if (x0.empty()) return traj;
  if (!all_finite(x0)) throw InvalidParameters("initial condition must be finite");

  Configuration x = std::move(x0);
  double v = potential(kind, x);
  if (max_norm(flow_rhs(kind, x)) < settings.grad_tol) return traj;

  const auto steps = static_cast<std::size_t>(std::ceil(settings.t_max / settings.step - 1e-9));
  for (std::size_t k = 1; k <= steps; ++k) {
    const double t_prev = static_cast<double>(k - 1) * settings.step;
    const double t_next = std::min(static_cast<double>(k) * settings.step, settings.t_max);
    advance(kind, x, v, t_next - t_prev);
    const bool converged = max_norm(flow_rhs(kind, x)) < settings.grad_tol;
    if (converged || k == steps || k % settings.record_every == 0) {
      traj.times.push_back(t_next);
      traj.states.push_back(x);
    }
    if (converged) break;
  }
  return traj;
}

Configuration newton_solve(const PotentialKind& kind, Configuration x0, double tol) {
  Configuration x = std::move(x0);
  if (x.empty()) return x;
  const auto n = static_cast<Eigen::Index>(x.size());
  for (unsigned it = 0; it < kNewtonMaxIterations; ++it) {
    const Configuration g = gradient(kind, x);
    const double gnorm = max_norm(g);
    if (gnorm < tol) return x;

    const Eigen::MatrixXd h = hessian(kind, x);
    const Eigen::LLT<Eigen::MatrixXd> llt(h);
    if (llt.info() != Eigen::Success) {
      throw SingularHessian("Hessian is not positive definite at Newton iterate " +
                            std::to_string(it));
    }
    const Eigen::VectorXd dir = -llt.solve(Eigen::Map<const Eigen::VectorXd>(g.data(), n));
    if (!dir.allFinite()) throw SingularHessian("Newton direction is not finite");

    const double v0 = potential(kind, x);
    double alpha = 1.0;
    Configuration trial(x.size());
    for (;;) {
      for (std::size_t i = 0; i < x.size(); ++i) trial[i] = x[i] + alpha * dir(static_cast<Eigen::Index>(i));
      double v1 = std::numeric_limits<double>::infinity();
      try {
        v1 = potential(kind, trial);
      } catch (const DomainViolation&) {
      }
      if (std::isfinite(v1) && v1 <= v0 + potential_slack(v0)) break;
      alpha *= 0.5;
      if (alpha < 1e-12) {
        throw MaxIterations("Newton line search stalled at iterate " + std::to_string(it));
      }
    }
    x = trial;
  }
  throw MaxIterations("Newton iteration did not converge within 200 steps");
}

Configuration find_equilibrium(const PotentialKind& kind, Configuration x0,
                               const FlowSettings& settings) {
  Trajectory traj = integrate(kind, std::move(x0), settings);
  Configuration x = std::move(traj.states.back());
  if (settings.newton_polish) x = newton_solve(kind, std::move(x));
  return x;
}

Configuration reduced_flow_rhs(Parity parity, const ContinuousHahnParams& p,
                               std::span<const double> y) {
  if (parity == Parity::Even) return flow_rhs(ReducedEvenPotential{p}, y);
  return flow_rhs(ReducedOddPotential{p}, y);
}

Configuration embed(Parity parity, std::span<const double> y) {
  const std::size_t m = y.size();
  Configuration x;
  x.reserve(2 * m + 1);
  for (std::size_t j = m; j-- > 0;) x.push_back(-y[j]);
  if (parity == Parity::Odd) x.push_back(0.0);
  for (std::size_t j = 0; j < m; ++j) x.push_back(y[j]);
  return x;
}

Configuration restrict_to_half(std::span<const double> x) {
  const std::size_t m = x.size() / 2;
  return Configuration(x.end() - static_cast<std::ptrdiff_t>(m), x.end());
}

double parity_defect(std::span<const double> x) noexcept {
  double worst = 0.0;
  const std::size_t n = x.size();
  for (std::size_t j = 0; j < n; ++j) worst = std::max(worst, std::abs(x[j] + x[n - 1 - j]));
  return worst;
}

double max_norm(std::span<const double> v) noexcept {
  double m = 0.0;
  for (double e : v) m = std::max(m, std::abs(e));
  return m;
}

}  // namespace orthoflow
