#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "orthoflow/flow.hpp"
#include "orthoflow/params.hpp"

namespace orthoflow {

struct RateReport {
  double kappa_bound = 0.0;
  /// Bound valid for parity-symmetric continuous Hahn runs, when applicable.
  std::optional<double> improved_bound;
  /// Per-coordinate decay rates (positive = decaying). NaN marks a
  /// coordinate whose error never left the noise floor inside the window.
  std::vector<double> measured_slopes;
  std::pair<double, double> fit_window{0.0, 0.0};
  double R_n = 0.0;

  /// Smallest finite slope; +inf when none is finite.
  double min_slope() const noexcept;
};

/// Sum over parameters eps of Re(eps) / (Re(eps)^2 + (R_n + |Im(eps)|)^2).
double parameter_rate_terms(std::span<const Complex> eps, double R_n) noexcept;

double kappa_continuous_hahn(const ContinuousHahnParams& p, double R_n) noexcept;
double kappa_wilson(const WilsonParams& p, unsigned n, double R_n) noexcept;

/// Improved bound for parity-symmetric initial conditions.
double kappa_continuous_hahn_symmetric(const ContinuousHahnParams& p, unsigned n,
                                       double R_n) noexcept;

/// Rate bound appropriate for `kind` with n coordinates at the given
/// equilibrium (reduced kinds use the symmetric bound of the full degree).
double kappa_bound_for(const PotentialKind& kind, std::span<const double> equilibrium);

/// Least-squares slope of log|x_j(t) - x_j*| over samples in `window` whose
/// error exceeds `floor` (default: ten machine epsilons, scaled by
/// max(1, |x_j*|)). The window is clipped to the trajectory's time span.
RateReport measure_decay(const Trajectory& traj, std::span<const double> equilibrium,
                         std::pair<double, double> window,
                         std::optional<double> floor = std::nullopt);

}  // namespace orthoflow
