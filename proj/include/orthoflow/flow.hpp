#pragma once

#include <span>
#include <vector>

#include "orthoflow/morse.hpp"

namespace orthoflow {

struct FlowSettings {
  double step = 0.01;        // macro step; also the spacing of the time grid
  double t_max = 30.0;
  double grad_tol = 1e-12;   // stop once the right-hand side max-norm drops below
  unsigned record_every = 1; // record every k-th macro step
  bool newton_polish = true; // used by find_equilibrium

  void validate() const;
};

/// Sampled solution of the flow. times[0] = 0, strictly increasing.
struct Trajectory {
  std::vector<double> times;
  std::vector<Configuration> states;
  PotentialKind kind;
};

/// Right-hand side of the flow for `kind`: -∇V for the arctan families, the
/// mobility-weighted Steinerberger field for Jacobi.
Configuration flow_rhs(const PotentialKind& kind, std::span<const double> x);

/// Classical RK4 on the fixed grid t_k = k * step. A macro step whose
/// potential fails to decrease is redone with 2, 4, 8, ... substeps.
Trajectory integrate(const PotentialKind& kind, Configuration x0, const FlowSettings& settings);

/// Damped Newton iteration on the potential until the gradient max-norm is
/// below tol.
Configuration newton_solve(const PotentialKind& kind, Configuration x0, double tol = 1e-10);

/// Final state of integrate(), Newton-polished when settings.newton_polish.
Configuration find_equilibrium(const PotentialKind& kind, Configuration x0,
                               const FlowSettings& settings);

enum class Parity { Even, Odd };

Configuration reduced_flow_rhs(Parity parity, const ContinuousHahnParams& p,
                               std::span<const double> y);

/// (y_1..y_m) -> (-y_m, ..., -y_1, [0,] y_1, ..., y_m).
Configuration embed(Parity parity, std::span<const double> y);

/// Inverse of embed on parity-symmetric configurations: the last m coordinates.
Configuration restrict_to_half(std::span<const double> x);

/// max_j |x_j + x_{n+1-j}|.
double parity_defect(std::span<const double> x) noexcept;

double max_norm(std::span<const double> v) noexcept;

}  // namespace orthoflow
