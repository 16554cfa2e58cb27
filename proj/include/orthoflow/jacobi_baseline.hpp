#pragma once

#include <span>

#include "orthoflow/morse.hpp"
#include "orthoflow/params.hpp"

namespace orthoflow {

/// dx_j/dt = -B(x_j) - A(x_j) Σ_{k≠j} 2/(x_j - x_k), with A(x) = x^2 - 1 and
/// B(x) = (α+1)(x+1) + (β+1)(x-1). Equals 2 A(x_j) ∂_j V for the
/// logarithmic Jacobi potential, so it is not a plain gradient flow.
Configuration steinerberger_rhs(const JacobiParams& p, std::span<const double> x);

/// Guaranteed exponential rate 2n + α + β of the Jacobi flow.
double jacobi_kappa(const JacobiParams& p, unsigned n) noexcept;

/// Interior grid x_j = -1 + 2j/(n+1).
Configuration equispaced_start(unsigned n);

}  // namespace orthoflow
